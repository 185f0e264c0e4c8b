"""The majorization preorder on real vectors and on Hermitian operators."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .spectral import as_hermitian, eigvalsh

__all__ = ["MajorizationVerdict", "s_k", "partial_sums", "majorizes", "operator_majorizes"]

DEFAULT_TOL = 1e-7


@dataclass(frozen=True)
class MajorizationVerdict:
    """Outcome of testing whether ``x`` majorizes ``y``.

    ``gaps[k-1]`` is ``s_k(x) - s_k(y)``, so the last entry equals
    ``trace_gap``.  ``first_violation`` is the smallest failing ``k``
    (1-based); a trace mismatch is reported as ``k = d``.
    """

    holds: bool
    gaps: np.ndarray
    trace_gap: float
    first_violation: Optional[int] = None

    @property
    def min_gap(self) -> float:
        """Smallest partial-sum gap over k < d (``inf`` when d = 1)."""
        return float(self.gaps[:-1].min()) if len(self.gaps) > 1 else float("inf")


def partial_sums(x):
    """All of ``s_1(x), ..., s_d(x)`` as an array."""
    x = np.asarray(x, dtype=float)
    return np.cumsum(-np.sort(-x, kind="stable"))


def s_k(x, k: int) -> float:
    """Sum of the ``k`` largest coordinates of ``x``."""
    x = np.asarray(x, dtype=float)
    if not 1 <= k <= len(x):
        raise ValueError(f"k must lie in [1, {len(x)}], got {k}")
    return float(partial_sums(x)[k - 1])


def majorizes(x, y, tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Test ``y ⪯ x``: every partial sum of ``x`` dominates and the totals agree."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    if tol < 0:
        raise ValueError("tol must be non-negative")
    gaps = partial_sums(x) - partial_sums(y)
    trace_gap = float(gaps[-1])
    first = None
    bad = np.nonzero(gaps[:-1] < -tol)[0]
    if len(bad):
        first = int(bad[0]) + 1
    elif abs(trace_gap) > tol:
        first = len(x)
    return MajorizationVerdict(first is None, gaps, trace_gap, first)


def operator_majorizes(A, B, tol: float = DEFAULT_TOL) -> MajorizationVerdict:
    """Verdict for "A majorizes B", i.e. ``λ(B) ⪯ λ(A)``."""
    A = as_hermitian(A)
    B = as_hermitian(B)
    if A.shape != B.shape:
        raise ValueError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return majorizes(eigvalsh(A), eigvalsh(B), tol)
