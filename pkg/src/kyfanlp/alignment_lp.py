"""Alignment terms and the linear programs bounding ``s_k(A1 + A2)``.

Coordinates of the direct sum ``λ(A1) ⊕ λ(A2)`` are laid out as the ``d``
eigenvalue slots of the first summand followed by the ``d`` slots of the
second, each in decreasing-eigenvalue order.  Flag indices ``l1, l2`` and the
eigenvalue-sum index ``k`` are 1-based counts throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Optional

import numpy as np

from .majorization import s_k
from .simplex import bounded_simplex
from .spectral import SpectralDecomposition, Subspace, eigh, eigh_many

__all__ = [
    "AlignmentTable",
    "LinearProgramInstance",
    "LPSolution",
    "SlacknessError",
    "StaggerIndexError",
    "alignment_bounds",
    "overlap_vector",
    "alignment_terms",
    "alignment_term",
    "alignment_table",
    "build_p0",
    "build_p1",
    "solve_lp",
    "integral_solve",
    "u_k",
    "u_k_decomposed",
    "staggered_bound",
]

INTEGRAL_TOL = 1e-7
REDUNDANT_TOL = 1e-9
CEIL_TOL = 1e-9


class SlacknessError(ValueError):
    """The alignment term leaves no slack, so the staggered bound does not apply."""


class StaggerIndexError(ValueError):
    """A staggered eigenvalue index runs past the dimension."""


def alignment_bounds(d, k, l1, l2):
    """Lower and upper bounds every alignment term obeys.

    The upper bound is attained by perfectly aligned projectors; the lower
    bound follows from Lidskii's inequality.
    """
    lower = min(k, max(0, l1 + l2 - d)) + min(k, l1 + l2)
    upper = min(l1, k) + min(l2, k)
    return lower, upper


def _check_pair(dec1, dec2):
    d = dec1.source_dim
    if dec2.source_dim != d:
        raise ValueError(f"dimension mismatch: {d} vs {dec2.source_dim}")
    return d


def overlap_vector(W: Subspace, dec1: SpectralDecomposition, dec2: SpectralDecomposition):
    """Overlaps ``tr(P_W Π_i(A1))`` followed by ``tr(P_W Π_i(A2))``."""
    d = _check_pair(dec1, dec2)
    if W.projector.shape != (d, d):
        raise ValueError(f"subspace lives in dimension {W.projector.shape[0]}, expected {d}")
    P = W.projector
    halves = []
    for dec in (dec1, dec2):
        Q = dec.eigenvectors
        halves.append(np.einsum("ij,ik,kj->j", Q.conj(), P, Q).real)
    return np.concatenate(halves)


def alignment_terms(dec1: SpectralDecomposition, dec2: SpectralDecomposition):
    """All alignment terms at once, indexed ``alpha[k-1, l1-1, l2-1]``.

    Each ``(l1, l2)`` needs the spectrum of one projector sum; the ``d**2``
    sums are diagonalized as a single batch and every ``k`` is read off the
    partial sums.
    """
    d = _check_pair(dec1, dec2)
    P1 = dec1.flag_projectors
    P2 = dec2.flag_projectors
    sums = (P1[:, None] + P2[None, :]).reshape(d * d, d, d)
    spectra = np.array([dec.eigenvalues for dec in eigh_many(sums)])
    partial = np.cumsum(spectra, axis=1)
    return partial.reshape(d, d, d).transpose(2, 0, 1).copy()


def alignment_term(dec1, dec2, k, l1, l2):
    """``s_k(P_{↓l1}(A1) + P_{↓l2}(A2))``."""
    d = _check_pair(dec1, dec2)
    for name, v in (("k", k), ("l1", l1), ("l2", l2)):
        if not 1 <= v <= d:
            raise ValueError(f"{name} must lie in [1, {d}], got {v}")
    P = dec1.flag_projectors[l1 - 1] + dec2.flag_projectors[l2 - 1]
    return s_k(eigh(P).eigenvalues, k)


@dataclass(frozen=True, eq=False)
class AlignmentTable:
    """The ``d × d`` alignment terms for one ``k``; ``alpha[l1-1, l2-1]``."""

    d: int
    k: int
    alpha: np.ndarray

    def __getitem__(self, pair):
        l1, l2 = pair
        return float(self.alpha[l1 - 1, l2 - 1])

    def violations(self, tol=1e-7):
        """Invariant breaches as human-readable strings (empty when valid)."""
        d, k, a = self.d, self.k, self.alpha
        out = []
        for l1 in range(1, d + 1):
            for l2 in range(1, d + 1):
                lo, hi = alignment_bounds(d, k, l1, l2)
                v = a[l1 - 1, l2 - 1]
                if not lo - tol <= v <= hi + tol:
                    out.append(f"alpha[{l1},{l2}]={v:.12g} outside [{lo}, {hi}]")
                if l1 + l2 <= k and abs(v - (l1 + l2)) > tol:
                    out.append(f"alpha[{l1},{l2}]={v:.12g} != {l1 + l2}")
        if np.any(np.diff(a, axis=0) < -tol) or np.any(np.diff(a, axis=1) < -tol):
            out.append("table is not monotone in l1 and l2")
        return out

    def is_integral(self, tol=CEIL_TOL):
        return bool(np.all(np.abs(self.alpha - np.round(self.alpha)) <= tol))


def alignment_table(dec1, dec2, k) -> AlignmentTable:
    d = _check_pair(dec1, dec2)
    if not 1 <= k <= d:
        raise ValueError(f"k must lie in [1, {d}], got {k}")
    return AlignmentTable(d, k, alignment_terms(dec1, dec2)[k - 1])


@dataclass(frozen=True, eq=False)
class LinearProgramInstance:
    """Box-bounded LP over ``R^{2d}`` with both halves summing to ``k``.

    ``rows`` holds alignment constraints ``(l1, l2, rhs)`` meaning
    ``sum(x1[:l1]) + sum(x2[:l2]) <= rhs``.  ``objective`` may be left unset
    while only the polyhedron is of interest.
    """

    d: int
    k: int
    rows: tuple = ()
    objective: Optional[np.ndarray] = field(default=None)

    def with_objective(self, objective):
        objective = np.asarray(objective, dtype=float)
        if objective.shape != (2 * self.d,):
            raise ValueError(f"objective must have length {2 * self.d}")
        return replace(self, objective=objective)

    def with_row(self, l1, l2, rhs):
        return replace(self, rows=self.rows + ((l1, l2, float(rhs)),))

    def row_matrix(self):
        d = self.d
        M = np.zeros((len(self.rows), 2 * d))
        for r, (l1, l2, _) in enumerate(self.rows):
            M[r, :l1] = 1.0
            M[r, d:d + l2] = 1.0
        return M

    def rhs(self):
        return np.array([row[2] for row in self.rows], dtype=float)

    def slack(self, x):
        """Smallest slack over every constraint (negative means infeasible)."""
        x = np.asarray(x, dtype=float)
        d, k = self.d, self.k
        s = [x.min(), (1 - x).min(),
             -abs(x[:d].sum() - k), -abs(x[d:].sum() - k)]
        if self.rows:
            s.append((self.rhs() - self.row_matrix() @ x).min())
        return float(min(s))


@dataclass(frozen=True, eq=False)
class LPSolution:
    value: float
    point: np.ndarray
    vertex_is_integral: bool


def build_p0(k, d) -> LinearProgramInstance:
    """The basic constraints alone: box plus the two sum-to-``k`` equalities."""
    if not 1 <= k <= d:
        raise ValueError(f"k must lie in [1, {d}], got {k}")
    return LinearProgramInstance(d, k)


def build_p1(table: AlignmentTable, drop_redundant=True) -> LinearProgramInstance:
    """Basic constraints plus one alignment row per ``(l1, l2)``.

    Rows whose right-hand side reaches ``min(l1,k) + min(l2,k)`` cannot
    cut anything out of the basic polyhedron and are dropped by default.
    """
    d, k = table.d, table.k
    rows = []
    for l1 in range(1, d + 1):
        for l2 in range(1, d + 1):
            rhs = float(table.alpha[l1 - 1, l2 - 1])
            if drop_redundant and rhs >= min(l1, k) + min(l2, k) - REDUNDANT_TOL:
                continue
            rows.append((l1, l2, rhs))
    return LinearProgramInstance(d, k, tuple(rows))


def _is_integral_point(x):
    return bool(np.all(np.minimum(np.abs(x), np.abs(x - 1)) <= INTEGRAL_TOL))


def solve_lp(lp: LinearProgramInstance) -> LPSolution:
    """Maximize the objective over the instance with the bounded simplex."""
    if lp.objective is None:
        raise ValueError("LP instance has no objective")
    d, k = lp.d, lp.k
    A_eq = np.zeros((2, 2 * d))
    A_eq[0, :d] = 1.0
    A_eq[1, d:] = 1.0
    res = bounded_simplex(
        lp.objective,
        A_ub=lp.row_matrix() if lp.rows else None,
        b_ub=lp.rhs() if lp.rows else None,
        A_eq=A_eq,
        b_eq=[k, k],
        upper=np.ones(2 * d),
    )
    return LPSolution(res.value, res.x, _is_integral_point(res.x))


def _prefix_counts(subsets, d):
    ind = np.zeros((len(subsets), d), dtype=np.int64)
    for r, s in enumerate(subsets):
        ind[r, list(s)] = 1
    return ind, np.cumsum(ind, axis=1)


def integral_solve(lp: LinearProgramInstance) -> LPSolution:
    """Exact optimum over 0/1 points, i.e. over pairs of ``k``-subsets.

    Only valid when every right-hand side is an integer, in which case the
    polyhedron has integral vertices and this agrees with :func:`solve_lp`.
    """
    if lp.objective is None:
        raise ValueError("LP instance has no objective")
    rhs = lp.rhs()
    if np.any(np.abs(rhs - np.round(rhs)) > CEIL_TOL):
        raise ValueError("integral_solve needs integral right-hand sides")
    rhs = np.round(rhs).astype(np.int64)
    d, k = lp.d, lp.k
    subsets = list(combinations(range(d), k))
    ind, pref = _prefix_counts(subsets, d)
    c1, c2 = lp.objective[:d], lp.objective[d:]
    obj1 = ind @ c1
    obj2 = ind @ c2
    L1 = np.array([r[0] - 1 for r in lp.rows], dtype=np.int64)
    L2 = np.array([r[1] - 1 for r in lp.rows], dtype=np.int64)
    need2 = pref[:, L2]  # (subsets, rows)
    best = -np.inf
    best_pair = None
    top2 = obj2.max()
    for s1 in np.argsort(-obj1, kind="stable"):
        if obj1[s1] + top2 <= best:
            break
        ok = np.all(need2 <= rhs - pref[s1, L1], axis=1) if len(rhs) else np.ones(len(subsets), bool)
        if not ok.any():
            continue
        cand = np.flatnonzero(ok)
        s2 = cand[np.argmax(obj2[cand])]
        if obj1[s1] + obj2[s2] > best:
            best = obj1[s1] + obj2[s2]
            best_pair = (s1, s2)
    if best_pair is None:
        raise ValueError("no pair of k-subsets satisfies the constraints")
    point = np.concatenate([ind[best_pair[0]], ind[best_pair[1]]]).astype(float)
    return LPSolution(float(lp.objective @ point), point, True)


def u_k_decomposed(dec1, dec2, k, alpha=None) -> LPSolution:
    """The LP bound from given spectral decompositions (and optionally
    precomputed ``alignment_terms`` output)."""
    d = _check_pair(dec1, dec2)
    if alpha is None:
        alpha = alignment_terms(dec1, dec2)
    table = AlignmentTable(d, k, alpha[k - 1])
    c = np.concatenate([dec1.eigenvalues, dec2.eigenvalues])
    return solve_lp(build_p1(table).with_objective(c))


def u_k(A1, A2, k) -> LPSolution:
    """Optimal value of the alignment-constrained LP; bounds ``s_k(A1 + A2)``."""
    dec1, dec2 = eigh(A1), eigh(A2)
    d = _check_pair(dec1, dec2)
    if not 1 <= k <= d:
        raise ValueError(f"k must lie in [1, {d}], got {k}")
    return u_k_decomposed(dec1, dec2, k)


def staggered_bound(lam1, lam2, k, l1, l2, alpha) -> float:
    """Closed-form bound ``s_m(λ1) + s_m(λ2) + s_{k-m}(μ)`` with ``m = ⌈α⌉ - k``.

    ``μ`` pairs the eigenvalues that cannot both sit inside the top-``l1`` and
    top-``l2`` blocks: ``λ1_i + λ2_{i-m+l2}`` and ``λ1_{i-m+l1} + λ2_i`` for
    ``i = m+1..k``.  ``lam1`` and ``lam2`` must be sorted decreasingly.
    """
    lam1 = np.asarray(lam1, dtype=float)
    lam2 = np.asarray(lam2, dtype=float)
    d = len(lam1)
    if len(lam2) != d:
        raise ValueError("spectra must have equal length")
    m = math.ceil(alpha - CEIL_TOL) - k
    if not 0 <= m < min(l1, k) + min(l2, k) - k:
        raise SlacknessError(
            f"m = {m} outside [0, {min(l1, k) + min(l2, k) - k}) for alpha = {alpha}")
    if k - m + l2 > d or k - m + l1 > d:
        raise StaggerIndexError(
            f"staggered index {k - m + max(l1, l2)} exceeds dimension {d}")
    i = np.arange(m + 1, k + 1)  # 1-based
    mu = np.concatenate([lam1[i - 1] + lam2[i - m + l2 - 1],
                         lam1[i - m + l1 - 1] + lam2[i - 1]])
    head = lam1[:m].sum() + lam2[:m].sum()
    return float(head + s_k(mu, k - m))
