"""Tensor products of positive semi-definite operators.

The eigenvalues of ``B ⊗ C`` are the products ``λ_i(B) λ_j(C)``.  Their
decreasing order is only partly fixed by the factor orders: for non-negative
spectra, ``(i, j) <=× (i', j')`` (componentwise) forces
``λ_i λ_j >= λ_i' λ_j'``.  A :class:`DownsetChain` records one compatible
total order whose prefixes are downward closed in that product order.

Index pairs are 0-based ``(i, j)`` with ``i < dB`` and ``j < dC``; pair
``(i, j)`` corresponds to row ``i * dC + j`` of a Kronecker product.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .majorization import MajorizationVerdict, majorizes, operator_majorizes, s_k
from .spectral import SpectralDecomposition, as_hermitian, eigh, eigvalsh, von_neumann_entropy

__all__ = [
    "DownsetChain",
    "ProductDecomposition",
    "OneSidedReport",
    "IndefiniteReport",
    "SpinAlignmentResult",
    "product_le",
    "is_downward_closed",
    "downward_closure",
    "upward_closure",
    "downset_chain",
    "product_decomposition",
    "subspace_dim_check",
    "tensor_alignment_upper",
    "check_separable_fan",
    "one_sided_relation",
    "indefinite_counterexample",
    "check_one_sided_counterexample",
    "spin_alignment_2",
]

PSD_CLAMP = 1e-9
RANK_THRESHOLD = 1 - 1e-7
UNITARY_TOL = 1e-8
STATE_TOL = 1e-8
PROB_TOL = 1e-10


# -- product order --------------------------------------------------------

def product_le(a, b) -> bool:
    """``a <=× b``: both coordinates of ``a`` are at most those of ``b``."""
    return a[0] <= b[0] and a[1] <= b[1]


def is_downward_closed(S) -> bool:
    """Every pair below a member of ``S`` is also a member."""
    S = set(map(tuple, S))
    return all((i == 0 or (i - 1, j) in S) and (j == 0 or (i, j - 1) in S) for i, j in S)


def downward_closure(S) -> frozenset:
    return frozenset((a, b) for i, j in S for a in range(i + 1) for b in range(j + 1))


def upward_closure(S, dB, dC) -> frozenset:
    return frozenset((a, b) for i, j in S for a in range(i, dB) for b in range(j, dC))


# -- chains and decompositions --------------------------------------------

@dataclass(frozen=True)
class DownsetChain:
    """Eigenvalue order of ``B ⊗ C``; the first ``l`` pairs form ``Υ_l``."""

    dB: int
    dC: int
    order: tuple
    products: tuple

    def __len__(self):
        return len(self.order)

    def prefix(self, ell) -> frozenset:
        if not 0 <= ell <= len(self.order):
            raise ValueError(f"prefix length must lie in [0, {len(self.order)}], got {ell}")
        return frozenset(self.order[:ell])

    @property
    def flat_order(self):
        """Kronecker row index of each chain position."""
        return tuple(i * self.dC + j for i, j in self.order)


def _sorted_psd_spectrum(lam, name):
    lam = np.asarray(lam, dtype=float)
    if lam.ndim != 1 or len(lam) == 0:
        raise ValueError(f"{name} must be a non-empty vector")
    if np.any(lam < -PSD_CLAMP):
        raise ValueError(f"{name} has a negative eigenvalue {lam.min():.3g}")
    if np.any(np.diff(lam) > 0):
        raise ValueError(f"{name} must be sorted decreasingly")
    return np.maximum(lam, 0.0)


def downset_chain(lamB, lamC) -> DownsetChain:
    """Order pairs by decreasing product, breaking ties lexicographically."""
    lamB = _sorted_psd_spectrum(lamB, "lamB")
    lamC = _sorted_psd_spectrum(lamC, "lamC")
    dB, dC = len(lamB), len(lamC)
    pairs = sorted(((i, j) for i in range(dB) for j in range(dC)),
                   key=lambda p: (-lamB[p[0]] * lamC[p[1]], p[0], p[1]))
    seen = set()
    for p in pairs:
        seen.add(p)
        i, j = p
        if (i and (i - 1, j) not in seen) or (j and (i, j - 1) not in seen):
            raise AssertionError(f"chain prefix ending at {p} is not downward closed")
    products = tuple(float(lamB[i] * lamC[j]) for i, j in pairs)
    return DownsetChain(dB, dC, tuple(pairs), products)


@dataclass(frozen=True, eq=False)
class ProductDecomposition:
    """Eigen-data of ``B ⊗ C`` assembled from the factor decompositions."""

    decB: SpectralDecomposition
    decC: SpectralDecomposition
    chain: DownsetChain

    @property
    def eigenvalues(self):
        return np.array(self.chain.products)

    def vector(self, i, j):
        return np.kron(self.decB.eigenvectors[:, i], self.decC.eigenvectors[:, j])

    @cached_property
    def eigenvectors(self):
        return np.column_stack([self.vector(i, j) for i, j in self.chain.order])

    def as_spectral(self) -> SpectralDecomposition:
        """The product eigen-data as a decomposition whose flag follows the chain."""
        return SpectralDecomposition(self.eigenvalues, self.eigenvectors)


def _psd_decomposition(X, name):
    dec = eigh(X)
    lam = dec.eigenvalues
    if lam[-1] < -PSD_CLAMP:
        raise ValueError(f"{name} is not positive semi-definite (eigenvalue {lam[-1]:.3g})")
    return SpectralDecomposition(np.maximum(lam, 0.0), dec.eigenvectors)


def product_decomposition(B, C) -> ProductDecomposition:
    decB = _psd_decomposition(B, "B")
    decC = _psd_decomposition(C, "C")
    return ProductDecomposition(decB, decC, downset_chain(decB.eigenvalues, decC.eigenvalues))


# -- subspace dimensions ---------------------------------------------------

def _unitary(Q, name):
    Q = np.asarray(Q, dtype=complex)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise ValueError(f"{name} must be a square matrix of basis columns")
    err = np.max(np.abs(Q.conj().T @ Q - np.eye(len(Q))))
    if err > UNITARY_TOL:
        raise ValueError(f"{name} is not orthonormal (error {err:.3g})")
    return Q


def _span_projector(QB, QC, pairs):
    dim = QB.shape[0] * QC.shape[0]
    P = np.zeros((dim, dim), dtype=complex)
    for i, j in pairs:
        v = np.kron(QB[:, i], QC[:, j])
        P += np.outer(v, v.conj())
    return P


def subspace_dim_check(fB, gB, fC, gC, ups, ups_prime):
    """``(dim(F_Υ ∩ G_Υ'^⊥), |Υ \\ Υ'|)`` for downward closed ``Υ, Υ'``.

    ``F_S`` is spanned by ``fB[:, i] ⊗ fC[:, j]`` over ``(i, j) ∈ S`` and
    likewise ``G_S``.  The intersection dimension is the number of
    eigenvalues of ``P_F P_G⊥ P_F`` that equal one.
    """
    fB, gB = _unitary(fB, "fB"), _unitary(gB, "gB")
    fC, gC = _unitary(fC, "fC"), _unitary(gC, "gC")
    if fB.shape != gB.shape or fC.shape != gC.shape:
        raise ValueError("F and G bases must have matching factor dimensions")
    dB, dC = len(fB), len(fC)
    ups = frozenset(map(tuple, ups))
    ups_prime = frozenset(map(tuple, ups_prime))
    for name, S in (("ups", ups), ("ups_prime", ups_prime)):
        if any(not (0 <= i < dB and 0 <= j < dC) for i, j in S):
            raise ValueError(f"{name} has a pair outside the {dB}x{dC} grid")
        if not is_downward_closed(S):
            raise ValueError(f"{name} is not downward closed")
    complement = [(i, j) for i in range(dB) for j in range(dC) if (i, j) not in ups_prime]
    PF = _span_projector(fB, fC, ups)
    PG = _span_projector(gB, gC, complement)
    w = eigvalsh(PF @ PG @ PF)
    return int(np.sum(w >= RANK_THRESHOLD)), len(ups - ups_prime)


def tensor_alignment_upper(ch1: DownsetChain, ch2: DownsetChain, k, l1, l2) -> int:
    """``min(k, |Υ¹ ∩ Υ²|) + min(k, |Υ¹ ∪ Υ²|)`` for prefixes of sizes ``l1, l2``."""
    if (ch1.dB, ch1.dC) != (ch2.dB, ch2.dC):
        raise ValueError("chains must share factor dimensions")
    d = len(ch1)
    for name, v in (("k", k), ("l1", l1), ("l2", l2)):
        if not 1 <= v <= d:
            raise ValueError(f"{name} must lie in [1, {d}], got {v}")
    a, b = ch1.prefix(l1), ch2.prefix(l2)
    return min(k, len(a & b)) + min(k, len(a | b))


# -- separable Fan majorization -------------------------------------------

def _aligned(dec: SpectralDecomposition):
    return np.diag(dec.eigenvalues).astype(complex)


def check_separable_fan(B1, C1, B2, C2, tol=1e-7) -> MajorizationVerdict:
    """Does ``B1↓⊗C1↓ + B2↓⊗C2↓`` majorize ``B1⊗C1 + B2⊗C2``?

    All four factors must be positive semi-definite; eigenvalues down to
    ``-1e-9`` are clamped to zero.
    """
    decs = [_psd_decomposition(X, name) for X, name in ((B1, "B1"), (C1, "C1"), (B2, "B2"), (C2, "C2"))]
    if decs[0].source_dim != decs[2].source_dim or decs[1].source_dim != decs[3].source_dim:
        raise ValueError("B and C factors must have matching dimensions")
    original = np.kron(as_hermitian(B1), as_hermitian(C1)) + np.kron(as_hermitian(B2), as_hermitian(C2))
    aligned = np.kron(_aligned(decs[0]), _aligned(decs[1])) + np.kron(_aligned(decs[2]), _aligned(decs[3]))
    return operator_majorizes(aligned, original, tol)


def one_sided_relation(B1, C1, B2, C2, tol=1e-7) -> MajorizationVerdict:
    """Does aligning only the ``B`` factors, ``B1↓⊗C1 + B2↓⊗C2``, give a majorizing sum?"""
    B1, C1, B2, C2 = (as_hermitian(X) for X in (B1, C1, B2, C2))
    original = np.kron(B1, C1) + np.kron(B2, C2)
    half = np.kron(np.diag(eigvalsh(B1)), C1) + np.kron(np.diag(eigvalsh(B2)), C2)
    return operator_majorizes(half, original, tol)


@dataclass(frozen=True)
class IndefiniteReport:
    spectrum_sum: np.ndarray
    spectrum_aligned: np.ndarray
    verdict: MajorizationVerdict


def indefinite_counterexample() -> IndefiniteReport:
    """``B1 = I = -B2``, ``C1 = q1q1*``, ``C2 = q2q2*``: the aligned sum vanishes.

    Bypasses the PSD check on purpose to show the relation fails without it.
    """
    I2 = np.eye(2)
    q1q1 = np.diag([1.0, 0.0])
    q2q2 = np.diag([0.0, 1.0])
    B1, B2, C1, C2 = I2, -I2, q1q1, q2q2
    original = np.kron(B1, C1) + np.kron(B2, C2)
    aligned = np.kron(np.diag(eigvalsh(B1)), np.diag(eigvalsh(C1))) \
        + np.kron(np.diag(eigvalsh(B2)), np.diag(eigvalsh(C2)))
    lam_sum, lam_aligned = eigvalsh(original), eigvalsh(aligned)
    return IndefiniteReport(lam_sum, lam_aligned, majorizes(lam_aligned, lam_sum))


@dataclass(frozen=True)
class OneSidedReport:
    s2_half_aligned: float
    s2_original: float

    @property
    def difference(self) -> float:
        return self.s2_half_aligned - self.s2_original

    @property
    def fails(self) -> bool:
        """The half-aligned sum loses more than 0.05 in ``s_2``."""
        return self.difference < -0.05


def check_one_sided_counterexample() -> OneSidedReport:
    """Fixed 2x2 instance where aligning only the ``B`` factors lowers ``s_2``."""
    e = np.array([1.0, 1.0]) / np.sqrt(2)
    ee = np.outer(e, e)
    B1 = C1 = ee
    B2 = np.diag([2.0, 1.0])
    C2 = np.diag([1.0, 0.0])
    original = np.kron(B1, C1) + np.kron(B2, C2)
    half = np.kron(np.diag(eigvalsh(B1)), C1) + np.kron(np.diag(eigvalsh(B2)), C2)
    return OneSidedReport(s_k(eigvalsh(half), 2), s_k(eigvalsh(original), 2))


# -- two-letter spin alignment ---------------------------------------------

@dataclass(frozen=True)
class SpinAlignmentResult:
    verdict: MajorizationVerdict
    entropy_lhs: float
    entropy_rhs: float
    tol: float

    @property
    def entropy_gap(self) -> float:
        return self.entropy_lhs - self.entropy_rhs

    @property
    def holds(self) -> bool:
        return self.verdict.holds and self.entropy_gap >= -self.tol


def _state(rho, dim, name, pure):
    rho = as_hermitian(rho)
    if rho.shape != (dim, dim):
        raise ValueError(f"{name} must be {dim}x{dim}, got {rho.shape}")
    lam = eigvalsh(rho)
    if lam[-1] < -STATE_TOL or abs(lam.sum() - 1) > STATE_TOL:
        raise ValueError(f"{name} is not a density matrix")
    if pure and dim > 1 and lam[1] > STATE_TOL:
        raise ValueError(f"{name} is not pure (second eigenvalue {lam[1]:.3g})")
    return rho


def spin_alignment_2(M, p, psi1, psi2, psi12, tol=1e-7, v: Optional[np.ndarray] = None) -> SpinAlignmentResult:
    """Compare a two-letter mixture against its top-eigenvector aligned version.

    ``p`` is indexed by the subsets ``(∅, {1}, {2}, {1,2})``.  The left side is
    ``p∅ M⊗M + p1 ψ1⊗M + p2 M⊗ψ2 + p12 ψ12``; the right side replaces every
    pure state by tensor powers of ``v v*`` with ``v`` a top eigenvector of
    ``M`` (the solver's by default).
    """
    M = as_hermitian(M)
    d = len(M)
    M = _state(M, d, "M", pure=False)
    p = np.asarray(p, dtype=float)
    if p.shape != (4,) or np.any(p < -PROB_TOL) or abs(p.sum() - 1) > PROB_TOL:
        raise ValueError("p must be a probability vector of length 4")
    psi1 = _state(psi1, d, "psi1", pure=True)
    psi2 = _state(psi2, d, "psi2", pure=True)
    psi12 = _state(psi12, d * d, "psi12", pure=True)
    dec = eigh(M)
    if v is None:
        v = dec.eigenvectors[:, 0]
    else:
        v = np.asarray(v, dtype=complex)
        if abs(np.linalg.norm(v) - 1) > STATE_TOL or \
                np.linalg.norm(M @ v - dec.eigenvalues[0] * v) > STATE_TOL:
            raise ValueError("v must be a unit top eigenvector of M")
    vv = np.outer(v, v.conj())

    def mixture(a, b, ab):
        return p[0] * np.kron(M, M) + p[1] * np.kron(a, M) + p[2] * np.kron(M, b) + p[3] * ab

    lhs = mixture(psi1, psi2, psi12)
    rhs = mixture(vv, vv, np.kron(vv, vv))
    verdict = operator_majorizes(rhs, lhs, tol)
    return SpinAlignmentResult(verdict, von_neumann_entropy(lhs), von_neumann_entropy(rhs), tol)
