"""Hermitian linear algebra built on a self-contained cyclic Jacobi solver.

Everything here works on dense complex ``numpy`` arrays.  Matrices are
symmetrized on the way in, so round-trip noise from files is tolerated while
genuinely non-Hermitian input is rejected.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "ConvergenceError",
    "SpectralDecomposition",
    "Subspace",
    "as_hermitian",
    "eigh",
    "eigh_many",
    "eigvalsh",
    "flag_projector",
    "align_map",
    "von_neumann_entropy",
    "tensor_product",
]

MAX_SWEEPS = 100
OFFDIAG_RTOL = 1e-12
ASYMMETRY_TOL = 1e-8
DEGENERACY_RTOL = 1e-10


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi iteration hits its sweep cap."""


def as_hermitian(H, tol=ASYMMETRY_TOL):
    """Return ``(H + H*) / 2`` as a complex array, rejecting asymmetric input.

    Input whose largest entrywise asymmetry ``|H - H*|`` exceeds ``tol`` raises
    ``ValueError``; anything smaller is treated as noise and averaged away.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {H.shape}")
    asym = np.max(np.abs(H - H.conj().T))
    if asym > tol:
        raise ValueError(f"matrix is not Hermitian (asymmetry {asym:.3g} > {tol:g})")
    return (H + H.conj().T) / 2


def _round_robin(d):
    """Disjoint index pairs covering all d(d-1)/2 pairs in d-1 (or d) rounds."""
    m = d + (d % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(a, b), max(a, b)) for a, b in pairs if a < d and b < d]
        if pairs:
            p, q = zip(*pairs)
            rounds.append((np.array(p), np.array(q)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _offdiag_norm(A):
    mask = ~np.eye(A.shape[1], dtype=bool)
    return np.sqrt(np.sum(np.abs(A[:, mask]) ** 2, axis=1))


def _jacobi(A):
    """Diagonalize a stack of Hermitian matrices in place; returns (w, V).

    Cyclic Jacobi with a parallel (round-robin) ordering so that every
    rotation of one round touches disjoint rows and columns and the whole
    stack is rotated at once.
    """
    n, d, _ = A.shape
    V = np.broadcast_to(np.eye(d, dtype=complex), (n, d, d)).copy()
    if d == 1:
        return A[:, :, 0].real.copy(), V
    norm = np.sqrt(np.sum(np.abs(A) ** 2, axis=(1, 2)))
    thresh = OFFDIAG_RTOL * norm
    negligible = 1e-20 * norm[:, None]
    rounds = _round_robin(d)
    for sweep in range(MAX_SWEEPS + 1):
        active = _offdiag_norm(A) > thresh
        if not active.any():
            break
        if sweep == MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
        for p, q in rounds:
            app = A[:, p, p].real
            aqq = A[:, q, q].real
            apq = A[:, p, q]
            b = np.abs(apq)
            skip = (b <= negligible) | ~active[:, None]
            b_safe = np.where(skip, 1.0, b)
            tau = (aqq - app) / (2.0 * b_safe)
            sgn = np.where(tau >= 0.0, 1.0, -1.0)
            t = sgn / (np.abs(tau) + np.hypot(1.0, tau))
            t = np.where(skip, 0.0, t)
            c = 1.0 / np.hypot(1.0, t)
            s = t * c
            phase = np.where(skip, 1.0, apq / b_safe).conj()
            g_pp, g_pq, g_qp, g_qq = c, s, -s * phase, c * phase

            # A <- A G
            col_p, col_q = A[:, :, p], A[:, :, q]
            A[:, :, p] = col_p * g_pp[:, None, :] + col_q * g_qp[:, None, :]
            A[:, :, q] = col_p * g_pq[:, None, :] + col_q * g_qq[:, None, :]
            # A <- G* A
            row_p, row_q = A[:, p, :], A[:, q, :]
            A[:, p, :] = row_p * g_pp[:, :, None] + row_q * g_qp.conj()[:, :, None]
            A[:, q, :] = row_p * g_pq[:, :, None] + row_q * g_qq.conj()[:, :, None]
            A[:, p, q] = np.where(skip, A[:, p, q], 0.0)
            A[:, q, p] = np.where(skip, A[:, q, p], 0.0)
            # V <- V G
            vp, vq = V[:, :, p], V[:, :, q]
            V[:, :, p] = vp * g_pp[:, None, :] + vq * g_qp[:, None, :]
            V[:, :, q] = vp * g_pq[:, None, :] + vq * g_qq[:, None, :]
    return np.diagonal(A, axis1=1, axis2=2).real.copy(), V


def _sort_descending(w):
    """Descending order that keeps solver order inside near-degenerate blocks.

    Returns ``(order, values)``; ``values`` is exactly sorted so the weak
    decrease invariant holds even when block members differ by rounding.
    """
    order = np.argsort(-w, kind="stable")
    vals = w[order]
    scale = max(1.0, float(np.max(np.abs(w))))
    out = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i - 1] - vals[i] > DEGENERACY_RTOL * scale:
            out.extend(sorted(order[start:i]))
            start = i
    return np.array(out, dtype=int), vals


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Sorted spectrum and orthonormal eigenvectors (columns) of a Hermitian matrix.

    Eigenvalues are weakly decreasing; column ``i`` of ``eigenvectors`` is
    the eigenvector for ``eigenvalues[i]``.  The leading ``l`` columns span
    a largest ``l`` eigenvalue space, so the decomposition also fixes a
    complete flag.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def source_dim(self) -> int:
        return len(self.eigenvalues)

    def rank_one(self, i):
        """Projector onto the ``i``-th eigenvector (0-based)."""
        v = self.eigenvectors[:, i]
        return np.outer(v, v.conj())

    @cached_property
    def flag_projectors(self):
        """Stack ``P[l-1]`` of projectors onto the top-``l`` eigenvectors, l = 1..d."""
        Q = self.eigenvectors
        outer = Q.T[:, :, None] * Q.T.conj()[:, None, :]
        return np.cumsum(outer, axis=0)

    def reconstruct(self):
        Q = self.eigenvectors
        return (Q * self.eigenvalues) @ Q.conj().T


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace represented by its orthogonal projector."""

    dim: int
    projector: np.ndarray

    @classmethod
    def from_basis(cls, Q):
        """Subspace spanned by the orthonormal columns of ``Q``."""
        Q = np.asarray(Q, dtype=complex)
        if Q.ndim == 1:
            Q = Q[:, None]
        return cls(Q.shape[1], Q @ Q.conj().T)


def eigh_many(Hs):
    """Decompose a stack of Hermitian matrices with shape ``(n, d, d)``."""
    Hs = np.asarray(Hs, dtype=complex)
    if Hs.ndim != 3 or Hs.shape[1] != Hs.shape[2]:
        raise ValueError(f"expected a stack of square matrices, got {Hs.shape}")
    A = (Hs + np.conj(np.swapaxes(Hs, 1, 2))) / 2
    w, V = _jacobi(A)
    decs = []
    for wi, Vi in zip(w, V):
        order, vals = _sort_descending(wi)
        decs.append(SpectralDecomposition(vals, Vi[:, order]))
    return decs


def eigh(H) -> SpectralDecomposition:
    """Spectral decomposition with eigenvalues sorted weakly decreasing."""
    return eigh_many(as_hermitian(H)[None])[0]


def eigvalsh(H):
    return eigh(H).eigenvalues


def flag_projector(dec: SpectralDecomposition, ell: int) -> Subspace:
    """Projector onto the span of the first ``ell`` eigenvectors (1 <= ell <= d)."""
    d = dec.source_dim
    if not 1 <= ell <= d:
        raise ValueError(f"ell must lie in [1, {d}], got {ell}")
    return Subspace(ell, dec.flag_projectors[ell - 1])


def align_map(H):
    """Diagonal matrix carrying the decreasingly sorted spectrum of ``H``."""
    return np.diag(eigvalsh(H)).astype(complex)


def von_neumann_entropy(rho, neg_tol=1e-10, trace_tol=1e-8):
    """Entropy ``-tr(rho log2 rho)`` in bits of a density matrix."""
    lam = eigvalsh(rho)
    if lam[-1] < -neg_tol:
        raise ValueError(f"not a state: eigenvalue {lam[-1]:.3g} < -{neg_tol:g}")
    if abs(lam.sum() - 1.0) > trace_tol:
        raise ValueError(f"not a state: trace {lam.sum():.12g} != 1")
    lam = lam[lam > 0]
    return float(-np.sum(lam * np.log2(lam)))


def tensor_product(X, Y):
    """Kronecker product; pair ``(i, j)`` maps to row ``i * dim(Y) + j``."""
    return np.kron(np.asarray(X, dtype=complex), np.asarray(Y, dtype=complex))
