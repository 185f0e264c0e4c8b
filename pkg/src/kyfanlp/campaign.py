"""Seeded verification campaigns over random instances.

Each task draws one instance per trial from :class:`~kyfanlp.sampling.Sampler`
seeded with ``seed + trial`` and reduces the property it checks to a signed
``gap``: at most ``tol`` means the property held, anything larger (or an
infeasible LP, reported as ``inf``) is a violation.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np

from . import diagonal, tensor
from .alignment_lp import (
    AlignmentTable,
    alignment_terms,
    build_p1,
    overlap_vector,
    u_k_decomposed,
)
from .majorization import MajorizationVerdict, partial_sums
from .sampling import Sampler, trial_seed
from .simplex import InfeasibleError
from .spectral import SpectralDecomposition, Subspace, eigh

__all__ = ["TASKS", "ConfigError", "CampaignConfig", "Violation", "Report", "run_campaign"]

MAX_DIM = 16
DIM_LIMITS = {
    "sandwich": MAX_DIM,
    "diag-tight": diagonal.BRUTE_FORCE_MAX_D,
    "sep-fan": 4,
    "spin-align2": 4,
    "overlap-feasibility": MAX_DIM,
    "flag-invariance": MAX_DIM,
    "subspace-dim": 4,
}
TASKS = tuple(DIM_LIMITS)
SUBSPACES_PER_INSTANCE = 100
DEGENERACY_TOL = 1e-8


class ConfigError(ValueError):
    """Invalid campaign configuration."""


@dataclass(frozen=True)
class CampaignConfig:
    task: str
    seed: int = 0
    trials: int = 1
    dims: tuple = (2, 3)
    tol: float = 1e-7
    corrupt_rhs: bool = False

    def __post_init__(self):
        if self.task not in DIM_LIMITS:
            raise ConfigError(f"unknown task {self.task!r}; choose from {', '.join(TASKS)}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 1 << 64:
            raise ConfigError("seed must be an integer in [0, 2**64)")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError("trials must be a positive integer")
        dims = tuple(self.dims)
        if not dims or any(not isinstance(d, int) or isinstance(d, bool) for d in dims):
            raise ConfigError("dims must be a non-empty list of integers")
        limit = DIM_LIMITS[self.task]
        low = 2 if self.task == "diag-tight" else 1
        bad = [d for d in dims if not low <= d <= limit]
        if bad:
            raise ConfigError(f"dims {bad} outside [{low}, {limit}] for task {self.task}")
        object.__setattr__(self, "dims", dims)
        if not (isinstance(self.tol, (int, float)) and self.tol >= 0 and math.isfinite(self.tol)):
            raise ConfigError("tol must be a finite non-negative number")
        if self.corrupt_rhs and self.task != "sandwich":
            raise ConfigError("corrupt_rhs only applies to the sandwich task")

    @classmethod
    def from_dict(cls, obj):
        if not isinstance(obj, dict):
            raise ConfigError("config must be a JSON object")
        known = {"task", "seed", "trials", "dims", "tol", "corrupt_rhs"}
        extra = set(obj) - known
        if extra:
            raise ConfigError(f"unknown config fields: {', '.join(sorted(extra))}")
        if "task" not in obj:
            raise ConfigError("config needs a 'task'")
        if "dims" in obj and not isinstance(obj["dims"], list):
            raise ConfigError("dims must be a list")
        return cls(**obj)


@dataclass(frozen=True)
class Violation:
    seed_offset: int
    digest: str
    gap: float


@dataclass(frozen=True)
class Report:
    task: str
    trials: int
    violations: tuple = field(default=())
    max_gap: float = -math.inf

    @property
    def status(self) -> str:
        return "fail" if self.violations else "pass"

    def to_dict(self):
        return {
            "task": self.task,
            "trials": self.trials,
            "violations": [
                {"seed_offset": v.seed_offset, "digest": v.digest, "gap": v.gap}
                for v in self.violations
            ],
            "max_gap": self.max_gap,
            "status": self.status,
        }


def digest(*arrays) -> str:
    """Short SHA-256 fingerprint of an instance's arrays."""
    h = hashlib.sha256()
    for a in arrays:
        a = np.ascontiguousarray(a)
        h.update(str(a.dtype).encode())
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    return h.hexdigest()[:16]


def verdict_gap(v: MajorizationVerdict) -> float:
    """How far a majorization verdict is from holding (``<= 0`` when exact)."""
    return float(max(np.max(-v.gaps[:-1], initial=-math.inf), abs(v.trace_gap)))


# -- tasks: each returns (gap, arrays to fingerprint) ------------------------

def _sandwich(rng: Sampler, cfg):
    d = rng.choice(cfg.dims)
    A1, A2 = rng.hermitian(d), rng.hermitian(d)
    dec1, dec2 = eigh(A1), eigh(A2)
    alpha = alignment_terms(dec1, dec2)
    if cfg.corrupt_rhs:
        alpha = alpha - 1.0
    total = partial_sums(eigh(A1 + A2).eigenvalues)
    separate = partial_sums(dec1.eigenvalues) + partial_sums(dec2.eigenvalues)
    gap = -math.inf
    for k in range(1, d + 1):
        try:
            sol = u_k_decomposed(dec1, dec2, k, alpha)
        except InfeasibleError:
            return math.inf, (A1, A2)
        gap = max(gap, total[k - 1] - sol.value, sol.value - separate[k - 1])
        if AlignmentTable(d, k, alpha[k - 1]).is_integral() and not sol.vertex_is_integral:
            gap = math.inf
    return gap, (A1, A2)


def _diag_tight(rng: Sampler, cfg):
    d = rng.choice(cfg.dims)
    lam1, lam2 = rng.normal(d), rng.normal(d)
    D1, D2 = np.diag(lam1), np.diag(lam2)
    dec1, dec2 = eigh(D1), eigh(D2)
    alpha = alignment_terms(dec1, dec2)
    target = partial_sums(lam1 + lam2)
    ch = diagonal.omega_chains(lam1, lam2)
    gap = 0.0
    for k in range(1, d + 1):
        sol = u_k_decomposed(dec1, dec2, k, alpha)
        gap = max(gap, abs(sol.value - target[k - 1]))
        gap = max(gap, abs(sol.value - diagonal.brute_force_optimum(ch, k)))
        if not sol.vertex_is_integral:
            gap = math.inf
    return gap, (lam1, lam2)


def _sep_fan(rng: Sampler, cfg):
    dB, dC = rng.choice(cfg.dims), rng.choice(cfg.dims)
    B1, C1, B2, C2 = rng.psd(dB), rng.psd(dC), rng.psd(dB), rng.psd(dC)
    v = tensor.check_separable_fan(B1, C1, B2, C2, cfg.tol)
    return verdict_gap(v), (B1, C1, B2, C2)


def _spin_align2(rng: Sampler, cfg):
    d = rng.choice(cfg.dims)
    M = rng.psd(d)
    p = rng.probability(4)
    psi1, psi2, psi12 = rng.pure(d), rng.pure(d), rng.pure(d * d)
    res = tensor.spin_alignment_2(M, p, psi1, psi2, psi12, cfg.tol)
    return max(verdict_gap(res.verdict), -res.entropy_gap), (M, p, psi1, psi2, psi12)


def _overlap_feasibility(rng: Sampler, cfg):
    d = rng.choice(cfg.dims)
    A1, A2 = rng.hermitian(d), rng.hermitian(d)
    dec1, dec2 = eigh(A1), eigh(A2)
    alpha = alignment_terms(dec1, dec2)
    gap = -math.inf
    for _ in range(SUBSPACES_PER_INSTANCE):
        k = rng.integer(1, d)
        W = Subspace.from_basis(rng.unitary(d)[:, :k])
        lp = build_p1(AlignmentTable(d, k, alpha[k - 1]), drop_redundant=False)
        gap = max(gap, -lp.slack(overlap_vector(W, dec1, dec2)))
    return gap, (A1, A2)


def degenerate_hermitian(rng: Sampler, d):
    """Hermitian matrix with small-integer eigenvalues, so blocks repeat."""
    lam = np.array([float(rng.integer(-2, 2)) for _ in range(d)])
    if d > 1:
        lam[1] = lam[0]
    U = rng.unitary(d)
    return (U * lam) @ U.conj().T


def rotate_within_blocks(dec: SpectralDecomposition, rng: Sampler) -> SpectralDecomposition:
    """Same spectrum, eigenvectors mixed by a Haar unitary inside each degenerate block."""
    lam, Q = dec.eigenvalues, dec.eigenvectors.copy()
    start = 0
    for i in range(1, len(lam) + 1):
        if i == len(lam) or lam[i - 1] - lam[i] > DEGENERACY_TOL:
            if i - start > 1:
                Q[:, start:i] = Q[:, start:i] @ rng.unitary(i - start)
            start = i
    return SpectralDecomposition(lam, Q)


def _flag_invariance(rng: Sampler, cfg):
    d = rng.choice(cfg.dims)
    A1, A2 = degenerate_hermitian(rng, d), degenerate_hermitian(rng, d)
    dec1, dec2 = eigh(A1), eigh(A2)
    rot1, rot2 = rotate_within_blocks(dec1, rng), rotate_within_blocks(dec2, rng)
    alpha, alpha_rot = alignment_terms(dec1, dec2), alignment_terms(rot1, rot2)
    gap = 0.0
    for k in range(1, d + 1):
        a = u_k_decomposed(dec1, dec2, k, alpha).value
        b = u_k_decomposed(rot1, rot2, k, alpha_rot).value
        gap = max(gap, abs(a - b))
    return gap, (A1, A2)


def random_downset(rng: Sampler, dB, dC) -> frozenset:
    """Downward closed set from a random non-increasing staircase of row lengths."""
    heights = sorted((rng.integer(0, dC) for _ in range(dB)), reverse=True)
    return frozenset((i, j) for i in range(dB) for j in range(heights[i]))


def _subspace_dim(rng: Sampler, cfg):
    dB, dC = rng.choice(cfg.dims), rng.choice(cfg.dims)
    fB, gB, fC, gC = rng.unitary(dB), rng.unitary(dB), rng.unitary(dC), rng.unitary(dC)
    ups, ups_prime = random_downset(rng, dB, dC), random_downset(rng, dB, dC)
    lhs, rhs = tensor.subspace_dim_check(fB, gB, fC, gC, ups, ups_prime)
    shape = np.array(sorted(ups) + [(-1, -1)] + sorted(ups_prime)).ravel()
    return float(rhs - lhs), (fB, gB, fC, gC, shape)


_RUNNERS = {
    "sandwich": _sandwich,
    "diag-tight": _diag_tight,
    "sep-fan": _sep_fan,
    "spin-align2": _spin_align2,
    "overlap-feasibility": _overlap_feasibility,
    "flag-invariance": _flag_invariance,
    "subspace-dim": _subspace_dim,
}


def run_trial(cfg: CampaignConfig, index: int):
    """``(gap, digest)`` of one trial; deterministic in ``(cfg.seed, index)``."""
    rng = Sampler(trial_seed(cfg.seed, index))
    gap, arrays = _RUNNERS[cfg.task](rng, cfg)
    return float(gap), digest(*arrays)


def run_campaign(cfg: CampaignConfig) -> Report:
    """Run ``cfg.trials`` trials in order and collect the violations."""
    violations = []
    max_gap = -math.inf
    for i in range(cfg.trials):
        gap, dg = run_trial(cfg, i)
        max_gap = max(max_gap, gap)
        if not gap <= cfg.tol:
            violations.append(Violation(i, dg, gap))
    return Report(cfg.task, cfg.trials, tuple(violations), max_gap)
