"""Simultaneously diagonal summands: where the LP bound is tight.

For diagonal ``D1, D2`` the alignment terms are integers determined by
which coordinates carry the largest values, the LP collapses to a
combinatorial problem over pairs of ``k``-subsets, and every feasible pair can
be pushed to a symmetric pair ``(S, S)`` without losing objective value.
:func:`symmetrize` carries out that exchange and checks the counting facts
it relies on as it goes.

Coordinates are 0-based indices into the diagonal; chain positions
``l``, ``m_i``, ``r_i`` are 1-based sizes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

__all__ = [
    "OmegaChains",
    "SubsetPair",
    "SymmetrizationTrace",
    "InvariantError",
    "omega_chains",
    "explicit_alignment",
    "explicit_table",
    "is_feasible",
    "satisfies_alignment_constraints",
    "objective",
    "symmetrize",
    "symmetrize_traced",
    "combinatorial_optimum",
    "feasible_pairs",
    "brute_force_optimum",
]

BRUTE_FORCE_MAX_D = 8


class InvariantError(AssertionError):
    """A property guaranteed by the exchange argument failed at runtime."""


@dataclass(frozen=True)
class OmegaChains:
    """Nested coordinate sets of the largest ``l`` diagonal values of each summand.

    ``order1[l-1]`` is the coordinate that joins the chain at size ``l``;
    ``rank1[x]`` is the size at which coordinate ``x`` first appears.
    """

    lam1: tuple
    lam2: tuple
    order1: tuple
    order2: tuple

    @property
    def d(self):
        return len(self.lam1)

    @property
    def rank1(self):
        return _ranks(self.order1)

    @property
    def rank2(self):
        return _ranks(self.order2)

    def omega1(self, ell):
        return frozenset(self.order1[:ell])

    def omega2(self, ell):
        return frozenset(self.order2[:ell])

    @property
    def chain1(self):
        return [self.omega1(ell) for ell in range(1, self.d + 1)]

    @property
    def chain2(self):
        return [self.omega2(ell) for ell in range(1, self.d + 1)]


def _ranks(order):
    r = [0] * len(order)
    for pos, x in enumerate(order):
        r[x] = pos + 1
    return tuple(r)


@dataclass(frozen=True)
class SubsetPair:
    s1: frozenset
    s2: frozenset

    def __post_init__(self):
        object.__setattr__(self, "s1", frozenset(self.s1))
        object.__setattr__(self, "s2", frozenset(self.s2))
        if len(self.s1) != len(self.s2):
            raise ValueError("subset pair must have equal cardinalities")

    @property
    def k(self):
        return len(self.s1)

    @property
    def symmetric(self):
        return self.s1 == self.s2


def omega_chains(lam1, lam2) -> OmegaChains:
    """Chains of the coordinates of the largest values; ties go to the smaller index."""
    lam1 = np.asarray(lam1, dtype=float)
    lam2 = np.asarray(lam2, dtype=float)
    if lam1.shape != lam2.shape or lam1.ndim != 1:
        raise ValueError(f"length mismatch: {lam1.shape} vs {lam2.shape}")
    o1 = tuple(int(i) for i in np.argsort(-lam1, kind="stable"))
    o2 = tuple(int(i) for i in np.argsort(-lam2, kind="stable"))
    return OmegaChains(tuple(lam1.tolist()), tuple(lam2.tolist()), o1, o2)


def _check_range(ch, k, l1=1, l2=1):
    d = ch.d
    for name, v in (("k", k), ("l1", l1), ("l2", l2)):
        if not 1 <= v <= d:
            raise ValueError(f"{name} must lie in [1, {d}], got {v}")


def explicit_alignment(ch: OmegaChains, k, l1, l2) -> int:
    """``min(k, |Ω¹ ∩ Ω²|) + min(k, |Ω¹ ∪ Ω²|)`` for the size-``l1``/``l2`` sets."""
    _check_range(ch, k, l1, l2)
    a, b = ch.omega1(l1), ch.omega2(l2)
    return min(k, len(a & b)) + min(k, len(a | b))


def explicit_table(ch: OmegaChains, k):
    """Alignment terms for every ``(l1, l2)``, indexed ``[l1-1, l2-1]``."""
    d = ch.d
    return np.array([[explicit_alignment(ch, k, l1, l2) for l2 in range(1, d + 1)]
                     for l1 in range(1, d + 1)], dtype=float)


@lru_cache(maxsize=512)
def _intersections(ch):
    """``inter[l1, l2] = |Ω¹_l1 ∩ Ω²_l2|`` with a zero row and column at size 0."""
    d = ch.d
    in1 = np.zeros((d + 1, d), dtype=np.int64)
    in2 = np.zeros((d + 1, d), dtype=np.int64)
    for ell in range(1, d + 1):
        in1[ell] = in1[ell - 1]
        in1[ell, ch.order1[ell - 1]] = 1
        in2[ell] = in2[ell - 1]
        in2[ell, ch.order2[ell - 1]] = 1
    return in1 @ in2.T, in1, in2


def is_feasible(pair: SubsetPair, ch: OmegaChains, k) -> bool:
    """Check the reduced alignment constraints for a pair of ``k``-subsets.

    ``|S1 ∩ Ω¹_l1| + |S2 ∩ Ω²_l2| <= |Ω¹_l1 ∩ Ω²_l2| + k`` for all sizes;
    the remaining constraints hold automatically for ``k``-sets.
    """
    if pair.k != k:
        raise ValueError(f"pair has cardinality {pair.k}, expected {k}")
    inter, in1, in2 = _intersections(ch)
    c1 = in1[1:, sorted(pair.s1)].sum(axis=1)
    c2 = in2[1:, sorted(pair.s2)].sum(axis=1)
    return bool(np.all(c1[:, None] + c2[None, :] <= inter[1:, 1:] + k))


def satisfies_alignment_constraints(pair: SubsetPair, ch: OmegaChains, k) -> bool:
    """The unreduced constraints, evaluated one by one with Python sets."""
    d = ch.d
    for l1 in range(1, d + 1):
        a = ch.omega1(l1)
        for l2 in range(1, d + 1):
            b = ch.omega2(l2)
            if len(pair.s1 & a) + len(pair.s2 & b) > min(k, len(a & b)) + min(k, len(a | b)):
                return False
    return True


def objective(pair: SubsetPair, ch: OmegaChains) -> float:
    return float(sum(ch.lam1[i] for i in pair.s1) + sum(ch.lam2[j] for j in pair.s2))


@dataclass(frozen=True)
class SymmetrizationTrace:
    """Bookkeeping from one run of the exchange argument.

    ``m[i-1]`` is the chain-1 rank of the ``i``-th best element of ``S1``;
    ``r[i'-1]`` the minimal chain-2 size admitted for slot ``i'``; ``y`` the
    coordinates that form ``S``; ``witnesses[i'-1]`` every ``i`` attaining
    equality for slot ``i'``; ``gamma[i'-1]`` the minimal strict witness.
    """

    m: tuple
    r: tuple
    y: tuple
    witnesses: tuple
    gamma: tuple
    intermediate: SubsetPair
    result: SubsetPair


def symmetrize_traced(pair: SubsetPair, ch: OmegaChains, k) -> SymmetrizationTrace:
    """Run the two-step exchange and verify every intermediate claim.

    Step one keeps ``S1`` and rebuilds the second set slot by slot as the
    earliest chain-2 element compatible with ``S1``; step two shows the
    rebuilt set can replace ``S1`` too.  Raises ``ValueError`` for an
    infeasible input and ``InvariantError`` if a guaranteed property fails.
    """
    _check_range(ch, k)
    if not is_feasible(pair, ch, k):
        raise ValueError("symmetrize needs a feasible pair")
    d = ch.d
    inter, _, _ = _intersections(ch)
    rank1, order2 = ch.rank1, ch.order2

    xs = sorted(pair.s1, key=lambda x: rank1[x])
    m = [rank1[x] for x in xs]
    idx = np.arange(1, k + 1)

    r = []
    for ip in range(1, k + 1):
        for cand in range(1, d + 1):
            if np.all(idx + ip <= k + inter[m, cand]):
                r.append(cand)
                break
        else:  # pragma: no cover - r = d always qualifies
            raise InvariantError(f"no admissible chain size for slot {ip}")
    y = [order2[ri - 1] for ri in r]
    S = frozenset(y)

    if any(b <= a for a, b in zip(r, r[1:])):
        raise InvariantError(f"chain sizes {r} are not strictly increasing")
    if len(S) != k:
        raise InvariantError("constructed set is not a k-set")

    witnesses, gamma = [], []
    for ip, ri in enumerate(r, start=1):
        eq = [i for i in range(1, k + 1) if i + ip == k + inter[m[i - 1], ri]]
        if not eq:
            raise InvariantError(f"slot {ip}: no constraint is tight at r = {ri}")
        witnesses.append(tuple(eq))
        if ip == 1:
            g = k
        else:
            strict = [i for i in eq if inter[m[i - 1], ri] > inter[m[i - 1], ri - 1]]
            if not strict:
                raise InvariantError(f"slot {ip}: no witness with a strict increase")
            g = strict[0]
        gamma.append(g)

    middle = SubsetPair(pair.s1, S)
    if not is_feasible(middle, ch, k):
        raise InvariantError("(S1, S) is not feasible")
    if objective(middle, ch) < objective(pair, ch) - 1e-12:
        raise InvariantError("replacing S2 by S decreased the objective")

    for i in range(1, k + 1):
        if len(S & ch.omega1(m[i - 1])) < i:
            raise InvariantError(f"|S ∩ Ω¹_m{i}| < {i}")
    for ip, (ri, g) in enumerate(zip(r, gamma), start=1):
        if not ch.omega1(m[g - 1]) & ch.omega2(ri) <= S:
            raise InvariantError(f"slot {ip}: Ω¹ ∩ Ω² block not contained in S")

    result = SubsetPair(S, S)
    if objective(result, ch) < objective(middle, ch) - 1e-12:
        raise InvariantError("replacing S1 by S decreased the objective")
    return SymmetrizationTrace(tuple(m), tuple(r), tuple(y), tuple(witnesses),
                               tuple(gamma), middle, result)


def symmetrize(pair: SubsetPair, ch: OmegaChains, k) -> SubsetPair:
    """A symmetric feasible pair at least as good as ``pair``."""
    return symmetrize_traced(pair, ch, k).result


def combinatorial_optimum(ch: OmegaChains, k):
    """Best objective over feasible pairs, returned with an optimal symmetric pair.

    Symmetric pairs are always feasible and (by the exchange argument) no
    asymmetric pair beats them, so the optimum is the top-``k`` coordinates of
    ``λ̃(D1) + λ̃(D2)``.
    """
    _check_range(ch, k)
    total = np.asarray(ch.lam1) + np.asarray(ch.lam2)
    S = frozenset(int(i) for i in np.argsort(-total, kind="stable")[:k])
    pair = SubsetPair(S, S)
    return objective(pair, ch), pair


def feasible_pairs(ch: OmegaChains, k):
    """Every feasible pair of ``k``-subsets (exhaustive; ``d <= 8``)."""
    _check_range(ch, k)
    d = ch.d
    if d > BRUTE_FORCE_MAX_D:
        raise ValueError(f"exhaustive enumeration is limited to d <= {BRUTE_FORCE_MAX_D}")
    inter, in1, in2 = _intersections(ch)
    subsets = list(combinations(range(d), k))
    c1 = np.array([in1[1:, list(s)].sum(axis=1) for s in subsets])  # (n, d)
    c2 = np.array([in2[1:, list(s)].sum(axis=1) for s in subsets])
    cap = inter[1:, 1:] + k
    out = []
    for a, s1 in enumerate(subsets):
        ok = np.all(c1[a][None, :, None] + c2[:, None, :] <= cap[None], axis=(1, 2))
        out.extend(SubsetPair(s1, subsets[b]) for b in np.flatnonzero(ok))
    return out


def brute_force_optimum(ch: OmegaChains, k) -> float:
    """Maximum objective over all feasible pairs, by enumeration."""
    if comb(ch.d, k) ** 2 > 10**7:  # pragma: no cover - guarded by d <= 8
        raise ValueError("instance too large for enumeration")
    return max(objective(p, ch) for p in feasible_pairs(ch, k))
