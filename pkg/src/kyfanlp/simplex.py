"""Dense bounded-variable primal simplex with Bland's anti-cycling rule.

Solves::

    maximize    c @ x
    subject to  A_ub @ x <= b_ub
                A_eq @ x == b_eq
                0 <= x <= upper

The problems this package generates have a few dozen variables and at most a
few hundred rows, so a dense tableau is the simplest robust choice.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SimplexResult",
    "InfeasibleError",
    "UnboundedError",
    "PivotLimitError",
    "bounded_simplex",
]

PIVOT_TOL = 1e-10
MAX_PIVOTS = 1_000_000


class InfeasibleError(ValueError):
    """The constraint set is empty."""


class UnboundedError(ValueError):
    """The objective grows without bound on the feasible set."""


class PivotLimitError(RuntimeError):
    """The pivot cap was reached; indicates a solver bug rather than bad input."""


@dataclass(frozen=True)
class SimplexResult:
    x: np.ndarray
    value: float
    pivots: int


class _Tableau:
    def __init__(self, A, b, cost, upper, basis, forbidden):
        m, N = A.shape
        self.A = A
        self.b = b
        self.T = A.copy()
        self.cost = cost
        self.upper = upper
        self.basis = list(basis)
        self.at_upper = np.zeros(N, dtype=bool)
        self.is_basic = np.zeros(N, dtype=bool)
        self.is_basic[self.basis] = True
        self.forbidden = forbidden
        self.xB = b.copy()
        self.pivots = 0

    def run(self):
        cscale = max(1.0, float(np.max(np.abs(self.cost))))
        dtol = PIVOT_TOL * cscale
        while True:
            reduced = self.cost - self.cost[self.basis] @ self.T
            improving = np.where(self.at_upper, reduced < -dtol, reduced > dtol)
            improving &= ~self.is_basic & ~self.forbidden & (self.upper > 0)
            cand = np.flatnonzero(improving)
            if len(cand) == 0:
                return
            if self.pivots >= MAX_PIVOTS:
                raise PivotLimitError(f"simplex exceeded {MAX_PIVOTS} pivots")
            self.pivots += 1
            self._step(int(cand[0]))

    def _step(self, j):
        sigma = -1.0 if self.at_upper[j] else 1.0
        delta = -sigma * self.T[:, j]
        ub = self.upper[self.basis]
        ratios = np.full(len(delta), np.inf)
        dec = delta < -PIVOT_TOL
        ratios[dec] = np.maximum(self.xB[dec], 0.0) / -delta[dec]
        inc = (delta > PIVOT_TOL) & np.isfinite(ub)
        ratios[inc] = np.maximum(ub[inc] - self.xB[inc], 0.0) / delta[inc]
        theta = ratios.min() if len(ratios) else np.inf
        flip = self.upper[j]
        if flip <= theta:
            if not np.isfinite(flip):
                raise UnboundedError("objective is unbounded")
            self.xB += flip * delta
            self.at_upper[j] = not self.at_upper[j]
            return
        # Bland: among tied rows, the basic variable with the smallest index leaves
        tied = np.flatnonzero(ratios <= theta + 1e-12)
        r = min(tied, key=lambda i: self.basis[i])
        leaving = self.basis[r]
        entering_value = (self.upper[j] if self.at_upper[j] else 0.0) + sigma * theta
        self.xB += theta * delta
        self.at_upper[leaving] = delta[r] > 0
        self.is_basic[leaving] = False

        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = j
        self.is_basic[j] = True
        self.at_upper[j] = False
        self.xB[r] = entering_value

    def point(self):
        """Primal point recomputed from the original data for accuracy."""
        x = np.where(self.at_upper, self.upper, 0.0)
        x[self.is_basic] = 0.0
        x = np.where(np.isfinite(x), x, 0.0)
        B = self.A[:, self.basis]
        rhs = self.b - self.A @ x
        try:
            xb = np.linalg.solve(B, rhs)
        except np.linalg.LinAlgError:
            xb = self.xB
        x[self.basis] = xb
        return x


def bounded_simplex(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, upper=None):
    """Maximize ``c @ x`` over the box-bounded polyhedron; returns a vertex.

    Raises ``InfeasibleError`` for an empty feasible set.
    """
    c = np.asarray(c, dtype=float)
    n = len(c)
    A_ub = np.zeros((0, n)) if A_ub is None else np.asarray(A_ub, dtype=float).reshape(-1, n)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float)
    A_eq = np.zeros((0, n)) if A_eq is None else np.asarray(A_eq, dtype=float).reshape(-1, n)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float)
    upper = np.full(n, np.inf) if upper is None else np.asarray(upper, dtype=float)
    m_ub, m_eq = len(b_ub), len(b_eq)
    m = m_ub + m_eq

    # rows: [A_ub | I | art] and [A_eq | 0 | art], sign-normalized to b >= 0
    A = np.zeros((m, n + m_ub))
    A[:m_ub, :n] = A_ub
    A[:m_ub, n:] = np.eye(m_ub)
    A[m_ub:, :n] = A_eq
    b = np.concatenate([b_ub, b_eq])
    neg = b < 0
    A[neg] *= -1
    b = np.abs(b)
    needs_art = np.ones(m, dtype=bool)
    needs_art[:m_ub] = neg[:m_ub]
    art_rows = np.flatnonzero(needs_art)
    n_art = len(art_rows)
    A = np.hstack([A, np.zeros((m, n_art))])
    A[art_rows, n + m_ub + np.arange(n_art)] = 1.0
    N = A.shape[1]

    basis = []
    k = 0
    for i in range(m):
        if needs_art[i]:
            basis.append(n + m_ub + k)
            k += 1
        else:
            basis.append(n + i)
    ubound = np.concatenate([upper, np.full(m_ub + n_art, np.inf)])
    is_art = np.zeros(N, dtype=bool)
    is_art[n + m_ub:] = True

    pivots = 0
    if n_art:
        cost1 = np.where(is_art, -1.0, 0.0)
        tab = _Tableau(A, b, cost1, ubound, basis, forbidden=np.zeros(N, dtype=bool))
        tab.run()
        pivots += tab.pivots
        infeas = float(tab.xB[is_art[tab.basis]].sum())
        if infeas > 1e-9 * max(1.0, float(np.abs(b).max())):
            raise InfeasibleError(f"constraints are infeasible (residual {infeas:.3g})")
        # artificials are pinned at zero for phase 2
        ubound = ubound.copy()
        ubound[is_art] = 0.0
        tab.upper = ubound
        tab.forbidden = is_art
        tab.cost = np.concatenate([c, np.zeros(N - n)])
        tab.pivots = 0
    else:
        tab = _Tableau(A, b, np.concatenate([c, np.zeros(N - n)]), ubound, basis, is_art)
    tab.run()
    pivots += tab.pivots
    x = tab.point()[:n]
    return SimplexResult(x, float(c @ x), pivots)
