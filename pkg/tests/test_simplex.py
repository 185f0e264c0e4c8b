import numpy as np
import pytest
from scipy.optimize import linprog

from kyfanlp.simplex import InfeasibleError, UnboundedError, bounded_simplex


def test_small_lp():
    # max x + y s.t. x + 2y <= 4, 3x + y <= 6 -> (1.6, 1.2)
    res = bounded_simplex([1, 1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert np.allclose(res.x, [1.6, 1.2]) and np.isclose(res.value, 2.8)


def test_equality_and_bounds():
    res = bounded_simplex([3, 1, 2], A_eq=[[1, 1, 1]], b_eq=[2], upper=[1, 1, 1])
    assert np.allclose(res.x, [1, 0, 1]) and np.isclose(res.value, 5)


def test_infeasible():
    with pytest.raises(InfeasibleError):
        bounded_simplex([1, 1], A_eq=[[1, 1]], b_eq=[3], upper=[1, 1])


def test_unbounded():
    with pytest.raises(UnboundedError):
        bounded_simplex([1, 0], A_ub=[[0, 1]], b_ub=[1])


def test_negative_rhs_uses_phase_one():
    # x >= 0.5 written as -x <= -0.5
    res = bounded_simplex([-1.0], A_ub=[[-1.0]], b_ub=[-0.5], upper=[1.0])
    assert np.isclose(res.x[0], 0.5)


def test_degenerate_does_not_cycle():
    # Beale's cycling example, maximized form
    c = np.array([0.75, -150, 0.02, -6])
    A = np.array([[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]])
    b = np.array([0, 0, 1])
    res = bounded_simplex(c, A_ub=A, b_ub=b)
    assert np.isclose(res.value, 0.05)


def test_random_box_lps_match_highs(rng):
    for _ in range(300):
        n = int(rng.integers(2, 9))
        m = int(rng.integers(1, 7))
        c = rng.normal(size=n)
        A = rng.integers(-1, 2, size=(m, n)).astype(float)
        b = rng.uniform(0, 3, size=m)
        A_eq = np.ones((1, n))
        b_eq = [float(rng.integers(1, n))]
        ref = linprog(-c, A_ub=A, b_ub=b, A_eq=A_eq, b_eq=b_eq, bounds=[(0, 1)] * n, method="highs")
        if ref.status == 2:
            with pytest.raises(InfeasibleError):
                bounded_simplex(c, A, b, A_eq, b_eq, np.ones(n))
            continue
        res = bounded_simplex(c, A, b, A_eq, b_eq, np.ones(n))
        assert np.isclose(res.value, -ref.fun, atol=1e-9)
        assert np.all(A @ res.x <= b + 1e-9) and np.allclose(A_eq @ res.x, b_eq)
