from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import haar, random_hermitian
from kyfanlp.majorization import majorizes, operator_majorizes, partial_sums, s_k


def subset_max(x, k):
    return max(sum(c) for c in combinations(x, k))


def test_s_k_against_all_subsets(rng):
    # 10 choose 4 = 210 subsets
    x = rng.normal(size=10)
    for k in range(1, 11):
        assert np.isclose(s_k(x, k), subset_max(x, k))
    assert np.isclose(s_k(x, 4), subset_max(x, 4))


def test_s_k_examples():
    assert s_k([3, 1, 2], 2) == 5
    assert s_k([-1, -2], 1) == -1
    with pytest.raises(ValueError):
        s_k([1, 2], 3)
    with pytest.raises(ValueError):
        s_k([1, 2], 0)


def test_uniform_is_majorized_by_everything():
    v = majorizes([1, 0, 0], [1 / 3] * 3)
    assert v.holds and v.first_violation is None
    assert np.allclose(v.gaps, [2 / 3, 1 / 3, 0])


def test_failure_reports_first_k():
    v = majorizes([1 / 3] * 3, [1, 0, 0])
    assert not v.holds and v.first_violation == 1
    assert np.isclose(v.min_gap, -2 / 3)


def test_trace_mismatch_reported_at_d():
    v = majorizes([2, 0], [1, 0])
    assert not v.holds and v.first_violation == 2 and np.isclose(v.trace_gap, 1)


def test_length_mismatch():
    with pytest.raises(ValueError):
        majorizes([1, 2], [1, 2, 3])


@given(st.lists(st.floats(-100, 100), min_size=1, max_size=8))
def test_reflexive_and_permutation_invariant(x):
    x = np.array(x)
    assert majorizes(x, x).holds
    assert majorizes(x, x[::-1]).holds and majorizes(x[::-1], x).holds


@given(st.lists(st.floats(-10, 10), min_size=2, max_size=6), st.integers(0, 2**32 - 1))
def test_doubly_stochastic_average_is_majorized(x, seed):
    # convex combinations of permutations of x are majorized by x
    rng = np.random.default_rng(seed)
    x = np.array(x)
    w = rng.dirichlet(np.ones(3))
    y = sum(wi * x[rng.permutation(len(x))] for wi in w)
    assert majorizes(x, y, tol=1e-9).holds


def test_partial_sums_sorted():
    assert np.allclose(partial_sums([1, 3, 2]), [3, 5, 6])


def test_ky_fan_for_operators(rng):
    for d in range(2, 7):
        A1, A2 = random_hermitian(rng, d), random_hermitian(rng, d)
        D = np.diag(np.linalg.eigvalsh(A1)[::-1] + np.linalg.eigvalsh(A2)[::-1])
        assert operator_majorizes(D, A1 + A2).holds


def test_unitary_conjugation_is_equivalent(rng):
    A = random_hermitian(rng, 5)
    U = haar(rng, 5)
    B = U @ A @ U.conj().T
    assert operator_majorizes(A, B).holds and operator_majorizes(B, A).holds
