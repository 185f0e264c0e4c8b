import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import haar, random_hermitian
from kyfanlp.spectral import (
    ConvergenceError,
    Subspace,
    align_map,
    as_hermitian,
    eigh,
    eigh_many,
    eigvalsh,
    flag_projector,
    tensor_product,
    von_neumann_entropy,
)

# roots of the characteristic polynomial, from a 20-digit polynomial root finder
TRIDIAGONAL = np.array([[2, 1j, 0], [-1j, 2, 1], [0, 1, 3]])
TRIDIAGONAL_SPECTRUM = [3.8019377358048382525, 2.4450418679126288086, 0.75302039628253293895]


def test_frozen_spectrum():
    assert np.allclose(eigvalsh(TRIDIAGONAL), TRIDIAGONAL_SPECTRUM, atol=1e-12)


def test_two_by_two_pauli_y():
    dec = eigh([[0, -1j], [1j, 0]])
    assert np.allclose(dec.eigenvalues, [1, -1], atol=1e-14)
    v = dec.eigenvectors[:, 0]
    assert np.allclose(np.array([[0, -1j], [1j, 0]]) @ v, v, atol=1e-14)


def test_identity_keeps_standard_basis():
    dec = eigh(np.eye(4))
    assert np.array_equal(dec.eigenvalues, np.ones(4))
    assert np.allclose(dec.eigenvectors, np.eye(4))


def test_diagonal_input_sorted_and_ties_stable():
    dec = eigh(np.diag([1.0, 3.0, 1.0, 2.0]))
    assert np.array_equal(dec.eigenvalues, [3.0, 2.0, 1.0, 1.0])
    # tied eigenvalues keep their coordinate order
    assert np.allclose(np.abs(dec.eigenvectors[:, 2:]), np.eye(4)[:, [0, 2]])


def test_one_by_one():
    dec = eigh([[2.5]])
    assert dec.eigenvalues.tolist() == [2.5]
    assert np.allclose(dec.eigenvectors, [[1]])


@pytest.mark.parametrize("d", [2, 3, 5, 8, 13, 16, 24])
def test_matches_lapack(rng, d):
    H = random_hermitian(rng, d)
    dec = eigh(H)
    assert np.allclose(dec.eigenvalues, np.linalg.eigvalsh(H)[::-1], atol=1e-10)
    Q = dec.eigenvectors
    assert np.allclose(Q.conj().T @ Q, np.eye(d), atol=1e-12)
    assert np.allclose(dec.reconstruct(), H, atol=1e-10)


@given(st.integers(1, 9), st.integers(0, 2**32 - 1))
def test_decomposition_invariants(d, seed):
    H = random_hermitian(np.random.default_rng(seed), d)
    dec = eigh(H)
    assert np.all(np.diff(dec.eigenvalues) <= 0)
    assert np.allclose(H @ dec.eigenvectors, dec.eigenvectors * dec.eigenvalues, atol=1e-10)


def test_degenerate_spectrum(rng):
    U = haar(rng, 6)
    lam = np.array([2, 2, 2, -1, -1, 0.5])
    H = (U * lam) @ U.conj().T
    dec = eigh(H)
    assert np.allclose(dec.eigenvalues, [2, 2, 2, 0.5, -1, -1], atol=1e-12)
    assert np.allclose(dec.reconstruct(), H, atol=1e-12)


def test_batch_equals_single(rng):
    Hs = np.array([random_hermitian(rng, 5) for _ in range(7)])
    for H, dec in zip(Hs, eigh_many(Hs)):
        assert np.allclose(dec.eigenvalues, eigvalsh(H), atol=1e-13)


def test_rejects_non_hermitian():
    with pytest.raises(ValueError):
        eigh([[1, 2], [0, 1]])
    with pytest.raises(ValueError):
        eigh(np.zeros((2, 3)))


def test_symmetrizes_small_noise():
    H = np.array([[1.0, 2.0 + 1e-10], [2.0, 1.0]])
    assert np.allclose(as_hermitian(H), as_hermitian(H).conj().T)


def test_sweep_cap(monkeypatch):
    import kyfanlp.spectral as spectral
    monkeypatch.setattr(spectral, "MAX_SWEEPS", 0)
    with pytest.raises(ConvergenceError):
        spectral.eigh([[1, 1], [1, 2]])


def test_flag_projector(rng):
    H = random_hermitian(rng, 5)
    dec = eigh(H)
    for ell in range(1, 6):
        W = flag_projector(dec, ell)
        P = W.projector
        assert W.dim == ell
        assert np.allclose(P @ P, P, atol=1e-12)
        assert np.isclose(np.trace(P).real, ell)
        # the largest-eigenvalue space: tr(P H) = s_ell
        assert np.isclose(np.trace(P @ H).real, dec.eigenvalues[:ell].sum())
    with pytest.raises(ValueError):
        flag_projector(dec, 0)


def test_subspace_from_basis(rng):
    Q = haar(rng, 4)[:, :2]
    W = Subspace.from_basis(Q)
    assert W.dim == 2 and np.isclose(np.trace(W.projector).real, 2)


def test_align_map_is_sorted_diagonal(rng):
    H = random_hermitian(rng, 4)
    D = align_map(H)
    assert np.allclose(np.diag(D), np.sort(np.linalg.eigvalsh(H))[::-1])
    assert np.allclose(D - np.diag(np.diag(D)), 0)


def test_entropy():
    assert np.isclose(von_neumann_entropy(np.eye(4) / 4), 2.0)
    assert abs(von_neumann_entropy(np.diag([1.0, 0.0]))) < 1e-15
    assert np.isclose(von_neumann_entropy(np.diag([0.5, 0.25, 0.25])), 1.5)
    with pytest.raises(ValueError):
        von_neumann_entropy(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        von_neumann_entropy(np.eye(2))


def test_tensor_product_layout():
    X = np.diag([1.0, 2.0])
    Y = np.diag([1.0, 10.0, 100.0])
    assert np.allclose(np.diag(tensor_product(X, Y)), [1, 10, 100, 2, 20, 200])
