import math

import numpy as np

from kyfanlp.sampling import Sampler, haar_unitary, random_hermitian, random_psd, random_pure, trial_seed
from kyfanlp.spectral import eigvalsh

MASK = (1 << 64) - 1


def philox4x64_block(counter, key):
    """Reference Philox4x64-10 written from the published round function."""
    m0, m1 = 0xD2E7470EE14C6C93, 0xCA5A826395121157
    w0, w1 = 0x9E3779B97F4A7C15, 0xBB67AE8584CAA73B
    x, k = list(counter), list(key)
    for r in range(10):
        if r:
            k = [(k[0] + w0) & MASK, (k[1] + w1) & MASK]
        p0, p1 = m0 * x[0], m1 * x[2]
        x = [(p1 >> 64) ^ x[1] ^ k[0], p1 & MASK, (p0 >> 64) ^ x[3] ^ k[1], p0 & MASK]
    return x


def test_words_follow_reference_generator():
    words = [int(w) for w in Sampler(42).words(8)]
    expected = philox4x64_block((1, 0, 0, 0), (42, 0)) + philox4x64_block((2, 0, 0, 0), (42, 0))
    assert words == expected


def test_normals_follow_box_muller():
    w = philox4x64_block((1, 0, 0, 0), (7, 0))
    u1, u2 = (w[0] >> 11) * 2.0**-53, (w[1] >> 11) * 2.0**-53
    r = math.sqrt(-2 * math.log1p(-u1))
    z = Sampler(7).normal(2)
    assert np.isclose(z[0], r * math.cos(2 * math.pi * u2), rtol=1e-15)
    assert np.isclose(z[1], r * math.sin(2 * math.pi * u2), rtol=1e-15)


def test_golden_psd():
    A = random_psd(3, 42)
    assert np.isclose(A[0, 0], 0.43374237198377585, rtol=1e-12)
    assert np.isclose(A[0, 1], -0.039473761704910314 - 0.18953695474461166j, rtol=1e-12)
    assert np.array_equal(A, random_psd(3, 42))


def test_psd_properties():
    assert np.allclose(random_psd(1, 9), [[1]])
    for seed in range(1000):
        lam = eigvalsh(random_psd(1 + seed % 5, seed))
        assert lam[-1] >= -1e-12
        assert abs(lam.sum() - 1) < 1e-12


def test_pure_states():
    P = random_pure(3, 42)
    assert np.isclose(P[1, 2], -0.36489975219587595 + 0.08731931611141927j, rtol=1e-12)
    for seed in range(100):
        P = random_pure(4, seed)
        lam = eigvalsh(P)
        assert abs(np.trace(P).real - 1) < 1e-12 and lam[1] <= 1e-10
        assert np.array_equal(P, random_pure(4, seed))


def test_unitary_and_hermitian():
    U = haar_unitary(5, 3)
    assert np.allclose(U.conj().T @ U, np.eye(5), atol=1e-12)
    H = random_hermitian(4, 3)
    assert np.array_equal(H, H.conj().T)


def test_helpers():
    s = Sampler(1)
    assert all(2 <= s.integer(2, 4) <= 4 for _ in range(50))
    p = s.probability(4)
    assert np.all(p >= 0) and np.isclose(p.sum(), 1)
    sub = s.subset(6, 3)
    assert len(set(sub)) == 3 and all(0 <= x < 6 for x in sub)
    assert trial_seed(2**64 - 1, 1) == 0
