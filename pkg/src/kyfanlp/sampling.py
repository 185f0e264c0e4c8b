"""Seeded random instances that are reproducible outside numpy.

Every draw comes from the Philox4x64-10 counter-based generator with key
``(seed, 0)``; the counter is ``(1, 0, 0, 0)`` for the first block and
increments by one per block, and each block yields four 64-bit words in
order.  Uniforms are ``(word >> 11) * 2**-53``; standard normals come in
pairs from Box–Muller on two consecutive uniforms ``u1, u2`` as
``sqrt(-2 ln(1 - u1)) * (cos(2π u2), sin(2π u2))``.  A complex Gaussian
``d x d`` matrix takes ``d*d`` real parts (row-major) and then ``d*d``
imaginary parts.  Any implementation reproducing these rules reproduces the
same instances up to the last-bit rounding of ``log`` and ``cos``.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "Sampler",
    "random_psd",
    "random_pure",
    "random_hermitian",
    "haar_unitary",
    "trial_seed",
]

_U64 = 1 << 64


def trial_seed(seed: int, index: int) -> int:
    """Sub-seed of trial ``index`` in a campaign seeded with ``seed``."""
    return (seed + index) % _U64


class Sampler:
    """Stream of draws from one seed."""

    def __init__(self, seed: int):
        self.seed = int(seed) % _U64
        self._bits = np.random.Philox(key=self.seed)

    def words(self, n):
        return self._bits.random_raw(n)

    def uniform(self, n):
        """``n`` uniforms on ``[0, 1)`` with 53 random bits each."""
        return (self.words(n) >> np.uint64(11)).astype(float) * 2.0**-53

    def normal(self, n):
        m = (n + 1) // 2
        u = self.uniform(2 * m).reshape(m, 2)
        r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        theta = 2.0 * np.pi * u[:, 1]
        return np.column_stack([r * np.cos(theta), r * np.sin(theta)]).ravel()[:n]

    def integer(self, low, high):
        """Integer in ``[low, high]`` (inclusive) by reduction of one word."""
        span = high - low + 1
        return low + int(self.words(1)[0] % np.uint64(span))

    def choice(self, options):
        return options[self.integer(0, len(options) - 1)]

    def complex_gaussian(self, rows, cols=1):
        z = self.normal(2 * rows * cols)
        return (z[:rows * cols] + 1j * z[rows * cols:]).reshape(rows, cols)

    def psd(self, d):
        """``G G*`` normalized to unit trace."""
        G = self.complex_gaussian(d, d)
        A = G @ G.conj().T
        A = (A + A.conj().T) / 2
        return A / np.trace(A).real

    def pure(self, d):
        """``v v*`` for a Haar-random unit vector ``v``."""
        v = self.unit_vector(d)
        P = np.outer(v, v.conj())
        return (P + P.conj().T) / 2

    def unit_vector(self, d):
        v = self.complex_gaussian(d)[:, 0]
        return v / np.linalg.norm(v)

    def hermitian(self, d):
        """``(G + G*) / 2`` for complex Gaussian ``G``."""
        G = self.complex_gaussian(d, d)
        return (G + G.conj().T) / 2

    def unitary(self, d):
        """Haar unitary: QR of a complex Gaussian with the phases of ``R`` removed."""
        Q, R = np.linalg.qr(self.complex_gaussian(d, d))
        ph = np.diagonal(R) / np.abs(np.diagonal(R))
        return Q * ph

    def probability(self, n):
        """Uniform point on the simplex via normalized exponentials."""
        e = -np.log1p(-self.uniform(n))
        return e / e.sum()

    def subset(self, n, size):
        """``size`` distinct elements of ``range(n)``, by partial Fisher–Yates."""
        items = list(range(n))
        for i in range(size):
            j = self.integer(i, n - 1)
            items[i], items[j] = items[j], items[i]
        return sorted(items[:size])


def random_psd(d, seed):
    return Sampler(seed).psd(d)


def random_pure(d, seed):
    return Sampler(seed).pure(d)


def random_hermitian(d, seed):
    return Sampler(seed).hermitian(d)


def haar_unitary(d, seed):
    return Sampler(seed).unitary(d)
