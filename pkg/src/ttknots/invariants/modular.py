"""
Exact determinants of Laurent-polynomial matrices by multi-modular evaluation.

The determinant is evaluated at the N-th roots of unity modulo several
NTT-friendly primes, interpolated back with an inverse transform and lifted to
the integers by the Chinese remainder theorem. Enough primes are used to exceed
twice a rigorous bound on the coefficients, so the lift is exact.
"""

from __future__ import annotations

import functools

import numba as nb
import numpy as np
from sympy import isprime

PRIME_LIMIT = 1 << 31


@nb.njit(cache=True)
def powmod(a, e, p):
    r = 1
    a %= p
    while e > 0:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


@nb.njit(cache=True)
def ntt(a, p, w):
    """In-place radix-2 transform of ``a`` (length a power of two) with root ``w``."""
    n = a.shape[0]
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            a[i], a[j] = a[j], a[i]
    length = 2
    while length <= n:
        wl = powmod(w, n // length, p)
        half = length // 2
        for i in range(0, n, length):
            wn = 1
            for k in range(half):
                u = a[i + k]
                v = a[i + k + half] * wn % p
                a[i + k] = (u + v) % p
                a[i + k + half] = (u - v + p) % p
                wn = wn * wl % p
        length <<= 1


@nb.njit(cache=True)
def det_mod(m, p):
    """Determinant of a square int64 matrix with entries in [0, p)."""
    size = m.shape[0]
    a = m.copy()
    d = 1
    for c in range(size):
        piv = -1
        for r in range(c, size):
            if a[r, c] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            for k in range(size):
                a[c, k], a[piv, k] = a[piv, k], a[c, k]
            d = (p - d) % p
        d = d * a[c, c] % p
        inv = powmod(a[c, c], p - 2, p)
        for r in range(c + 1, size):
            f = a[r, c] * inv % p
            if f:
                for k in range(c, size):
                    a[r, k] = (a[r, k] - f * a[c, k]) % p
    return d


@nb.njit(cache=True)
def det_identity_minus(coeffs, p, w, off):
    """
    Coefficients mod ``p`` of ``t^off * det(I - B)``.

    ``coeffs[i, j, e]`` is the coefficient of ``t^(e - off)`` in ``B[i, j]``,
    already reduced mod ``p`` and zero-padded to a power-of-two length N that
    exceeds the degree span of the determinant.
    """
    size = coeffs.shape[0]
    n = coeffs.shape[2]
    e = coeffs.copy()
    for i in range(size):
        for j in range(size):
            ntt(e[i, j], p, w)
    winv = powmod(w, p - 2, p)
    g = np.zeros(n, np.int64)
    m = np.zeros((size, size), np.int64)
    for k in range(n):
        x = powmod(w, k, p)
        scale = powmod(winv, (k * off) % n, p)
        for i in range(size):
            for j in range(size):
                v = (p - e[i, j, k] * scale % p) % p
                if i == j:
                    v = (v + 1) % p
                m[i, j] = v
        g[k] = det_mod(m, p) * powmod(x, off, p) % p
    ntt(g, p, winv)
    ninv = powmod(n, p - 2, p)
    for k in range(n):
        g[k] = g[k] * ninv % p
    return g


@functools.lru_cache(maxsize=None)
def ntt_primes(n: int, count: int) -> tuple[int, ...]:
    """The ``count`` largest primes below 2^31 that are 1 mod ``n``."""
    out = []
    c = (PRIME_LIMIT - 1) // n
    while len(out) < count:
        if c < 1:
            raise ValueError(f"not enough NTT primes for transform length {n}")
        candidate = c * n + 1
        if isprime(candidate):
            out.append(candidate)
        c -= 1
    return tuple(out)


@functools.lru_cache(maxsize=None)
def root_of_unity(p: int, n: int) -> int:
    """An element of exact order ``n`` (a power of two) modulo ``p``."""
    x = 2
    while True:
        w = pow(x, (p - 1) // n, p)
        if pow(w, n // 2, p) != 1:
            return w
        x += 1


def crt_balanced(residues: list[list[int]], primes: tuple[int, ...]) -> list[int]:
    """Lift per-prime residue vectors to integers in the symmetric range."""
    modulus = 1
    acc = [0] * len(residues[0])
    for p, res in zip(primes, residues):
        inv = pow(modulus, -1, p)
        for j, r in enumerate(res):
            acc[j] += modulus * (((r - acc[j]) * inv) % p)
        modulus *= p
    half = modulus // 2
    return [v - modulus if v > half else v for v in acc]


def det_identity_minus_exact(coeffs: np.ndarray, off: int) -> tuple[list[int], int]:
    """
    Exact coefficients of ``det(I - B)`` for an integer coefficient cube.

    ``coeffs[i, j, e]`` holds the coefficient of ``t^(e - off)`` in ``B[i, j]``.
    Every minor of ``B`` must have its exponents inside the same window
    (true for Burau products, see :mod:`ttknots.invariants.burau`).
    Returns ``(dense, low)`` with ``dense[k]`` the coefficient of ``t^(low + k)``.
    """
    size, _, width = coeffs.shape
    n = 1
    while n < width:
        n *= 2
    # Hadamard-style bound: |coefficient| <= prod over rows of sum of l1 norms
    norms = np.abs(coeffs).sum(axis=2)
    bound = 1
    for i in range(size):
        bound *= int(norms[i].sum()) + 1
    primes = []
    product = 1
    count = 1
    while product <= 2 * bound:
        primes = ntt_primes(n, count)
        product = 1
        for p in primes:
            product *= p
        count += 1
    residues = []
    for p in primes:
        cube = np.zeros((size, size, n), np.int64)
        cube[:, :, :width] = coeffs % p
        g = det_identity_minus(cube, p, root_of_unity(p, n), off)
        residues.append(g.tolist())
    return crt_balanced(residues, tuple(primes)), -off
