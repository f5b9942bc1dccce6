"""
Reduced Burau representation and the Alexander polynomial of braid closures.

Conventions: ``B(b1 b2) = B(b1) B(b2)``. Right multiplication by the matrix of
sigma_i (column c = i - 1) replaces column c by ``t*col[c-1] - t*col[c] + col[c+1]``;
its inverse replaces it by ``col[c-1] - t^-1*col[c] + t^-1*col[c+1]``. Terms
falling outside the matrix are dropped.

Each generator matrix differs from the identity in one column with entries of
degree in [0, 1] (or [-1, 0]), so every minor of a product of ``a`` positive and
``b`` negative letters has exponents in ``[-b, a]``. The fast path relies on this.
"""

from __future__ import annotations

import numba as nb
import numpy as np

from ..braid import BraidWord, closure_components
from ..laurent import LaurentPoly, ONE, ZERO, divide_exact, normalize_alexander
from .modular import det_identity_minus_exact

T = LaurentPoly.var()
T_INV = LaurentPoly.monomial(1, -1)

BurauMatrix = list  # list of rows of LaurentPoly


class NotAKnot(ValueError):
    """The closure has more than one component."""


def identity_matrix(size: int) -> BurauMatrix:
    return [[ONE if i == j else ZERO for j in range(size)] for i in range(size)]


def generator_matrix(size: int, letter: int) -> BurauMatrix:
    m = identity_matrix(size)
    c = abs(letter) - 1
    if letter > 0:
        col = {c - 1: T, c: -T, c + 1: ONE}
    else:
        col = {c - 1: ONE, c: -T_INV, c + 1: T_INV}
    for r in range(size):
        m[r][c] = col.get(r, ZERO)
    return m


def matmul(a: BurauMatrix, b: BurauMatrix) -> BurauMatrix:
    size = len(a)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = ZERO
            for k in range(size):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def reduced_burau(b: BraidWord) -> BurauMatrix:
    """The (n-1)x(n-1) reduced Burau matrix as exact Laurent polynomials."""
    if b.strands < 2:
        raise ValueError("reduced Burau needs at least 2 strands")
    size = b.strands - 1
    out = identity_matrix(size)
    for x in b.letters:
        out = matmul(out, generator_matrix(size, x))
    return out


def det_bareiss(m: BurauMatrix) -> LaurentPoly:
    """Fraction-free determinant over Z[t, t^-1]; a slow independent route."""
    a = [row[:] for row in m]
    size = len(a)
    if size == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(size - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, size) if a[r][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = divide_exact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            a[i][k] = ZERO
        prev = a[k][k]
    return a[-1][-1] if sign > 0 else -a[-1][-1]


def _strand_factor(n: int) -> LaurentPoly:
    return LaurentPoly({e: 1 for e in range(n)})


def alexander_reference(b: BraidWord) -> LaurentPoly:
    """Alexander polynomial through symbolic matrices and Bareiss elimination."""
    if closure_components(b) != 1:
        raise NotAKnot(f"closure of {b} is not a knot")
    if b.strands == 1:
        return ONE
    m = reduced_burau(b)
    size = len(m)
    i_minus = [[(ONE if i == j else ZERO) - m[i][j] for j in range(size)] for i in range(size)]
    det = det_bareiss(i_minus)
    return normalize_alexander(divide_exact(det, _strand_factor(b.strands)))


class BurauOverflow(ArithmeticError):
    pass


@nb.njit(cache=True)
def _burau_product(size, word, nneg, width):
    b = np.zeros((size, size, width), np.int64)
    for i in range(size):
        b[i, i, nneg] = 1
    col = np.zeros((size, width), np.int64)
    peak = 1
    for x in word:
        c = abs(x) - 1
        col[:, :] = 0
        if x > 0:
            for r in range(size):
                for e in range(width - 1):
                    v = -b[r, c, e]
                    if c > 0:
                        v += b[r, c - 1, e]
                    col[r, e + 1] += v
                if c < size - 1:
                    for e in range(width):
                        col[r, e] += b[r, c + 1, e]
        else:
            for r in range(size):
                for e in range(1, width):
                    v = -b[r, c, e]
                    if c < size - 1:
                        v += b[r, c + 1, e]
                    col[r, e - 1] += v
                if c > 0:
                    for e in range(width):
                        col[r, e] += b[r, c - 1, e]
        for r in range(size):
            for e in range(width):
                v = col[r, e]
                b[r, c, e] = v
                if v > peak:
                    peak = v
                elif -v > peak:
                    peak = -v
        # one more letter at most triples a coefficient
        if peak > (1 << 61):
            return b, -1
    return b, peak


def burau_coefficients(b: BraidWord) -> tuple[np.ndarray, int]:
    """
    Dense coefficient cube of the reduced Burau matrix: entry ``[i, j, e]`` is
    the coefficient of ``t^(e - nneg)`` where ``nneg`` is the number of
    negative letters. Returns ``(cube, nneg)``.
    """
    if b.strands < 2:
        raise ValueError("reduced Burau needs at least 2 strands")
    nneg = sum(1 for x in b.letters if x < 0)
    word = np.array(b.letters, dtype=np.int64)
    cube, peak = _burau_product(b.strands - 1, word, nneg, len(b.letters) + 1)
    if peak < 0:
        raise BurauOverflow(f"Burau coefficients of {b.strands}-strand word exceed int64")
    return cube, nneg


def burau_matrix_from_cube(cube: np.ndarray, nneg: int) -> BurauMatrix:
    size = cube.shape[0]
    return [[LaurentPoly.from_dense(cube[i, j].tolist(), -nneg) for j in range(size)]
            for i in range(size)]


def alexander(b: BraidWord) -> LaurentPoly:
    """
    Normalized Alexander polynomial of the closure of ``b``.

    ``det(I - B)`` equals ``Delta * (1 + t + ... + t^(n-1))`` up to a unit; the
    determinant is computed exactly by multi-modular evaluation.
    """
    if closure_components(b) != 1:
        raise NotAKnot(f"closure of the {b.strands}-strand word is not a knot")
    if b.strands == 1:
        return ONE
    try:
        cube, nneg = burau_coefficients(b)
    except BurauOverflow:
        return alexander_reference(b)
    dense, low = det_identity_minus_exact(cube, nneg)
    det = LaurentPoly.from_dense(dense, low)
    return normalize_alexander(divide_exact(det, _strand_factor(b.strands)))
