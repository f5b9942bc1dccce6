"""
Kauffman bracket of braid closures in the Temperley-Lieb algebra.

A braid on n strands is read as a planar tangle with 2n boundary points; its
state is a combination of non-crossing perfect matchings of those points with
coefficients in Z[A, A^-1]. Each letter expands as

    sigma_i^s = A^s * 1 + A^-s * e_i,

where ``e_i`` caps points i, i+1 and joins their former partners (a closed loop
contributes ``delta = -A^2 - A^-2``). The closure is evaluated by counting loops
of each matching against the identity pattern.

Two engines are provided. :func:`bracket_sparse` keeps a dict from matchings to
:class:`LaurentPoly` and is the simple reference. :func:`bracket_dense` keeps an
int64 array (matchings x exponent columns) updated by a compiled kernel and is
the workhorse; it falls back to the sparse engine if coefficients could leave
the int64 range.
"""

from __future__ import annotations

import functools

import numba as nb
import numpy as np

from ..braid import BraidWord, exponent_sum
from ..laurent import LaurentPoly, ONE, ZERO

DELTA = LaurentPoly({2: -1, -2: -1})


# -- matching basis -----------------------------------------------------------

@functools.lru_cache(maxsize=None)
def matchings(n: int) -> np.ndarray:
    """
    All non-crossing perfect matchings of points 0..2n-1 as partner arrays,
    one row per matching (Catalan(n) rows).
    """
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    blocks = []
    for k in range(n):
        inner = matchings(k)
        outer = matchings(n - 1 - k)
        ni, no = len(inner), len(outer)
        block = np.empty((ni * no, 2 * n), dtype=np.int8)
        block[:, 0] = 2 * k + 1
        block[:, 2 * k + 1] = 0
        block[:, 1:2 * k + 1] = np.repeat(inner + 1, no, axis=0)
        block[:, 2 * k + 2:] = np.tile(outer + 2 * k + 2, (ni, 1))
        blocks.append(block)
    return np.concatenate(blocks)


def _keys(rows: np.ndarray) -> np.ndarray:
    # bit j set when point j opens an arc; a bijection on non-crossing matchings
    width = rows.shape[1]
    weights = 1 << np.arange(width, dtype=np.int64)
    return ((rows > np.arange(width)) * weights).sum(axis=1)


def identity_pattern(n: int) -> tuple[int, ...]:
    """Top point i joined straight down to bottom point 2n-1-i."""
    return tuple(2 * n - 1 - j for j in range(2 * n))


def cap(partner: tuple[int, ...], i: int) -> tuple[tuple[int, ...], bool]:
    """Apply e_i to a matching; the flag reports a closed loop."""
    if partner[i] == i + 1:
        return partner, True
    out = list(partner)
    a, b = partner[i], partner[i + 1]
    out[a], out[b] = b, a
    out[i], out[i + 1] = i + 1, i
    return tuple(out), False


def closure_loops(partner, n: int) -> int:
    """Loops formed when the matching is closed off by the identity pattern."""
    ident = identity_pattern(n)
    seen = [False] * (2 * n)
    loops = 0
    for start in range(2 * n):
        if seen[start]:
            continue
        loops += 1
        x = start
        while not seen[x]:
            seen[x] = True
            y = int(partner[x])
            seen[y] = True
            x = ident[y]
    return loops


@functools.lru_cache(maxsize=4)
def basis_tables(n: int):
    """
    Sorted basis plus, per generator, the CSR map of e_i: for each "loop row"
    (i joined to i+1) the non-loop rows that e_i sends there.
    """
    rows = matchings(n)
    keys = _keys(rows)
    order = np.argsort(keys)
    rows = rows[order]
    keys = keys[order]
    tables = []
    for i in range(n - 1):
        loop = rows[:, i] == i + 1
        movers = np.nonzero(~loop)[0]
        a = rows[movers, i].astype(np.int64)
        b = rows[movers, i + 1].astype(np.int64)
        q = rows[movers].copy()
        ar = np.arange(len(movers))
        q[:, i] = i + 1
        q[:, i + 1] = i
        q[ar, a] = b
        q[ar, b] = a
        dst = np.searchsorted(keys, _keys(q))
        by_dst = np.argsort(dst, kind="stable")
        src = movers[by_dst]
        dst = dst[by_dst]
        loop_rows = np.nonzero(loop)[0]
        pos = np.searchsorted(loop_rows, dst)
        indptr = np.zeros(len(loop_rows) + 1, np.int64)
        np.add.at(indptr, pos + 1, 1)
        indptr = np.cumsum(indptr)
        fanin = int(np.diff(indptr).max()) if len(loop_rows) else 0
        tables.append((loop_rows.astype(np.int64), indptr, src.astype(np.int64), fanin))
    start = int(np.searchsorted(keys, _keys(np.array([identity_pattern(n)], dtype=np.int8))[0]))
    loops = np.array([closure_loops(r, n) for r in rows], dtype=np.int64)
    return rows, tables, start, loops


# -- dense engine ---------------------------------------------------------------

@nb.njit(cache=True)
def _apply_letter(v, lo, hi, loop_rows, indptr, src, s):
    """
    Columns are exponents of A in steps of two, with the global A^s of each
    letter factored out: v[k] += A^(-2s) (delta v[k] + sum v[src]) on loop rows.
    Returns the new column window and the largest coefficient magnitude.
    """
    nlo = lo - 2 if s > 0 else lo
    nhi = hi if s > 0 else hi + 2
    tmp = np.zeros(nhi - nlo + 1, np.int64)
    peak = 0
    for t in range(loop_rows.shape[0]):
        k = loop_rows[t]
        tmp[:] = 0
        if s > 0:
            for c in range(lo, hi + 1):
                x = v[k, c]
                tmp[c - nlo] -= x
                tmp[c - 2 - nlo] -= x
            for u in range(indptr[t], indptr[t + 1]):
                j = src[u]
                for c in range(lo, hi + 1):
                    tmp[c - 1 - nlo] += v[j, c]
        else:
            for c in range(lo, hi + 1):
                x = v[k, c]
                tmp[c + 2 - nlo] -= x
                tmp[c - nlo] -= x
            for u in range(indptr[t], indptr[t + 1]):
                j = src[u]
                for c in range(lo, hi + 1):
                    tmp[c + 1 - nlo] += v[j, c]
        for c in range(nlo, nhi + 1):
            x = v[k, c] + tmp[c - nlo]
            v[k, c] = x
            if x > peak:
                peak = x
            elif -x > peak:
                peak = -x
    return nlo, nhi, peak


@nb.njit(cache=True)
def _trim(v, lo, hi):
    rows = v.shape[0]
    while lo <= hi:
        hit = False
        for k in range(rows):
            if v[k, lo] != 0:
                hit = True
                break
        if hit:
            break
        lo += 1
    while hi >= lo:
        hit = False
        for k in range(rows):
            if v[k, hi] != 0:
                hit = True
                break
        if hit:
            break
        hi -= 1
    return lo, hi


@nb.njit(cache=True)
def _peak(v, lo, hi):
    m = 0
    for k in range(v.shape[0]):
        for c in range(lo, hi + 1):
            x = v[k, c]
            if x > m:
                m = x
            elif -x > m:
                m = -x
    return m


class DenseOverflow(ArithmeticError):
    pass


SAFE_LIMIT = 1 << 62


def _dense_state(b: BraidWord):
    """Run the kernel; return (state, lo, hi, column_shift) or raise DenseOverflow."""
    n = b.strands
    rows, tables, start, _ = basis_tables(n)
    width = 64
    v = np.zeros((len(rows), width), np.int64)
    lo = hi = width // 2
    shift = -lo                     # column c holds A^(2 * (c + shift))
    v[start, lo] = 1
    peak = 1
    for x in b.letters:
        i = abs(x) - 1
        loop_rows, indptr, src, fanin = tables[i]
        # per letter a coefficient grows to at most peak * (3 + fanin)
        if peak * (3 + fanin) >= SAFE_LIMIT:
            raise DenseOverflow("bracket coefficients approach the int64 limit")
        if lo < 2 or hi + 3 > v.shape[1]:
            span = hi - lo + 1
            new_width = max(v.shape[1], 2 * span + 16)
            grown = np.zeros((len(rows), new_width), np.int64)
            new_lo = (new_width - span) // 2
            grown[:, new_lo:new_lo + span] = v[:, lo:hi + 1]
            shift += lo - new_lo
            v, lo, hi = grown, new_lo, new_lo + span - 1
        lo, hi, step_peak = _apply_letter(v, lo, hi, loop_rows, indptr, src, 1 if x > 0 else -1)
        peak = max(peak, step_peak)
        lo, hi = _trim(v, lo, hi)
        if lo > hi:
            lo = hi = v.shape[1] // 2
    return v, lo, hi, shift


def bracket_dense(b: BraidWord) -> LaurentPoly:
    """Kauffman bracket of the closure via the compiled dense engine."""
    n = b.strands
    if n == 1:
        return ONE
    try:
        v, lo, hi, shift = _dense_state(b)
    except DenseOverflow:
        return bracket_sparse(b)
    _, _, _, loops = basis_tables(n)
    powers = _delta_powers(int(loops.max()))
    total = ZERO
    block = v[:, lo:hi + 1]
    for k in np.nonzero(block.any(axis=1))[0]:
        coeffs = block[k].tolist()
        poly = LaurentPoly((2 * (lo + c + shift), x) for c, x in enumerate(coeffs) if x)
        total = total + poly * powers[int(loops[k]) - 1]
    return total.shift(exponent_sum(b))


def _delta_powers(top: int) -> list[LaurentPoly]:
    out = [ONE]
    for _ in range(top):
        out.append(out[-1] * DELTA)
    return out


# -- sparse reference engine ---------------------------------------------------

TLState = dict  # matching partner tuple -> LaurentPoly


def apply_generator(state: TLState, letter: int) -> TLState:
    i = abs(letter) - 1
    s = 1 if letter > 0 else -1
    a_s = LaurentPoly.monomial(1, s)
    a_ms = LaurentPoly.monomial(1, -s)
    out: TLState = {}
    for partner, coef in state.items():
        out[partner] = out.get(partner, ZERO) + a_s * coef
        capped, loop = cap(partner, i)
        term = a_ms * coef
        if loop:
            term = term * DELTA
        out[capped] = out.get(capped, ZERO) + term
    return {k: c for k, c in out.items() if c}


def bracket_sparse(b: BraidWord) -> LaurentPoly:
    """Kauffman bracket of the closure with a dict-of-matchings state vector."""
    n = b.strands
    state: TLState = {identity_pattern(n): ONE}
    for x in b.letters:
        state = apply_generator(state, x)
    total = ZERO
    for partner, coef in state.items():
        total = total + coef * DELTA ** (closure_loops(partner, n) - 1)
    return total
