"""
Exact one-variable Laurent polynomials with integer coefficients.

A :class:`LaurentPoly` is an immutable sparse map ``exponent -> coefficient``
with every stored coefficient nonzero. Coefficients are Python integers, so
there is no overflow anywhere in this module.

>>> t = LaurentPoly.var()
>>> str((t - 1) * (t + 1))
'-1 + t^2'
>>> str(normalize_alexander(t**2 - t + 1))
't^-1 - 1 + t'
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence


class DivisionError(ArithmeticError):
    """Raised when an exact division leaves a remainder."""


class LaurentPoly:
    """An element of Z[t, t^-1]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            e = int(e)
            acc[e] = acc.get(e, 0) + int(c)
        self._terms = {e: acc[e] for e in sorted(acc) if acc[e]}
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, c: int, e: int) -> LaurentPoly:
        return cls({e: c})

    @classmethod
    def var(cls) -> LaurentPoly:
        return cls({1: 1})

    @classmethod
    def from_dense(cls, coeffs: Sequence[int], low: int = 0) -> LaurentPoly:
        """Build from a dense coefficient list whose first entry has exponent ``low``."""
        return cls((low + i, c) for i, c in enumerate(coeffs) if c)

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(iter(self._terms))

    def max_exp(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        return next(reversed(self._terms))

    def breadth(self) -> int:
        """Difference between the largest and smallest exponent (0 for constants)."""
        if not self._terms:
            return 0
        return self.max_exp() - self.min_exp()

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def to_dense(self) -> tuple[int, list[int]]:
        """Return ``(low, coeffs)`` with ``coeffs[i]`` the coefficient of ``t^(low+i)``."""
        if not self._terms:
            return 0, []
        lo, hi = self.min_exp(), self.max_exp()
        out = [0] * (hi - lo + 1)
        for e, c in self._terms.items():
            out[e - lo] = c
        return lo, out

    def evaluate(self, x):
        """Evaluate at ``x``; negative exponents need ``x`` to be invertible (e.g. Fraction)."""
        return sum(c * x**e for e, c in self._terms.items())

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other) -> LaurentPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1 or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("only units may be raised to negative powers")
            (e, c), = self._terms.items()
            return LaurentPoly({e * k: c ** (-k)})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``t^k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


def add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f + g


def mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return f * g


def divide_exact(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Return ``h`` with ``h * g == f``; raise :class:`DivisionError` otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return ZERO
    flo, fc = f.to_dense()
    glo, gc = g.to_dense()
    # g = t^glo * g0 with g0(0) != 0, so divisibility is plain polynomial divisibility
    rem = fc[:]
    lead = gc[-1]
    dg = len(gc) - 1
    if len(rem) - 1 < dg:
        raise DivisionError(f"{g} does not divide {f}")
    quot = [0] * (len(rem) - dg)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise DivisionError(f"{g} does not divide {f}")
        k = i - dg
        quot[k] = q
        for j, gj in enumerate(gc):
            rem[k + j] -= q * gj
    if any(rem):
        raise DivisionError(f"{g} does not divide {f}")
    return LaurentPoly.from_dense(quot, flo - glo)


def invert_variable(f: LaurentPoly) -> LaurentPoly:
    """Substitute ``t -> t^-1``."""
    return LaurentPoly({-e: c for e, c in f.items()})


def eval_at_minus_one(f: LaurentPoly) -> int:
    return sum(-c if e & 1 else c for e, c in f.items())


def eval_at_one(f: LaurentPoly) -> int:
    return sum(c for _, c in f.items())


def normalize_alexander(f: LaurentPoly) -> LaurentPoly:
    """
    The unique ``g = ±t^k f`` with ``g(t) = g(1/t)`` and ``g(1) = 1``.

    Raises ValueError when no such representative exists, i.e. the input is not
    (a unit multiple of) the Alexander polynomial of a knot.
    """
    if f.is_zero():
        raise ValueError("zero is not an Alexander polynomial")
    total = f.min_exp() + f.max_exp()
    if total % 2:
        raise ValueError(f"{f} has odd breadth and no symmetric representative")
    g = f.shift(-total // 2)
    v1 = eval_at_one(g)
    if v1 not in (1, -1):
        raise ValueError(f"{f} has value {v1} at t=1, expected ±1")
    if v1 < 0:
        g = -g
    if g != invert_variable(g):
        raise ValueError(f"{f} is not a unit multiple of a symmetric polynomial")
    return g


# -- text format ----------------------------------------------------------

def format_poly(f: LaurentPoly, var: str = "t") -> str:
    """
    Render with ascending exponents, e.g. ``t^-1 - 1 + t`` or ``2*t^-3``.
    """
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.items():
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            power = var if e == 1 else f"{var}^{e}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+)\s*(?:\*\s*)?)?
        (?:(?P<var>[A-Za-z]\w*)(?:\s*\^\s*(?P<exp>[+-]?\d+))?)?
        \s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of :func:`format_poly` (any single-letter variable name is accepted)."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial string")
    terms: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, coef, var, exp = m.group("sign", "coef", "var", "exp")
        if coef is None and var is None:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator near {text[pos:]!r}")
        c = int(coef) if coef is not None else 1
        if sign == "-":
            c = -c
        e = 0 if var is None else (int(exp) if exp is not None else 1)
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    return LaurentPoly(terms)
