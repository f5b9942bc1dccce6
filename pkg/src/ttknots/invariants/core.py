"""Public invariant API: bracket, Jones, and the assembled :class:`InvariantSet`."""

from __future__ import annotations

import dataclasses

from ..braid import BraidWord, closure_components, exponent_sum, simplify_closure
from ..laurent import (
    LaurentPoly, ONE, eval_at_minus_one, eval_at_one, format_poly, parse_poly,
)
from .burau import NotAKnot, alexander
from .temperley_lieb import bracket_dense

DEFAULT_JONES_CEILING = 12


class CeilingExceeded(Exception):
    """The Temperley-Lieb basis for this strand count is above the configured ceiling."""

    def __init__(self, strands: int, ceiling: int):
        super().__init__(f"Jones skipped: {strands} strands exceeds ceiling {ceiling}")
        self.strands = strands
        self.ceiling = ceiling


class ConventionError(AssertionError):
    """A normalization identity failed; this points to a sign or variable mix-up."""


def kauffman_bracket(b: BraidWord, ceiling: int = DEFAULT_JONES_CEILING) -> LaurentPoly:
    """Bracket of the closure diagram of ``b`` exactly as written, in the variable A."""
    if b.strands > ceiling:
        raise CeilingExceeded(b.strands, ceiling)
    return bracket_dense(b)


def jones_from_bracket(bracket: LaurentPoly, writhe: int) -> LaurentPoly:
    """``V(t) = (-A^3)^(-w) <b>`` with ``t = A^-4``."""
    terms = {}
    sign = -1 if writhe % 2 else 1
    for e, c in bracket.items():
        e -= 3 * writhe
        if e % 4:
            raise ConventionError(f"A-exponent {e} is not divisible by 4")
        terms[-e // 4] = sign * c
    return LaurentPoly(terms)


def jones(b: BraidWord, ceiling: int = DEFAULT_JONES_CEILING) -> LaurentPoly:
    """
    Jones polynomial of the (knot) closure of ``b``.

    The word is first shortened by closure-preserving moves, so the ceiling
    applies to the strand count that is left afterwards.
    """
    if closure_components(b) != 1:
        raise NotAKnot("Jones is only computed for knots here")
    small = simplify_closure(b)
    if small.strands > ceiling:
        raise CeilingExceeded(small.strands, ceiling)
    return jones_from_bracket(bracket_dense(small), exponent_sum(small))


@dataclasses.dataclass(frozen=True)
class InvariantSet:
    alexander: LaurentPoly
    jones: LaurentPoly | None
    determinant: int
    alex_breadth: int
    components: int = 1
    jones_skipped: bool = False

    def to_dict(self) -> dict:
        return {
            "alexander": format_poly(self.alexander),
            "jones": None if self.jones is None else format_poly(self.jones),
            "jones_skipped": self.jones_skipped,
            "determinant": self.determinant,
            "alex_breadth": self.alex_breadth,
            "components": self.components,
        }

    @classmethod
    def from_dict(cls, d: dict) -> InvariantSet:
        return cls(
            alexander=parse_poly(d["alexander"]),
            jones=None if d.get("jones") is None else parse_poly(d["jones"]),
            determinant=int(d["determinant"]),
            alex_breadth=int(d["alex_breadth"]),
            components=int(d.get("components", 1)),
            jones_skipped=bool(d.get("jones_skipped", False)),
        )


def check_consistency(inv: InvariantSet) -> None:
    """Raise :class:`ConventionError` if the record violates a knot identity."""
    if inv.determinant != abs(eval_at_minus_one(inv.alexander)):
        raise ConventionError("determinant differs from |Delta(-1)|")
    if eval_at_one(inv.alexander) != 1:
        raise ConventionError("Delta(1) != 1")
    if inv.jones is not None:
        if eval_at_one(inv.jones) != 1:
            raise ConventionError("V(1) != 1")
        if abs(eval_at_minus_one(inv.jones)) != inv.determinant:
            raise ConventionError("|V(-1)| differs from the determinant")


def invariant_set(b: BraidWord, want_jones: bool = True,
                  ceiling: int = DEFAULT_JONES_CEILING) -> InvariantSet:
    if closure_components(b) != 1:
        raise NotAKnot("invariant sets are only assembled for knots")
    delta = alexander(b)
    v = None
    skipped = False
    if want_jones:
        try:
            v = jones(b, ceiling)
        except CeilingExceeded:
            skipped = True
    inv = InvariantSet(
        alexander=delta,
        jones=v,
        determinant=abs(eval_at_minus_one(delta)),
        alex_breadth=delta.breadth(),
        jones_skipped=skipped,
    )
    check_consistency(inv)
    return inv


UNKNOT_INVARIANTS = InvariantSet(ONE, ONE, 1, 0)
