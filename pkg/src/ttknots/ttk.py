"""
Twisted torus knots, canonical torus-knot identities, closed-form invariants
and the catalog of families known to give torus knots.

T(p, q, r, s) is the torus knot T(p, q) with s full twists inserted on r
adjacent strands. Here it is the closure of the p-strand braid
``(s_1 ... s_{p-1})^q`` followed by ``s`` full twists on strands 1..r.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable

from .braid import BraidWord, closure_components, concat, embed, full_twist, torus_braid
from .laurent import (
    LaurentPoly, ONE, divide_exact, invert_variable, normalize_alexander,
)


class InvalidParameters(ValueError):
    """Parameters outside the supported range; the message names the violated constraint."""


@dataclasses.dataclass(frozen=True, order=True)
class TTKParams:
    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        p, q, r, s = self.p, self.q, self.r, self.s
        if not q >= 1:
            raise InvalidParameters(f"q >= 1 required, got q={q}")
        if not p > q:
            raise InvalidParameters(f"p > q required, got p={p}, q={q}")
        if math.gcd(p, q) != 1:
            raise InvalidParameters(f"gcd(p,q) = 1 required, got gcd({p},{q}) = {math.gcd(p, q)}")
        if r < 1:
            raise InvalidParameters(f"r >= 1 required, got r={r}")
        if r > p:
            raise InvalidParameters(
                f"r > p is unsupported (r={r}, p={p}); only 1 <= r <= p is implemented"
            )
        if s == 0:
            raise InvalidParameters("s must be nonzero")

    def __str__(self) -> str:
        return f"T({self.p},{self.q},{self.r},{self.s})"


def ttk_braid(params: TTKParams) -> BraidWord:
    p = params.p
    word = concat(torus_braid(p, params.q), embed(full_twist(params.r, params.s), p, 0))
    if closure_components(word) != 1:
        raise AssertionError(f"closure of {params} has more than one component")
    return word


# -- torus classes ---------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class TorusClass:
    """
    ``kind`` is "unknot" or "torus". A torus class has ``a > b >= 2`` coprime
    and chirality ``epsilon`` in {+1, -1}; ``None`` means "undetermined", which
    only identifications from Alexander data alone produce.
    """
    kind: str
    a: int | None = None
    b: int | None = None
    epsilon: int | None = None

    def __post_init__(self):
        if self.kind == "unknot":
            if (self.a, self.b, self.epsilon) != (None, None, None):
                raise ValueError("the unknot carries no parameters")
        elif self.kind == "torus":
            if not (self.a > self.b >= 2 and math.gcd(self.a, self.b) == 1):
                raise ValueError(f"non-canonical torus class ({self.a},{self.b})")
            if self.epsilon not in (1, -1, None):
                raise ValueError(f"chirality must be +1, -1 or undetermined, got {self.epsilon}")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def is_unknot(self) -> bool:
        return self.kind == "unknot"

    def without_chirality(self) -> TorusClass:
        if self.is_unknot:
            return self
        return TorusClass("torus", self.a, self.b, None)

    def mirror(self) -> TorusClass:
        if self.is_unknot or self.epsilon is None:
            return self
        return TorusClass("torus", self.a, self.b, -self.epsilon)

    def __str__(self) -> str:
        if self.is_unknot:
            return "Unknot"
        eps = "?" if self.epsilon is None else ("+" if self.epsilon > 0 else "-")
        return f"Torus({self.a},{self.b},{eps})"


UNKNOT = TorusClass("unknot")


def torus(a: int, b: int, epsilon: int | None = 1) -> TorusClass:
    return TorusClass("torus", a, b, epsilon)


def canonical_torus(a: int, b: int) -> TorusClass:
    """The class of T(a, b); T(a, b) = T(b, a) = T(-a, -b), and |a| or |b| <= 1 is the unknot."""
    if math.gcd(abs(a), abs(b)) != 1:
        raise InvalidParameters(f"T({a},{b}) is a link: gcd({abs(a)},{abs(b)}) != 1")
    if min(abs(a), abs(b)) <= 1:
        return UNKNOT
    eps = (1 if a > 0 else -1) * (1 if b > 0 else -1)
    return TorusClass("torus", max(abs(a), abs(b)), min(abs(a), abs(b)), eps)


def torus_alexander(tc: TorusClass) -> LaurentPoly:
    """``(t^ab - 1)(t - 1) / ((t^a - 1)(t^b - 1))``, symmetrized; blind to chirality."""
    if tc.is_unknot:
        return ONE
    a, b = tc.a, tc.b
    t = LaurentPoly.var()
    num = (t ** (a * b) - 1) * (t - 1)
    den = (t ** a - 1) * (t ** b - 1)
    return normalize_alexander(divide_exact(num, den))


def torus_jones(tc: TorusClass, handedness: int = 1) -> LaurentPoly:
    """
    ``t^((a-1)(b-1)/2) (1 - t^(a+1) - t^(b+1) + t^(a+b)) / (1 - t^2)`` for the
    class whose chirality times ``handedness`` is +1, and its mirror otherwise.
    """
    if tc.is_unknot:
        return ONE
    if tc.epsilon is None:
        raise ValueError("Jones polynomial needs a determined chirality")
    a, b = tc.a, tc.b
    t = LaurentPoly.var()
    num = (1 - t ** (a + 1) - t ** (b + 1) + t ** (a + b)).shift((a - 1) * (b - 1) // 2)
    v = divide_exact(num, 1 - t ** 2)
    return v if tc.epsilon * handedness > 0 else invert_variable(v)


# -- cable rule ------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class GenuineCable:
    """The (pattern) cable on a knotted torus companion: not a torus knot."""
    pattern: tuple[int, int]
    companion: tuple[int, int]

    def __str__(self) -> str:
        return f"cable{self.pattern} on T{self.companion}"


def cable_rule(params: TTKParams) -> TorusClass | GenuineCable | None:
    """
    For r = kq, T(p, q, kq, s) is the (q, p + k^2 q s) cable on T(k, ks + 1).
    When that companion is unknotted the knot is the torus knot
    T(p + k^2 q s, q). For q = 1 the pattern is trivial and the knot is the
    companion itself. Otherwise a :class:`GenuineCable` marker is returned.
    """
    p, q, r, s = params.p, params.q, params.r, params.s
    if r % q:
        return None
    k = r // q
    slope = p + k * k * q * s
    if k == 1 or k * s + 1 in (0, 1, -1):
        return canonical_torus(slope, q)
    if q == 1:
        return canonical_torus(k, k * s + 1)
    return GenuineCable((q, slope), (k, k * s + 1))


# -- family catalog ----------------------------------------------------------------

class SideConditionError(ValueError):
    """A family instance was requested outside its side conditions."""


def _compile(expr: str) -> Callable[..., int]:
    code = compile(expr, f"<formula {expr}>", "eval")
    return lambda **env: int(eval(code, {"__builtins__": {}}, env))


@dataclasses.dataclass(frozen=True)
class Family:
    """
    A parametrized family T(p, q, r, s) = T(a, b). Formulas are strings over the
    family's variables so the catalog can be exported and perturbed in tests.
    """
    ident: str
    variables: tuple[str, ...]
    p: str
    q: str
    r: str
    s: str
    claim_a: str
    claim_b: str
    conditions: tuple[str, ...] = ()

    def __post_init__(self):
        for expr in (*self.formulas().values(), *self.conditions):
            try:
                names = set(compile(expr, "<formula>", "eval").co_names)
            except SyntaxError as exc:
                raise ValueError(f"{self.ident}: bad formula {expr!r}: {exc.msg}") from None
            if not names <= set(self.variables):
                raise ValueError(f"{self.ident}: formula {expr!r} uses unknown names "
                                 f"{sorted(names - set(self.variables))}")

    def formulas(self) -> dict[str, str]:
        return {"p": self.p, "q": self.q, "r": self.r, "s": self.s,
                "a": self.claim_a, "b": self.claim_b}

    def evaluate(self, **env) -> dict[str, int]:
        return {k: _compile(v)(**env) for k, v in self.formulas().items()}

    def failed_condition(self, **env) -> str | None:
        for cond in self.conditions:
            if not _compile(cond)(**env):
                return cond
        return None

    def replace(self, **changes) -> Family:
        return dataclasses.replace(self, **changes)


@dataclasses.dataclass(frozen=True)
class FamilyInstance:
    family: str
    values: tuple[tuple[str, int], ...]
    resolved: TTKParams
    claimed: TorusClass

    @property
    def label(self) -> str:
        args = ",".join(f"{k}={v}" for k, v in self.values)
        return f"{self.family}({args})"


CATALOG: tuple[Family, ...] = (
    Family("T1", ("m", "n"), "m*n+m+1", "m*n+1", "m*n", "-1", "m*n+n+1", "m+1"),
    Family("T2", ("m", "n"), "m*n+m+1", "m*n+1", "m*n+m", "-1", "m*n+m-n", "-m+1"),
    Family("T3", ("m", "n"), "m*n+m+1", "m*n+1", "m*n+2", "-1", "m*n-n+1", "m-1"),
    Family("T4", ("m", "n"), "m*n+m-1", "m*n-1", "m*n+m-2", "-1", "m*n+m-n-2", "-m+1",
           ("m*n >= 2",)),
    Family("T5", ("m", "n"), "m*n+m-1", "m*n-1", "m*n", "-1", "m*n-n-1", "m-1",
           ("m*n >= 2",)),
    Family("T6", ("n",), "2*n+1", "n", "2*n-1", "-1", "2*n-3", "-n+1"),
    Family("T7", ("n",), "3*n-1", "n", "n+1", "-1", "2*n-1", "n-1"),
    Family("T8", ("n",), "3*n+1", "n", "3*n-1", "-1", "3*n-2", "-2*n+1"),
    Family("Guntel", ("q", "k"), "(k+1)*q-1", "q", "q-1", "-1", "k*q+1", "q",
           ("q >= 3", "k >= 2")),
)

MAIN_FAMILIES = tuple(f"T{i}" for i in range(1, 9))
CABLE_FAMILY = "CableReduced"


def catalog_dict(catalog=CATALOG) -> dict[str, Family]:
    return {f.ident: f for f in catalog}


def get_family(ident: str, catalog=CATALOG) -> Family:
    try:
        return catalog_dict(catalog)[ident]
    except KeyError:
        raise KeyError(f"unknown family {ident!r}") from None


def family_instance(family: str | Family, m: int, n: int, catalog=CATALOG) -> FamilyInstance:
    """
    Resolve a family at (m, n). Families in one variable use ``n`` only; the
    Guntel family reads ``(m, n)`` as ``(q, k)``.
    """
    fam = family if isinstance(family, Family) else get_family(family, catalog)
    args = (m, n) if len(fam.variables) == 2 else (n,)
    if min(args) < 1:
        raise SideConditionError(f"{fam.ident}: parameters must be positive")
    env = dict(zip(fam.variables, args))
    failed = fam.failed_condition(**env)
    if failed:
        raise SideConditionError(f"{fam.ident}: {failed} required")
    vals = fam.evaluate(**env)
    params = TTKParams(vals["p"], vals["q"], vals["r"], vals["s"])
    return FamilyInstance(fam.ident, tuple(env.items()), params,
                          canonical_torus(vals["a"], vals["b"]))


def family_instances(family: str | Family, m_max: int, n_max: int,
                     catalog=CATALOG, p_max: int | None = None):
    """
    Every valid instance with variables up to the given ranges (the Guntel
    family reads them as q and k bounds), optionally cut at ``p <= p_max``.
    Yields ``(args, instance_or_error)``: a :class:`SideConditionError` marks an
    intended skip, an :class:`InvalidParameters` a formula that resolves badly.
    """
    fam = family if isinstance(family, Family) else get_family(family, catalog)
    ms = range(1, m_max + 1) if len(fam.variables) == 2 else (1,)
    for m in ms:
        for n in range(1, n_max + 1):
            try:
                inst = family_instance(fam, m, n)
            except (SideConditionError, InvalidParameters) as exc:
                yield (m, n), exc
                continue
            if p_max is not None and inst.resolved.p > p_max:
                continue
            yield (m, n), inst


def instances_up_to(family: str | Family, p_max: int, catalog=CATALOG):
    """All valid instances with resolved ``p <= p_max`` (p grows with every variable)."""
    fam = family if isinstance(family, Family) else get_family(family, catalog)
    out = []
    bound = p_max + 2
    for _, inst in family_instances(fam, bound, bound, catalog, p_max):
        if isinstance(inst, FamilyInstance):
            out.append(inst)
    return out


def export_catalog(catalog=CATALOG) -> list[dict]:
    return [
        {"id": f.ident, "variables": list(f.variables), **f.formulas(),
         "conditions": list(f.conditions)}
        for f in catalog
    ]
