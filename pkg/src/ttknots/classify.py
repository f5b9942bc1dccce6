"""
Torus-knot identification from invariants, family verification and the
parameter survey.

Every positive identification is "invariant-certified": the invariants match
those of a torus knot (or the unknot), which is necessary but not a proof.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import functools
import math
import os
from typing import Callable, Iterable, Iterator

from .braid import torus_braid
from .invariants import ConventionError, InvariantSet, alexander, invariant_set, jones
from .invariants.core import DEFAULT_JONES_CEILING, check_consistency
from .laurent import ONE, eval_at_minus_one
from .ttk import (
    CABLE_FAMILY, CATALOG, MAIN_FAMILIES, Family, FamilyInstance, GenuineCable,
    InvalidParameters, SideConditionError, TTKParams, TorusClass, UNKNOT,
    cable_rule, family_instances, get_family, instances_up_to, torus,
    torus_alexander, torus_jones, ttk_braid,
)

WORKERS_ENV = "TTKNOTS_WORKERS"

UNKNOT_CANDIDATE = "UnknotCandidate"
TORUS_CANDIDATE = "TorusCandidate"
NOT_TORUS = "NotTorus"
INCONCLUSIVE = "Inconclusive"

EXPLAINED = "Explained"
UNEXPLAINED = "Unexplained"
NON_TORUS = "NonTorus"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def ordered_map(func: Callable, items: Iterable, workers: int = 1) -> Iterator:
    """``map`` that may fan out over processes but always yields in input order."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        yield from map(func, items)
        return
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(func, items, chunksize=1)


# -- calibration --------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def handedness() -> int:
    """
    +1 if the engine's closure of the positive braid (s_1 s_2)^2 has the
    closed-form Jones polynomial of the positive trefoil, -1 if it has the
    mirror's. Every chirality statement inherits this anchor.
    """
    v = jones(torus_braid(3, 2))
    positive = torus_jones(torus(3, 2, 1))
    if v == positive:
        return 1
    if v == torus_jones(torus(3, 2, -1)):
        return -1
    raise ConventionError(f"trefoil Jones {v} matches neither chirality")


# -- identification ------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class Identification:
    verdict: str
    torus: TorusClass | None = None
    evidence: str = "alexander"
    candidates: tuple[TorusClass, ...] = ()

    @property
    def is_candidate(self) -> bool:
        return self.verdict in (UNKNOT_CANDIDATE, TORUS_CANDIDATE)

    def __str__(self) -> str:
        if self.verdict == TORUS_CANDIDATE:
            return f"{self.verdict}({self.torus}) [{self.evidence}]"
        return f"{self.verdict} [{self.evidence}]"


@functools.lru_cache(maxsize=None)
def factor_pairs(breadth: int) -> tuple[tuple[int, int], ...]:
    """Coprime ``a > b >= 2`` with ``(a-1)(b-1) = breadth``, increasing in ``a``."""
    out = []
    for d in range(1, math.isqrt(breadth) + 1):
        if breadth % d == 0:
            b, a = d + 1, breadth // d + 1
            if a > b and math.gcd(a, b) == 1:
                out.append((a, b))
    return tuple(sorted(out))


@functools.lru_cache(maxsize=4096)
def _alexander_of(a: int, b: int):
    return torus_alexander(torus(a, b, None))


@functools.lru_cache(maxsize=4096)
def _jones_of(a: int, b: int, eps: int, hand: int):
    return torus_jones(torus(a, b, eps), hand)


def identify(inv: InvariantSet, hand: int | None = None) -> Identification:
    if inv.components != 1:
        raise ValueError("identification needs a knot")
    evidence = "alexander" if inv.jones is None else "alexander+jones"
    if inv.alexander == ONE:
        if inv.jones is None or inv.jones == ONE:
            return Identification(UNKNOT_CANDIDATE, UNKNOT, evidence)
        return Identification(NOT_TORUS, None, evidence)
    survivors = [(a, b) for a, b in factor_pairs(inv.alex_breadth)
                 if _alexander_of(a, b) == inv.alexander]
    if not survivors:
        return Identification(NOT_TORUS, None, evidence)
    if inv.jones is None:
        classes = tuple(torus(a, b, None) for a, b in survivors)
        if len(classes) == 1:
            return Identification(TORUS_CANDIDATE, classes[0], evidence, classes)
        return Identification(INCONCLUSIVE, None, evidence, classes)
    hand = handedness() if hand is None else hand
    classes = tuple(torus(a, b, eps) for a, b in survivors for eps in (1, -1)
                    if _jones_of(a, b, eps, hand) == inv.jones)
    if not classes:
        return Identification(NOT_TORUS, None, evidence)
    if len(classes) == 1:
        return Identification(TORUS_CANDIDATE, classes[0], evidence, classes)
    return Identification(INCONCLUSIVE, None, evidence, classes)


def closed_form_invariants(tc: TorusClass, with_jones: bool = True,
                           hand: int | None = None) -> InvariantSet:
    delta = torus_alexander(tc)
    v = None
    if with_jones:
        v = torus_jones(tc, handedness() if hand is None else hand)
    return InvariantSet(delta, v, abs(eval_at_minus_one(delta)), delta.breadth())


# -- family verification ----------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class InstanceResult:
    label: str
    params: TTKParams | None
    claimed: TorusClass | None
    status: str                   # "match", "mismatch", "skipped" or "invalid"
    evidence: str = ""
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("match", "skipped")

    def line(self) -> str:
        parts = [self.status, self.label]
        if self.params is not None:
            parts.append(str(self.params))
        if self.claimed is not None:
            parts.append(f"claimed {self.claimed}")
        if self.evidence:
            parts.append(f"[{self.evidence}]")
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {
            "status": self.status, "instance": self.label,
            "params": None if self.params is None else dataclasses.astuple(self.params),
            "claimed": None if self.claimed is None else str(self.claimed),
            "evidence": self.evidence, "detail": self.detail,
        }


@dataclasses.dataclass(frozen=True)
class FamilyReport:
    family: str
    handedness: int
    results: tuple[InstanceResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def count(self, status: str) -> int:
        return sum(1 for r in self.results if r.status == status)

    def summary(self) -> str:
        return (f"{self.family}: {self.count('match')} match, {self.count('mismatch')} mismatch, "
                f"{self.count('invalid')} invalid, {self.count('skipped')} skipped")


def check_instance(inst: FamilyInstance, jones_ceiling: int = DEFAULT_JONES_CEILING,
                   hand: int | None = None) -> InstanceResult:
    """Compare braid-side invariants of one instance against the claimed closed forms."""
    hand = handedness() if hand is None else hand
    want_jones = inst.resolved.p <= jones_ceiling
    inv = invariant_set(ttk_braid(inst.resolved), want_jones=want_jones, ceiling=jones_ceiling)
    evidence = "alexander+jones" if inv.jones is not None else "alexander"
    problems = []
    if inv.alexander != torus_alexander(inst.claimed):
        problems.append(f"alexander {inv.alexander}")
    if inv.jones is not None and inv.jones != torus_jones(inst.claimed, hand):
        problems.append(f"jones {inv.jones}")
    status = "mismatch" if problems else "match"
    return InstanceResult(inst.label, inst.resolved, inst.claimed, status, evidence,
                          "; ".join(problems))


def _check_packed(args):
    inst, ceiling, hand = args
    return check_instance(inst, ceiling, hand)


def verify_family(family: str | Family, m_max: int, n_max: int,
                  jones_ceiling: int = DEFAULT_JONES_CEILING, p_max: int | None = None,
                  catalog=CATALOG, workers: int = 1) -> FamilyReport:
    """
    Check every in-range instance of a family. Side-condition skips are
    reported, never failures; a formula that resolves to invalid parameters or a
    link is a failure, as is any invariant mismatch.
    """
    fam = family if isinstance(family, Family) else get_family(family, catalog)
    hand = handedness()
    pending = []
    order = []
    for args, item in family_instances(fam, m_max, n_max, catalog, p_max):
        label = f"{fam.ident}({','.join(f'{k}={v}' for k, v in zip(fam.variables, args[-len(fam.variables):]))})"
        if isinstance(item, SideConditionError):
            order.append(InstanceResult(label, None, None, "skipped", detail=str(item)))
        elif isinstance(item, InvalidParameters):
            order.append(InstanceResult(label, None, None, "invalid", detail=str(item)))
        else:
            order.append(None)
            pending.append(item)
    checked = iter(ordered_map(_check_packed, [(i, jones_ceiling, hand) for i in pending], workers))
    results = tuple(r if r is not None else next(checked) for r in order)
    return FamilyReport(fam.ident, hand, results)


def verify_families(families: Iterable[str], m_max: int, n_max: int,
                    jones_ceiling: int = DEFAULT_JONES_CEILING, p_max: int | None = None,
                    catalog=CATALOG, workers: int = 1) -> list[FamilyReport]:
    return [verify_family(f, m_max, n_max, jones_ceiling, p_max, catalog, workers)
            for f in families]


# -- survey ----------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SurveyRow:
    params: TTKParams
    identification: Identification
    catalog_match: str | None
    status: str
    invariants: InvariantSet | None = None

    CSV_HEADER = ("p", "q", "r", "s", "verdict", "a", "b", "epsilon", "evidence", "family", "status")

    def csv_fields(self) -> list:
        ident = self.identification
        tc = ident.torus
        a = b = eps = ""
        if tc is not None and not tc.is_unknot:
            a, b = tc.a, tc.b
            eps = "undetermined" if tc.epsilon is None else tc.epsilon
        p = self.params
        return [p.p, p.q, p.r, p.s, ident.verdict, a, b, eps, ident.evidence,
                self.catalog_match or "", self.status]

    def to_dict(self) -> dict:
        d = dict(zip(self.CSV_HEADER, self.csv_fields()))
        if self.invariants is not None:
            d["invariants"] = self.invariants.to_dict()
        return d


def survey_grid(p_max: int) -> list[TTKParams]:
    """All (p, q, r) with gcd(p,q)=1, 1 <= q < p <= p_max, 2 <= r <= p and s = -1."""
    return [TTKParams(p, q, r, -1)
            for p in range(2, p_max + 1)
            for q in range(1, p) if math.gcd(p, q) == 1
            for r in range(2, p + 1)]


def catalog_index(p_max: int, catalog=CATALOG) -> dict[TTKParams, list[FamilyInstance]]:
    index: dict[TTKParams, list[FamilyInstance]] = {}
    for fam in catalog:
        for inst in instances_up_to(fam, p_max, catalog):
            index.setdefault(inst.resolved, []).append(inst)
    return index


def _explanations(params: TTKParams, index) -> list[tuple[str, TorusClass]]:
    out = [(inst.label, inst.claimed) for inst in index.get(params, [])]
    cable = cable_rule(params)
    if isinstance(cable, TorusClass):
        out.append((f"{CABLE_FAMILY}(k={params.r // params.q})", cable))
    return out


def _matches(ident: Identification, claimed: TorusClass) -> bool:
    if ident.verdict == UNKNOT_CANDIDATE:
        return claimed.is_unknot
    if ident.verdict != TORUS_CANDIDATE or claimed.is_unknot:
        return False
    if ident.torus.epsilon is None:
        return ident.torus == claimed.without_chirality()
    return ident.torus == claimed


def classify_params(params: TTKParams, jones_ceiling: int = DEFAULT_JONES_CEILING,
                    jones_policy: str = "candidates", hand: int | None = None):
    """
    Invariants and identification of one grid point. With ``jones_policy``
    "candidates", Jones is computed only when Alexander already matches a torus
    knot or the unknot (Jones cannot rescue a failed Alexander match); "all"
    computes it for every row within the ceiling.
    """
    hand = handedness() if hand is None else hand
    word = ttk_braid(params)
    delta = alexander(word)
    inv = InvariantSet(delta, None, abs(eval_at_minus_one(delta)), delta.breadth())
    ident = identify(inv, hand)
    within = params.p <= jones_ceiling
    if within and (jones_policy == "all" or ident.verdict != NOT_TORUS):
        inv = dataclasses.replace(inv, jones=jones(word, jones_ceiling))
        check_consistency(inv)
        ident = identify(inv, hand)
    elif not within:
        inv = dataclasses.replace(inv, jones_skipped=True)
    return inv, ident


def _classify_packed(args):
    return classify_params(*args)


def survey(p_max: int, jones_ceiling: int = DEFAULT_JONES_CEILING,
           jones_policy: str = "candidates", catalog=CATALOG,
           workers: int = 1, grid: Iterable[TTKParams] | None = None) -> Iterator[SurveyRow]:
    """Stream survey rows in sorted parameter order."""
    if p_max < 3:
        raise ValueError("survey needs p_max >= 3")
    if jones_policy not in ("candidates", "all"):
        raise ValueError(f"unknown jones policy {jones_policy!r}")
    hand = handedness()
    index = catalog_index(p_max, catalog)
    points = sorted(survey_grid(p_max) if grid is None else grid)
    jobs = [(pt, jones_ceiling, jones_policy, hand) for pt in points]
    for params, (inv, ident) in zip(points, ordered_map(_classify_packed, jobs, workers)):
        yield make_row(params, inv, ident, index)


def make_row(params: TTKParams, inv: InvariantSet, ident: Identification, index) -> SurveyRow:
    if ident.verdict == NOT_TORUS:
        explained = [label for label, _ in _explanations(params, index)]
        return SurveyRow(params, ident, ";".join(explained) or None, NON_TORUS, inv)
    hits = [label for label, claimed in _explanations(params, index) if _matches(ident, claimed)]
    if hits:
        return SurveyRow(params, ident, ";".join(hits), EXPLAINED, inv)
    return SurveyRow(params, ident, None, UNEXPLAINED, inv)


def summarize(rows: Iterable[SurveyRow]) -> dict[str, int]:
    counts = {EXPLAINED: 0, UNEXPLAINED: 0, NON_TORUS: 0}
    for row in rows:
        counts[row.status] += 1
    return counts


__all__ = [
    "Identification", "SurveyRow", "FamilyReport", "InstanceResult",
    "handedness", "identify", "verify_family", "verify_families", "survey",
    "survey_grid", "classify_params", "summarize", "closed_form_invariants",
    "factor_pairs", "MAIN_FAMILIES", "GenuineCable",
]
