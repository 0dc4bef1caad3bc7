"""Assumption checks, vertical normalization and the node-count formulas for
the plane projection of a generic complete intersection curve.

Every formula evaluates

    D = (Area(P) - (n+1) Vol(Delta) + horizontal term - excess term) / 2

where P is the fiber polygon and the two last terms run over facets of
Delta = conv(A).  The three variants differ only in those two terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .fiber import ConsistencyError, FiberPolygon, fiber_polygon
from .lattice_core import (
    SupportSet,
    apply_coords,
    ind_v,
    is_infinite,
    saturation_basis,
)
from .polytope import LatticePolytope, convex_hull, euler_char_ci
from .singular import IndexSequence, horizontal_index_sequence, index_sequence

__all__ = [
    "AssumptionError",
    "AssumptionReport",
    "FacetRow",
    "AnalysisReport",
    "FORMULAS",
    "check_assumptions",
    "normalize_vertical",
    "delta_sum_closure",
    "delta_sum_punctured",
    "delta_sum_conjecture",
    "analyze",
]

FORMULAS = ("closure", "punctured", "conjecture")


class AssumptionError(ValueError):
    """A formula's hypotheses fail on the given support set."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass
class AssumptionReport:
    contains_origin: bool
    translated_by: tuple[int, ...]
    ind_v_is_one: bool
    primitive_ok: bool
    primitive_offenders: list = field(default_factory=list)  # (facet id, projection)
    horiz_latt_ok: bool = True
    horiz_latt_offenders: list = field(default_factory=list)
    horizontal_ok: bool = True
    horizontal_offenders: list = field(default_factory=list)
    developed: bool = True

    def as_dict(self) -> dict:
        return {
            "contains_origin": self.contains_origin,
            "ind_v_is_one": self.ind_v_is_one,
            "primitive_ok": self.primitive_ok,
            "primitive_offenders": [
                {"facet": k, "projection": list(g)} for k, g in self.primitive_offenders
            ],
            "horiz_latt_ok": self.horiz_latt_ok,
            "horiz_latt_offenders": list(self.horiz_latt_offenders),
            "horizontal_ok": self.horizontal_ok,
            "horizontal_offenders": list(self.horizontal_offenders),
            "developed": self.developed,
        }


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _is_horizontal(f, n) -> bool:
    return f.normal[n] == 0 and f.normal[n + 1] == 0


def _on_facet(A: SupportSet, f):
    return [p for p in A.points if _dot(f.normal, p) == f.offset]


def _check(A: SupportSet, H: LatticePolytope, origin: bool, shift) -> AssumptionReport:
    n = A.n
    rep = AssumptionReport(origin, tuple(shift), ind_v(A.points, n) == 1, True)
    for k, f in enumerate(H.facets):
        g = (f.normal[n], f.normal[n + 1])
        if g != (0, 0):
            if gcd(*g) != 1:
                rep.primitive_offenders.append((k, g))
            continue
        rep.developed = False
        face = _on_facet(A, f)
        diffs = [tuple(a - b for a, b in zip(p[:n], face[0][:n])) for p in face[1:]]
        divisors, _ = saturation_basis(diffs, n)
        if any(d != 1 for d in divisors):
            rep.horiz_latt_offenders.append(k)
        if not any(f.offset - _dot(f.normal, p) == 1 for p in A.points):
            rep.horizontal_offenders.append(k)
    rep.primitive_ok = not rep.primitive_offenders
    rep.horiz_latt_ok = not rep.horiz_latt_offenders
    rep.horizontal_ok = not rep.horizontal_offenders
    return rep


def _to_origin(A: SupportSet):
    n = A.n
    if (0,) * (n + 2) in A.points:
        return A, True, (0,) * (n + 2)
    shift = tuple(-x for x in A.points[0])
    return A.translate(shift), False, shift


def check_assumptions(A: SupportSet) -> AssumptionReport:
    """Evaluate every checkable hypothesis; never raises on a valid hull."""
    B, origin, shift = _to_origin(A)
    return _check(B, convex_hull(B.points), origin, shift)


def normalize_vertical(A: SupportSet) -> SupportSet:
    """Change the vertical lattice so that ind_v becomes 1.

    The set is moved to contain 0, the projected difference lattice is put in
    Smith form and each adapted coordinate is divided by its divisor.  Fiber
    coordinates are left alone.
    """
    n = A.n
    value = ind_v(A.points, n)
    if is_infinite(value):
        raise ValueError("vertically degenerate support")
    if value == 1:
        return A
    base = A.points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in A.points]
    divisors, V = saturation_basis([d[:n] for d in diffs], n)
    out = []
    for d in diffs:
        x = apply_coords(d[:n], V)
        out.append(tuple(c // q for c, q in zip(x, divisors)) + d[n:])
    return SupportSet(out, n)


@dataclass
class FacetRow:
    facet_id: int
    normal: tuple[int, ...]
    offset: int
    horizontal: bool
    volume: int
    multiplier: int
    contribution: int
    sequence: IndexSequence | None
    problem: str | None = None

    @property
    def excess(self) -> int:
        return self.sequence.excess if self.sequence is not None else 0


@dataclass
class AnalysisReport:
    name: str | None
    n: int
    norm_volume_delta: int
    fiber_area: int
    facets: list[FacetRow]
    D: dict  # formula name -> natural
    blocked: dict  # formula name -> reason
    chi_curve: int
    assumptions: AssumptionReport
    polygon: FiberPolygon
    notes: list[str] = field(default_factory=list)

    @property
    def D_closure(self):
        return self.D.get("closure")

    @property
    def D_punctured(self):
        return self.D.get("punctured")

    @property
    def D_conjecture(self):
        return self.D.get("conjecture")


@dataclass
class _Setup:
    A: SupportSet
    hull: LatticePolytope
    polygon: FiberPolygon
    rows: list[FacetRow]
    report: AssumptionReport
    notes: list[str]


def _prepare(A: SupportSet) -> _Setup:
    notes = []
    B, origin, shift = _to_origin(A)
    if not origin:
        notes.append(f"translated by {list(shift)} so that 0 is in A")
    C = normalize_vertical(B)
    if C is not B:
        notes.append(f"vertical lattice normalized (ind_v was {ind_v(B.points, B.n)})")
    hull = convex_hull(C.points)
    report = _check(C, hull, origin, shift)
    polygon = fiber_polygon(C, hull)
    by_id = {c.facet_id: c for c in polygon.contributions}
    n = C.n
    rows = []
    for k, f in enumerate(hull.facets):
        horiz = _is_horizontal(f, n)
        seq, problem = None, None
        try:
            seq = horizontal_index_sequence(C, f) if horiz else index_sequence(C, f)
        except ValueError as exc:
            problem = str(exc)
        c = by_id.get(k)
        rows.append(FacetRow(
            k, f.normal, f.offset, horiz, f.norm_volume,
            c.multiplier if c else 0, c.contribution if c else 0, seq, problem,
        ))
    return _Setup(C, hull, polygon, rows, report, notes)


def _halve(numerator: int, label: str) -> int:
    if numerator < 0:
        raise ConsistencyError(f"{label}: negative numerator {numerator}")
    if numerator % 2:
        raise ConsistencyError(f"{label}: odd numerator {numerator}")
    return numerator // 2


def _base(s: _Setup) -> int:
    return s.polygon.norm_area - (s.A.n + 1) * s.hull.volume


def _nonhorizontal_excess(s: _Setup) -> int:
    total = 0
    for r in s.rows:
        if r.horizontal:
            continue
        if r.sequence is None:
            raise AssumptionError(f"facet {r.facet_id}: {r.problem}", s.report)
        total += r.volume * r.excess
    return total


def _horizontal_sequences(s: _Setup):
    for r in s.rows:
        if not r.horizontal:
            continue
        if r.sequence is None or not r.sequence.finite:
            raise AssumptionError(
                f"facet {r.facet_id}: infinite index on horizontal facet", s.report
            )
        yield r


def _closure(s: _Setup) -> int:
    horiz = sum(r.volume for r in s.rows if r.horizontal)
    return _halve(_base(s) + horiz - _nonhorizontal_excess(s), "closure formula")


def _require(s: _Setup, names):
    rep = s.report
    missing = [a for a in names if not getattr(rep, a)]
    if missing:
        raise AssumptionError("assumption failed: " + ", ".join(missing), rep)


def _punctured(s: _Setup) -> int:
    _require(s, ("ind_v_is_one", "horiz_latt_ok", "horizontal_ok"))
    rows = list(_horizontal_sequences(s))
    horiz = sum(r.volume for r in rows)
    excess = _nonhorizontal_excess(s) + sum(r.volume * r.excess for r in rows)
    return _halve(_base(s) + horiz - excess, "punctured formula")


def _conjecture(s: _Setup) -> int:
    _require(s, ("ind_v_is_one", "horiz_latt_ok"))
    rows = list(_horizontal_sequences(s))
    horiz = sum(r.volume * (2 * r.sequence.first - r.sequence.first ** 2) for r in rows)
    excess = _nonhorizontal_excess(s) + sum(r.volume * r.excess for r in rows)
    return _halve(_base(s) + horiz - excess, "conjectural formula")


_EVAL = {"closure": _closure, "punctured": _punctured, "conjecture": _conjecture}


def delta_sum_closure(A: SupportSet) -> int:
    """Number of nodes (sum of delta invariants) of the projected closure curve."""
    return _closure(_prepare(A))


def delta_sum_punctured(A: SupportSet) -> int:
    """Node count of the projected curve with the horizontal-facet points removed."""
    return _punctured(_prepare(A))


def delta_sum_conjecture(A: SupportSet) -> int:
    """CONJECTURAL: node count when the lattice-distance-one hypothesis fails."""
    return _conjecture(_prepare(A))


def analyze(A: SupportSet, formulas=FORMULAS, name: str | None = None) -> AnalysisReport:
    s = _prepare(A)
    D, blocked = {}, {}
    for f in formulas:
        try:
            D[f] = _EVAL[f](s)
        except AssumptionError as exc:
            blocked[f] = str(exc)
    if "conjecture" in D:
        s.notes.append("D_conjecture is CONJECTURAL")
    n = s.A.n
    chi = euler_char_ci([s.hull] * (n + 1))
    return AnalysisReport(
        name, n, s.hull.volume, s.polygon.norm_area, s.rows, D, blocked,
        chi, s.report, s.polygon, s.notes,
    )
