"""The fiber polygon P of a support set under the projection onto its last two
coordinates, and a mixed-volume identity used as an independent check."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Sequence

from .lattice_core import SupportSet
from .polytope import LatticePolytope, convex_hull, normalized_mixed_volume
from .singular import classify_facets

__all__ = [
    "ConsistencyError",
    "FacetContribution",
    "FiberPolygon",
    "fiber_polygon",
    "fiber_identity_check",
    "rotate90",
]


class ConsistencyError(ArithmeticError):
    """An internal identity failed (closure, parity, sign)."""


@dataclass(frozen=True)
class FacetContribution:
    facet_id: int
    gamma: tuple[int, int]
    multiplier: int
    contribution: int


@dataclass(frozen=True)
class FiberPolygon:
    edges: tuple[tuple[tuple[int, int], int], ...]
    vertices: tuple[tuple[int, int], ...]
    norm_area: int
    contributions: tuple[FacetContribution, ...] = ()


def rotate90(v: Sequence[int]) -> tuple[int, int]:
    return (-v[1], v[0])


def _half(v) -> int:
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _twice_area(vertices) -> int:
    s = 0
    k = len(vertices)
    for i in range(k):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % k]
        s += x0 * y1 - x1 * y0
    return s


def fiber_polygon(A: SupportSet, P: LatticePolytope | None = None) -> FiberPolygon:
    """Assemble P from the edge data of the non-horizontal facets of conv(A).

    A facet with outer normal whose fiber part is ``m * gamma`` (gamma
    primitive) adds ``m * facet volume`` to the edge with outer normal gamma.
    """
    if P is None:
        P = convex_hull(A.points)
    classes = classify_facets(A, P)
    contribs = []
    lengths: dict[tuple[int, int], int] = {}
    for cls in classes:
        if cls.horizontal:
            continue
        f = P.facets[cls.facet_id]
        c = cls.multiplier * f.norm_volume
        contribs.append(FacetContribution(cls.facet_id, cls.direction, cls.multiplier, c))
        lengths[cls.direction] = lengths.get(cls.direction, 0) + c
    if not lengths:
        raise ValueError("projection degenerate")

    # edge vector of an edge with outer normal gamma runs along rotate90(gamma)
    order = sorted(lengths, key=lambda g: cmp_to_key(_angle_cmp)(rotate90(g)))
    chain = [(0, 0)]
    for g in order:
        ex, ey = rotate90(g)
        x, y = chain[-1]
        chain.append((x + lengths[g] * ex, y + lengths[g] * ey))
    if chain.pop() != (0, 0):
        raise ConsistencyError("fiber polygon does not close")

    start = min(range(len(chain)), key=lambda k: chain[k])
    ox, oy = chain[start]
    vertices = [(x - ox, y - oy) for x, y in chain[start:] + chain[:start]]
    edges = [(g, lengths[g]) for g in order[start:] + order[:start]]
    area = _twice_area(vertices)
    if area <= 0:
        raise ConsistencyError("fiber polygon has non-positive area")
    return FiberPolygon(tuple(edges), tuple(vertices), area, tuple(contribs))


def fiber_identity_check(A: SupportSet, P: FiberPolygon, u: Sequence[int]) -> tuple[int, int]:
    """Both sides of MV(P, [0,u]) = MV(Delta, ..., Delta, [0, lift(u)])."""
    u = (int(u[0]), int(u[1]))
    if u == (0, 0):
        raise ValueError("u must be nonzero")
    n = A.n
    lhs = normalized_mixed_volume([list(P.vertices), [(0, 0), u]])
    hull = convex_hull(A.points)
    seg = [(0,) * (n + 2), (0,) * n + u]
    rhs = normalized_mixed_volume([hull] * (n + 1) + [seg])
    return lhs, rhs
