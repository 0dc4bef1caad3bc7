"""Lattice polytopes: exact hulls, facets, normalized volumes, mixed volumes.

Volumes are lattice-normalized throughout: the standard unit simplex in R^d
has volume 1, i.e. ``norm_volume = d! * euclidean volume``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import factorial
from typing import Iterable, Sequence, Union

from .lattice_core import apply_coords, det, primitive_part, rank, saturation_basis

__all__ = [
    "Facet",
    "LatticePolytope",
    "DegenerateError",
    "convex_hull",
    "norm_volume",
    "norm_volume_by_pyramids",
    "facet_norm_volume",
    "minkowski_sum",
    "normalized_mixed_volume",
    "euler_char_ci",
    "points_volume",
]


class DegenerateError(ValueError):
    """The point set does not affinely span its ambient space."""


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: int
    vertex_ids: tuple[int, ...]
    norm_volume: int


@dataclass(frozen=True)
class LatticePolytope:
    dim: int
    vertices: tuple[tuple[int, ...], ...]
    facets: tuple[Facet, ...]
    volume: int

    def facet_vertices(self, f: Facet) -> list[tuple[int, ...]]:
        return [self.vertices[i] for i in f.vertex_ids]


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def _normal_of(diffs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Generalized cross product of d-1 vectors in Z^d (primitive)."""
    d = len(diffs) + 1
    normal = []
    for i in range(d):
        minor = [[row[j] for j in range(d) if j != i] for row in diffs]
        normal.append((-1) ** i * det(minor))
    return primitive_part(normal)


def _initial_simplex(points: Sequence[tuple[int, ...]]) -> list[int]:
    d = len(points[0])
    chosen = [0]
    diffs: list[tuple[int, ...]] = []
    for i in range(1, len(points)):
        trial = diffs + [_sub(points[i], points[0])]
        if rank(trial) == len(trial):
            chosen.append(i)
            diffs = trial
            if len(diffs) == d:
                return chosen
    raise DegenerateError("degenerate support set")


def _placing(points: Sequence[tuple[int, ...]]):
    """Placing triangulation of ``points`` (d >= 2).

    Returns ``(volume, boundary)`` where ``volume`` is the normalized volume and
    ``boundary`` maps each boundary (d-1)-simplex (sorted index tuple) to its
    primitive outer normal and offset.
    """
    d = len(points[0])
    base = _initial_simplex(points)
    # (d+1) * interior reference point, strictly inside the initial simplex
    ref = tuple(sum(points[i][k] for i in base) for k in range(d))

    def oriented(face):
        q0 = points[face[0]]
        normal = _normal_of([_sub(points[j], q0) for j in face[1:]])
        offset = _dot(normal, q0)
        if _dot(normal, ref) > (d + 1) * offset:
            normal = tuple(-x for x in normal)
            offset = -offset
        return normal, offset

    volume = abs(det([_sub(points[j], points[base[0]]) for j in base[1:]]))
    boundary = {}
    for face in combinations(sorted(base), d):
        boundary[face] = oriented(face)
    in_base = set(base)
    for idx, p in enumerate(points):
        if idx in in_base:
            continue
        visible = [f for f, (nrm, off) in boundary.items() if _dot(nrm, p) > off]
        if not visible:
            continue
        ridge_count: dict[tuple[int, ...], int] = {}
        for f in visible:
            volume += abs(det([_sub(points[j], p) for j in f]))
            for r in combinations(f, d - 1):
                ridge_count[r] = ridge_count.get(r, 0) + 1
            del boundary[f]
        for r, c in ridge_count.items():
            if c == 1:
                face = tuple(sorted(r + (idx,)))
                boundary[face] = oriented(face)
    return volume, boundary


def points_volume(points: Iterable[Sequence[int]]) -> int:
    """Normalized volume of conv(points); 0 when not full-dimensional."""
    pts = sorted({tuple(p) for p in points})
    if not pts:
        return 0
    d = len(pts[0])
    if d == 0:
        return 1
    if d == 1:
        return pts[-1][0] - pts[0][0]
    try:
        volume, _ = _placing(pts)
    except DegenerateError:
        return 0
    return volume


def _flatten(points: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Coordinates of an affine point set in the saturated lattice of its own
    affine span (a unimodular flattening)."""
    p0 = points[0]
    diffs = [_sub(p, p0) for p in points]
    divisors, V = saturation_basis(diffs, len(p0))
    r = len(divisors)
    return [apply_coords(v, V)[:r] for v in diffs]


def _intrinsic_volume(points: Sequence[Sequence[int]]) -> int:
    return points_volume(_flatten(points))


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Exact hull of a full-dimensional lattice point set.

    Vertices are sorted lexicographically, facets by normal.  Raises
    :class:`DegenerateError` when the points are not full-dimensional.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise DegenerateError("degenerate support set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise ValueError("points have different lengths")
    if d == 0:
        raise DegenerateError("degenerate support set")
    if d == 1:
        lo, hi = pts[0], pts[-1]
        if lo == hi:
            raise DegenerateError("degenerate support set")
        facets = (Facet((-1,), -lo[0], (0,), 1), Facet((1,), hi[0], (1,), 1))
        return LatticePolytope(1, (lo, hi), facets, hi[0] - lo[0])
    if len(pts) < d + 1:
        raise DegenerateError("degenerate support set")

    volume, boundary = _placing(pts)
    hyperplanes = sorted(set(boundary.values()))
    # a point is a vertex iff the normals of the facets through it have rank d
    used = sorted({i for face in boundary for i in face})
    vertices = []
    for i in used:
        through = [nrm for nrm, off in hyperplanes if _dot(nrm, pts[i]) == off]
        if rank(through) == d:
            vertices.append(pts[i])
    vertices.sort()
    facets = []
    for nrm, off in hyperplanes:
        ids = tuple(k for k, v in enumerate(vertices) if _dot(nrm, v) == off)
        vol = _intrinsic_volume([vertices[k] for k in ids])
        facets.append(Facet(nrm, off, ids, vol))
    return LatticePolytope(d, tuple(vertices), tuple(facets), volume)


def norm_volume(P: LatticePolytope) -> int:
    return P.volume


def norm_volume_by_pyramids(P: LatticePolytope) -> int:
    """Second volume path: sum of lattice pyramids from the first vertex over
    every facet (lattice height times intrinsic facet volume)."""
    apex = P.vertices[0]
    return sum((f.offset - _dot(f.normal, apex)) * f.norm_volume for f in P.facets)


def facet_norm_volume(P: LatticePolytope, f: Facet) -> int:
    """Normalized (d-1)-volume of a facet in the lattice of its hyperplane."""
    return _intrinsic_volume(P.facet_vertices(f))


Body = Union[LatticePolytope, Sequence[Sequence[int]]]


def _body_points(body: Body) -> list[tuple[int, ...]]:
    if isinstance(body, LatticePolytope):
        return list(body.vertices)
    return sorted({tuple(int(x) for x in p) for p in body})


def _prune(points: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Drop points that are not vertices of their hull (keeps sums small)."""
    try:
        return list(convex_hull(points).vertices)
    except DegenerateError:
        return points


def _sum_points(a, b) -> list[tuple[int, ...]]:
    return sorted({tuple(x + y for x, y in zip(p, q)) for p in a for q in b})


def minkowski_sum(P: Body, Q: Body) -> LatticePolytope:
    a, b = _body_points(P), _body_points(Q)
    if len(a[0]) != len(b[0]):
        raise ValueError("dimension mismatch in Minkowski sum")
    return convex_hull(_sum_points(a, b))


def normalized_mixed_volume(bodies: Sequence[Body]) -> int:
    """Normalized mixed volume of d bodies in R^d.

    Normalized so that ``NMV(P, ..., P) == norm_volume(P)``; computed by
    inclusion-exclusion over all partial Minkowski sums (lower-dimensional
    sums contribute 0).
    """
    point_sets = [_body_points(b) for b in bodies]
    if not point_sets:
        raise ValueError("wrong arity: need d bodies in R^d")
    d = len(point_sets[0][0])
    if len(point_sets) != d or any(len(s[0]) != d for s in point_sets):
        raise ValueError(f"wrong arity: need exactly {d} bodies in R^{d}")
    # identical bodies collapse to multiplicities so the sums can be cached
    distinct: list[list[tuple[int, ...]]] = []
    counts: list[int] = []
    for s in point_sets:
        for k, t in enumerate(distinct):
            if t == s:
                counts[k] += 1
                break
        else:
            distinct.append(s)
            counts.append(1)

    distinct = [_prune(s) for s in distinct]
    if len(distinct) == 1:
        return points_volume(distinct[0])

    # c_1 P_1 + ... + c_k P_k, built from the scaled bodies; sums over a
    # prefix of the bodies are cached
    sums: dict[tuple[int, ...], list[tuple[int, ...]]] = {}

    def sum_for(c: tuple[int, ...]):
        if c in sums:
            return sums[c]
        k = max(i for i, x in enumerate(c) if x)
        scaled = [tuple(c[k] * x for x in p) for p in distinct[k]]
        head = c[:k] + (0,) * (len(c) - k)
        pts = scaled if not any(head) else _prune(_sum_points(sum_for(head), scaled))
        sums[c] = pts
        return pts

    total = 0
    for c in product(*(range(x + 1) for x in counts)):
        size = sum(c)
        if size == 0:
            continue
        ways = 1
        for ci, ni in zip(c, counts):
            ways *= factorial(ni) // (factorial(ci) * factorial(ni - ci))
        vol = points_volume(sum_for(c))
        total += (-1) ** (d - size) * ways * vol
    value, rem = divmod(total, factorial(d))
    if rem:
        raise ArithmeticError("mixed volume is not integral")
    return value


def _compositions(total: int, parts: int):
    """Tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def euler_char_ci(bodies: Sequence[Body]) -> int:
    """Euler characteristic of a generic complete intersection in the torus.

    Expands ``prod x_i (1 + x_i)^(-1)`` and evaluates each degree-m monomial
    ``x_1^e_1 ... x_k^e_k`` as the normalized mixed volume with body ``i``
    repeated ``e_i`` times.
    """
    point_sets = [_body_points(b) for b in bodies]
    k = len(point_sets)
    if k < 1:
        raise ValueError("need at least one body")
    m = len(point_sets[0][0])
    if k > m:
        raise ValueError("overdetermined tuple")
    # every exponent is >= 1, so each monomial carries the sign (-1)^(m-k)
    total = 0
    for exps in _compositions(m, k):
        tup = [s for s, e in zip(point_sets, exps) for _ in range(e)]
        total += normalized_mixed_volume(tup)
    return (-1) ** (m - k) * total

