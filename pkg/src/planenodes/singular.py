"""Facet classification, index sequences of facets, and forking-paths
singularity combinatorics (nested boxes, depth of relation, node counts)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .lattice_core import INFINITY, SupportSet, ind_v, is_infinite, primitive_part
from .polytope import Facet, LatticePolytope, convex_hull

__all__ = [
    "FacetClass",
    "IndexSequence",
    "BoxTree",
    "classify_facets",
    "is_horizontal_by_projection",
    "facet_levels",
    "index_sequence",
    "horizontal_index_sequence",
    "nested_boxes",
    "depth_kappa",
    "pairwise_node_count",
    "fps_invariants",
]


@dataclass(frozen=True)
class FacetClass:
    facet_id: int
    horizontal: bool
    projected_normal: tuple[int, int]
    multiplier: int
    direction: tuple[int, int] | None


@dataclass(frozen=True)
class IndexSequence:
    """Index sequence stored up to and including its first 1."""

    values: tuple
    shift_R: int = 0

    @property
    def excess(self) -> int:
        return sum(v - 1 for v in self.values if not is_infinite(v))

    @property
    def first(self):
        return self.values[0] if self.values else 1

    @property
    def finite(self) -> bool:
        return not any(is_infinite(v) for v in self.values)


def classify_facets(A: SupportSet, P: LatticePolytope | None = None) -> list[FacetClass]:
    """Horizontal iff the two fiber components of the outer normal vanish."""
    if P is None:
        P = convex_hull(A.points)
    n = A.n
    out = []
    for k, f in enumerate(P.facets):
        g = (f.normal[n], f.normal[n + 1])
        if g == (0, 0):
            out.append(FacetClass(k, True, g, 0, None))
        else:
            gamma = primitive_part(g)
            m = g[0] // gamma[0] if gamma[0] else g[1] // gamma[1]
            out.append(FacetClass(k, False, g, m, gamma))
    return out


def is_horizontal_by_projection(A: SupportSet, P: LatticePolytope, f: Facet) -> bool:
    """Horizontality read off the projection: the image of the facet lies on
    the boundary of the projected polytope Q."""
    n = A.n
    Q = convex_hull([p[:n] for p in A.points])
    image = [v[:n] for v in P.facet_vertices(f)]
    return any(
        all(sum(a * b for a, b in zip(g.normal, x)) == g.offset for x in image)
        for g in Q.facets
    )


def facet_levels(A: SupportSet, f: Facet) -> dict[int, list[tuple[int, ...]]]:
    """Points of A grouped by lattice distance ``offset - normal . p`` to the facet."""
    levels: dict[int, list[tuple[int, ...]]] = {}
    for p in A.points:
        k = f.offset - sum(a * b for a, b in zip(f.normal, p))
        levels.setdefault(k, []).append(p)
    return levels


def _accumulate(A: SupportSet, f: Facet, start: int):
    """Yield ind_v(B_r) for r = start, start+1, ... until 1 or exhaustion."""
    levels = facet_levels(A, f)
    top = max(levels)
    current = [p for k in sorted(levels) if k < start - 1 for p in levels[k]]
    r = start
    while True:
        current += levels.get(r - 1, [])
        value = ind_v(current, A.n) if current else INFINITY
        yield value
        if value == 1 or r - 1 >= top:
            return
        r += 1


def index_sequence(A: SupportSet, f: Facet) -> IndexSequence:
    """i_r = ind_v of the points within lattice distance r-1 of a non-horizontal
    facet, stored up to the first 1."""
    n = A.n
    if f.normal[n] == 0 and f.normal[n + 1] == 0:
        raise ValueError("facet is horizontal; use horizontal_index_sequence")
    values = tuple(_accumulate(A, f, 1))
    if any(is_infinite(v) for v in values):
        raise ValueError("infinite index on non-horizontal facet")
    return IndexSequence(values, 0)


def horizontal_index_sequence(A: SupportSet, f: Facet) -> IndexSequence:
    """Index sequence of a horizontal facet with its leading run of INFINITY
    removed; ``shift_R`` is the distance to the first nonempty inner level."""
    n = A.n
    if f.normal[n] != 0 or f.normal[n + 1] != 0:
        raise ValueError("facet is not horizontal")
    inner = [k for k in facet_levels(A, f) if k > 0]
    if not inner:
        raise ValueError("no points off the facet")
    R = min(inner)
    return IndexSequence(tuple(_accumulate(A, f, R + 1)), R)


@dataclass(frozen=True)
class BoxTree:
    sequence: tuple[int, ...]
    addresses: dict = field(compare=False)


def _check_sequence(i: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(int(x) for x in i)
    if not seq or seq[0] < 1:
        raise ValueError("sequence must start with a natural number >= 1")
    if any(x < 1 for x in seq):
        raise ValueError("sequence entries must be >= 1")
    if seq[-1] != 1:
        raise ValueError("sequence must stabilize at 1")
    for a, b in zip(seq, seq[1:]):
        if a % b:
            raise ValueError(f"divisibility violated: {b} does not divide {a}")
    # keep everything up to the first 1
    return seq[: seq.index(1) + 1]


def nested_boxes(i: Sequence[int]) -> BoxTree:
    """Addresses of the elements 0..i_1-1 in the i-nested boxes construction.

    Boxes are contiguous blocks and numbered from 1 inside their parent box;
    the first address entry is the single level-0 box.
    """
    seq = _check_sequence(i)
    addresses = {}
    for e in range(seq[0]):
        addr = [1]
        for k in range(1, len(seq)):
            q = seq[k - 1] // seq[k]
            addr.append((e // seq[k]) % q + 1)
        addresses[e] = tuple(addr)
    return BoxTree(seq, addresses)


def depth_kappa(tree: BoxTree, a: int, b: int) -> int:
    """First (1-based) address position where two elements differ."""
    if a == b:
        raise ValueError("identical elements")
    x, y = tree.addresses[a], tree.addresses[b]
    return next(k + 1 for k in range(len(x)) if x[k] != y[k])


def pairwise_node_count(tree: BoxTree) -> int:
    """Nodes of a generic perturbation, counted pair by pair.

    Two branches whose addresses first differ at position kappa meet with
    intersection number kappa - 1 (the leading address entry is the shared
    level-0 box).
    """
    return sum(depth_kappa(tree, a, b) - 1 for a, b in combinations(tree.addresses, 2))


def fps_invariants(i: Sequence[int]) -> tuple[int, int, int]:
    """``(N, chi, delta)`` for the i-forking paths singularity."""
    seq = _check_sequence(i)
    twice = sum(seq[0] * (x - 1) for x in seq)
    N = twice // 2
    return N, seq[0] - 2 * N, N
