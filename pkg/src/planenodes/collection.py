"""Combinatorics of collections of finite sets: codimension, the essential
subcollection, quotient collections and the fiber multiplicity d(A)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .lattice_core import apply_coords, rank, saturation_basis
from .polytope import normalized_mixed_volume

Point = tuple[int, ...]


class Collection:
    """A tuple of nonempty finite sets in a common lattice Z^m."""

    def __init__(self, sets: Sequence[Sequence[Sequence[int]]], m: int | None = None):
        self.sets = tuple(tuple(sorted({tuple(int(x) for x in p) for p in s})) for s in sets)
        if any(not s for s in self.sets):
            raise ValueError("collection members must be nonempty")
        if m is None:
            if not self.sets:
                raise ValueError("ambient rank required for an empty collection")
            m = len(self.sets[0][0])
        if any(len(p) != m for s in self.sets for p in s):
            raise ValueError("all points must live in Z^m")
        self.m = m

    def __len__(self):
        return len(self.sets)

    def sub(self, indices) -> "Collection":
        return Collection([self.sets[i] for i in indices], self.m)


@dataclass(frozen=True)
class MultiplicityResult:
    essential_indices: tuple[int, ...]
    codim: int
    lattice_index: int
    quotient_sets: tuple[tuple[Point, ...], ...]
    d: int


def _differences(sets) -> list[Point]:
    out = []
    for s in sets:
        base = s[0]
        out.extend(tuple(a - b for a, b in zip(p, base)) for p in s[1:])
    return out


def _codim_of(sets, m: int) -> int:
    if not sets:
        return 0
    # dim of the Minkowski sum = rank of all within-set differences together
    return len(sets) - rank(_differences(sets))


def collection_codim(C: Collection) -> int:
    return _codim_of(C.sets, C.m)


def _all_codims(C: Collection) -> dict[tuple[int, ...], int]:
    I = len(C)
    return {
        sub: _codim_of([C.sets[i] for i in sub], C.m)
        for k in range(I + 1)
        for sub in combinations(range(I), k)
    }


def essential_subcollection(C: Collection) -> tuple[int, ...]:
    """Indices of the unique essential subcollection of maximal codimension.

    Exhaustive over all subcollections.  The empty subcollection is returned
    when no nonempty subcollection has positive codimension.
    """
    codims = _all_codims(C)
    best = max(codims.values())
    for sub, c in sorted(codims.items(), key=lambda kv: (len(kv[0]), kv[0])):
        if c != best:
            continue
        proper = [codims[s] for k in range(len(sub)) for s in combinations(sub, k)]
        if all(c > x for x in proper):
            return sub
    raise AssertionError("no essential subcollection found")  # a unique one always exists


def quotient_collection(C: Collection, sub: Sequence[int]):
    """Images of the sets outside ``sub`` in Z^m / L', plus ``|L'/L|``.

    ``L`` is generated by the within-set differences of the selected sets and
    ``L'`` is its saturation.
    """
    sub = tuple(sorted(set(sub)))
    if any(i < 0 or i >= len(C) for i in sub):
        raise IndexError("subcollection index out of range")
    rest = [C.sets[i] for i in range(len(C)) if i not in sub]
    divisors, V = saturation_basis(_differences([C.sets[i] for i in sub]), C.m)
    r = len(divisors)
    index = 1
    for d in divisors:
        index *= d
    quotient = tuple(
        tuple(sorted({apply_coords(p, V)[r:] for p in s})) for s in rest
    )
    return quotient, index


def _in_own_lattice(sets: Sequence[Sequence[Point]]) -> list[list[Point]]:
    """Translate every set to contain 0 and re-express all of them in a basis
    of the saturated lattice of their common linear span."""
    shifted = [[tuple(a - b for a, b in zip(p, s[0])) for p in s] for s in sets]
    dim = len(shifted[0][0])
    divisors, V = saturation_basis([p for s in shifted for p in s], dim)
    r = len(divisors)
    return [[apply_coords(p, V)[:r] for p in s] for s in shifted]


def multiplicity(C: Collection) -> MultiplicityResult:
    codims = _all_codims(C)
    top = codims[tuple(range(len(C)))]
    if any(c > top for c in codims.values()):
        raise ValueError("not weakly essential")
    ess = essential_subcollection(C)
    quotient, index = quotient_collection(C, ess)
    if quotient:
        flat = _in_own_lattice(quotient)
        if len(flat[0][0]) != len(flat):
            raise AssertionError("quotient collection has the wrong dimension")
        mv = normalized_mixed_volume(flat)
    else:
        mv = 1
    return MultiplicityResult(ess, top, index, quotient, index * mv)


def multiplicity_d(C: Collection) -> int:
    """Number of shifted subtori in a generic fiber (see :func:`multiplicity`)."""
    return multiplicity(C).d
