"""Exact integer linear algebra on Z^d.

Vectors are tuples of Python ints, matrices are tuples of row tuples.  Nothing
here ever touches floating point.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "INFINITY",
    "is_infinite",
    "smith_normal_form",
    "saturation_basis",
    "lattice_index",
    "ind_v",
    "primitive_part",
    "fiber_scale",
    "SupportSet",
    "rank",
    "det",
    "matmul",
    "identity",
]


class _Infinity:
    """The extended-natural value larger than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("planenodes.INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def is_infinite(value) -> bool:
    return value is INFINITY


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a list of integer row vectors."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                a, b = m[r][c], m[i][c]
                m[i] = [a * x - b * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with nonnegative
    entries ``d_1 | d_2 | ...`` (zeros last).  Works on any rectangular
    integer matrix.
    """
    if not M or not M[0]:
        raise ValueError("smith_normal_form needs a nonempty matrix")
    m, n = len(M), len(M[0])
    D = [list(map(int, r)) for r in M]
    if any(len(r) != n for r in D):
        raise ValueError("matrix is not rectangular")
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, pi, pj = min(rest)
                if pi != t:
                    swap_rows(t, pi)
                else:
                    swap_cols(t, pj)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return (
        tuple(map(tuple, U)),
        tuple(map(tuple, D)),
        tuple(map(tuple, V)),
    )


def saturation_basis(vectors: Sequence[Sequence[int]], dim: int):
    """Smith data of the lattice spanned by ``vectors`` inside Z^dim.

    Returns ``(divisors, V)``.  ``divisors`` are the nonzero Smith divisors
    (so ``len(divisors)`` is the rank) and ``V`` is unimodular such that the
    coordinates ``x @ V`` of any ``x`` in Z^dim split into the first ``rank``
    coordinates (inside the saturation) and the remaining ones (the free
    quotient Z^dim / saturation).  In those coordinates the lattice itself is
    ``d_1 Z + ... + d_r Z``.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors or not any(any(v) for v in vectors):
        return (), tuple(map(tuple, identity(dim)))
    _, D, V = smith_normal_form(vectors)
    divisors = tuple(D[i][i] for i in range(min(len(D), dim)) if D[i][i])
    return divisors, V


def apply_coords(x: Sequence[int], V: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Row vector ``x`` times ``V``."""
    return tuple(sum(a * V[i][j] for i, a in enumerate(x)) for j in range(len(V[0])))


def lattice_index(generators: Iterable[Sequence[int]], ambient_rank: int):
    """Index of the sublattice generated by ``generators`` in Z^ambient_rank.

    Returns ``INFINITY`` when the generators do not span a full-rank lattice.
    """
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(g) != ambient_rank:
            raise ValueError("generator length differs from ambient rank")
    if ambient_rank == 0:
        return 1
    divisors, _ = saturation_basis(gens, ambient_rank)
    if len(divisors) < ambient_rank:
        return INFINITY
    out = 1
    for d in divisors:
        out *= d
    return out


def _vertical_differences(points: Sequence[Sequence[int]], n: int):
    base = points[0]
    return [tuple(p[i] - base[i] for i in range(n)) for p in points[1:]]


def ind_v(points: Sequence[Sequence[int]], n: int):
    """Vertical index: lattice index in Z^n of the fiber-forgetting projections
    of the differences of ``points`` (the last two coordinates are dropped)."""
    points = [tuple(p) for p in points]
    if not points:
        raise ValueError("ind_v needs at least one point")
    if any(len(p) != n + 2 for p in points):
        raise ValueError(f"points must have length n+2={n + 2}")
    return lattice_index(_vertical_differences(points, n), n)


def primitive_part(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero direction")
    return tuple(x // g for x in v)


class SupportSet:
    """Finite point set in Z^(n+2); the last two coordinates are the fiber
    coordinates (y, t).  Points are deduplicated and sorted."""

    __slots__ = ("points", "n")

    def __init__(self, points: Iterable[Sequence[int]], n: int | None = None):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise ValueError("empty support set")
        length = len(pts[0])
        if any(len(p) != length for p in pts):
            raise ValueError("points have different lengths")
        if n is None:
            n = length - 2
        if n < 1 or length != n + 2:
            raise ValueError("points must live in Z^(n+2) with n >= 1")
        self.points = tuple(pts)
        self.n = n

    @property
    def dim(self) -> int:
        return self.n + 2

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return isinstance(other, SupportSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"SupportSet(n={self.n}, points={list(self.points)})"

    def translate(self, v: Sequence[int]) -> "SupportSet":
        return SupportSet([tuple(a + b for a, b in zip(p, v)) for p in self.points], self.n)

    def transform(self, M: Sequence[Sequence[int]]) -> "SupportSet":
        """Image under the linear map ``x -> M x`` (column convention)."""
        return SupportSet(
            [tuple(sum(r[j] * p[j] for j in range(len(p))) for r in M) for p in self.points],
            self.n,
        )


def fiber_scale(A: SupportSet, N: int) -> SupportSet:
    """Multiply the two fiber coordinates of every point by ``N``."""
    if N < 1:
        raise ValueError("scale factor must be >= 1")
    n = A.n
    return SupportSet([p[:n] + (N * p[n], N * p[n + 1]) for p in A.points], n)
