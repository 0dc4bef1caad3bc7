"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line with its runtime and limit; the lines
are also collected into the pytest terminal summary.  Run standalone with

    python3 tests/test_acceptance.py
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, load_corpus, random_block_transform, simplex_points  # noqa: E402
from oracles import mixed_area, coset_index  # noqa: E402
from planenodes.collection import Collection, collection_codim, multiplicity_d  # noqa: E402
from planenodes.fiber import fiber_identity_check, fiber_polygon, rotate90  # noqa: E402
from planenodes.lattice_core import INFINITY, SupportSet, fiber_scale, lattice_index  # noqa: E402
from planenodes.nodecount import (  # noqa: E402
    analyze,
    check_assumptions,
    delta_sum_closure,
    delta_sum_punctured,
)
from planenodes.polytope import (  # noqa: E402
    euler_char_ci,
    minkowski_sum,
    normalized_mixed_volume,
    points_volume,
)
from planenodes.singular import depth_kappa, fps_invariants, nested_boxes  # noqa: E402

SLANT_FULL = SupportSet([(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0), (0, 1, 0), (0, 0, 1)])
SLANT_GAP = SupportSet([(0, 0, 0), (1, 0, 0), (3, 0, 0), (0, 1, 0), (0, 0, 1)])
DEVELOPED = SupportSet([(0, 0, 0), (1, 0, 0), (2, 0, 0), (1, 1, 0), (0, 0, 1)])
NONPRIM = SupportSet([(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 0), (2, 0, 0)])
DIRECTIONS = [(1, 0), (0, 1), (1, 1), (1, -1)]


def record(k, title, limit, fn):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"{status} criterion {k}: {title} [{elapsed:.2f}s < {limit}s] {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok and within, line


def criterion_1():
    got, slow = [], []
    for d in range(1, 5):
        t = time.perf_counter()
        got.append(analyze(SupportSet(simplex_points(d))).D_closure)
        if time.perf_counter() - t >= 1:
            slow.append(d)
    return got == [0, 2, 18, 72] and not slow, f"D_closure={got}"


def criterion_2():
    values = [delta_sum_punctured(SLANT_FULL), delta_sum_punctured(SLANT_GAP)]
    seqs = []
    for A in (SLANT_FULL, SLANT_GAP):
        rep = analyze(A)
        seqs.append([r.sequence.values for r in rep.facets if not r.horizontal and r.excess])
    ok = values == [1, 0] and seqs == [[(3, 1)], [(3, 3, 1)]]
    return ok, f"D_punctured={values} sequences={seqs}"


def criterion_3():
    rep = analyze(DEVELOPED)
    verts = set(rep.polygon.vertices)
    ok = (
        rep.norm_volume_delta == 2
        and rep.fiber_area == 6
        and rep.D_closure == 1
        and verts == {(0, 0), (2, 0), (2, 1), (0, 2)}
    )
    return ok, f"vol={rep.norm_volume_delta} area={rep.fiber_area} D={rep.D_closure} P={sorted(verts)}"


def criterion_4():
    before = check_assumptions(NONPRIM)
    after = check_assumptions(fiber_scale(NONPRIM, 2))
    offenders = [g for _, g in before.primitive_offenders]
    base = analyze(NONPRIM).D
    scaled = analyze(fiber_scale(NONPRIM, 2)).D
    law = all(scaled[k] == 4 * v for k, v in base.items() if k in scaled)
    ok = not before.primitive_ok and offenders == [(2, 2)] and after.primitive_ok and law
    return ok, f"primitive {before.primitive_ok}->{after.primitive_ok} offenders={offenders} D={base}->{scaled}"


def _random_sequence(rng):
    seq = [1]
    while True:
        q = rng.choice((2, 2, 3, 4, 5, 7))
        if seq[0] * q > 64 or (len(seq) > 1 and rng.random() < 0.25):
            break
        seq.insert(0, seq[0] * q)
    return tuple(seq)


def criterion_5():
    rng = random.Random(2034)
    bad = []
    literal = 0
    for _ in range(50):
        seq = _random_sequence(rng)
        i1 = seq[0]
        chi_formula = i1 - i1 * sum(x - 1 for x in seq)
        tree = nested_boxes(seq)
        pairs = sum(depth_kappa(tree, a, b) - 1 for a in range(i1) for b in range(a + 1, i1))
        chi_boxes = i1 - 2 * pairs
        # summing kappa itself (not kappa - 1) disagrees whenever i_1 > 1
        literal_pairs = sum(depth_kappa(tree, a, b) for a in range(i1) for b in range(a + 1, i1))
        literal += chi_formula != i1 - 2 * literal_pairs
        if not (chi_formula == chi_boxes == fps_invariants(seq)[1]):
            bad.append(seq)
    return not bad, (
        f"50 sequences, pair term kappa-1, mismatches={bad}; "
        f"with pair term kappa: {literal}/50 mismatch"
    )


WEAKLY_ESSENTIAL = [
    [(0, 0, 0), (1, 0, 0)],
    [(0, 0, 0), (1, 0, 0), (0, 1, 0)],
    [(0, 0, 0), (1, 0, 0), (0, 1, 0)],
    [(0, 0, 0), (1, 0, 0), (0, 0, 1), (0, 1, 0)],
]


def criterion_6():
    C1 = Collection([[(0,), (2,)], [(1,), (3,)]])
    C2 = Collection(WEAKLY_ESSENTIAL)
    got = (multiplicity_d(C1), multiplicity_d(C2), collection_codim(C1), collection_codim(C2))
    return got == (2, 1, 1, 1), f"d={got[:2]} codim={got[2:]}"


def criterion_7():
    bad = []
    corpus = load_corpus()
    for name, A in corpus:
        P = fiber_polygon(A)
        for u in DIRECTIONS:
            lhs, rhs = fiber_identity_check(A, P, u)
            if lhs != rhs:
                bad.append((name, u, lhs, rhs))
    return not bad, f"{len(corpus)} inputs x 4 directions, mismatches={bad}"


def _closure_ok(corpus):
    for _, A in corpus:
        P = fiber_polygon(A)
        sx = sum(length * rotate90(g)[0] for g, length in P.edges)
        sy = sum(length * rotate90(g)[1] for g, length in P.edges)
        if (sx, sy) != (0, 0):
            return False
    return True


def _invariance_ok(corpus, rng):
    for _, A in corpus:
        base = analyze(A).D
        shift = tuple(rng.randint(-4, 4) for _ in range(A.dim))
        if analyze(A.translate(shift)).D != base:
            return False
        for _ in range(20):
            if analyze(A.transform(random_block_transform(rng, A.n))).D != base:
                return False
    return True


def _covering_ok(corpus):
    for _, A in corpus:
        base = delta_sum_closure(A)
        for N in (2, 3):
            if delta_sum_closure(fiber_scale(A, N)) != N * N * base:
                return False
    return True


def _index_ok(rng):
    checked = 0
    while checked < 60:
        n = rng.randint(1, 3)
        gens = [tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(rng.randint(n, n + 2))]
        expected = coset_index(gens, n)
        if expected is None:
            if lattice_index(gens, n) is not INFINITY:
                return False
            continue
        if expected == -1 or expected > 64:
            continue
        if lattice_index(gens, n) != expected:
            return False
        checked += 1
    return True


def _mv_ok(rng):
    def poly():
        return [(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(rng.randint(1, 5))]

    for _ in range(40):
        P, P2, Q = poly(), poly(), poly()
        mv = normalized_mixed_volume([P, Q])
        if mv != normalized_mixed_volume([Q, P]) or mv != mixed_area(P, Q):
            return False
        S = [(a[0] + b[0], a[1] + b[1]) for a in P for b in P2]
        if normalized_mixed_volume([S, Q]) != mv + normalized_mixed_volume([P2, Q]):
            return False
    return True


def _euler_ok(rng):
    def body(dim):
        while True:
            pts = [tuple(rng.randint(0, 2) for _ in range(dim)) for _ in range(rng.randint(dim + 1, dim + 3))]
            if points_volume(pts):
                return pts

    for trial in range(20):
        dim = 2 + trial % 2
        D = body(dim)
        if euler_char_ci([D]) != (-1) ** (dim - 1) * points_volume(D):
            return False
        bodies = [body(dim) for _ in range(dim - 1)]
        total = bodies[0]
        for b in bodies[1:]:
            total = list(minkowski_sum(total, b).vertices)
        if euler_char_ci(bodies) != -normalized_mixed_volume(bodies + [total]):
            return False
    return True


def criterion_8():
    rng = random.Random(8)
    corpus = load_corpus()
    parts = {
        "closure": _closure_ok(corpus),
        "invariance": _invariance_ok(corpus, rng),
        "covering": _covering_ok(corpus),
        "lattice_index": _index_ok(rng),
        "mixed_volume": _mv_ok(rng),
        "euler": _euler_ok(rng),
    }
    return all(parts.values()), " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in parts.items())


CRITERIA = [
    (1, "simplex family D_closure", 4, criterion_1),
    (2, "punctured formula on the slanted pair", 1, criterion_2),
    (3, "developed tetrahedron", 1, criterion_3),
    (4, "primitive check under fiber scaling", 1, criterion_4),
    (5, "forking-paths Euler characteristic", 5, criterion_5),
    (6, "collection multiplicities", 1, criterion_6),
    (7, "fiber-polygon mixed-volume identity", 10, criterion_7),
    (8, "property suites", 60, criterion_8),
]


@pytest.mark.parametrize("k,title,limit,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(k, title, limit, fn):
    ok, line = record(k, title, limit, fn)
    assert ok, line


if __name__ == "__main__":
    results = [record(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
