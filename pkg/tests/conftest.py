import json
import random
import sys
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from planenodes import SupportSet, corpus_dir  # noqa: E402

ACCEPTANCE_LINES = []


def simplex_points(d, dim=3):
    return [p for p in product(range(d + 1), repeat=dim) if sum(p) <= d]


def load_corpus():
    items = []
    for path in sorted(corpus_dir().glob("*.json")):
        doc = json.loads(path.read_text())
        items.append((doc["name"], SupportSet(doc["points"])))
    return items


def random_unimodular(rng, k, steps=6, bound=2):
    """Product of random elementary matrices and sign flips."""
    M = [[int(i == j) for j in range(k)] for i in range(k)]
    if k == 1:
        return [[rng.choice((-1, 1))]]
    for _ in range(steps):
        i, j = rng.sample(range(k), 2)
        q = rng.randint(-bound, bound)
        M[i] = [a + q * b for a, b in zip(M[i], M[j])]
    if rng.random() < 0.5:
        r = rng.randrange(k)
        M[r] = [-x for x in M[r]]
    return M


def random_block_transform(rng, n):
    """[[A, 0], [C, B]]: keeps the fiber plane and acts unimodularly on it and
    on the quotient."""
    A = random_unimodular(rng, n)
    B = random_unimodular(rng, 2)
    C = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(2)]
    rows = [A[i] + [0, 0] for i in range(n)]
    rows += [C[i] + B[i] for i in range(2)]
    return rows


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
