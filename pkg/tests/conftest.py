import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from zzreps.simplicial import SimplicialComplex, all_faces


def full_triangle():
    return SimplicialComplex(all_faces([(0, 1, 2)]))


def hollow_triangle():
    return SimplicialComplex(all_faces([(0, 1), (1, 2), (0, 2)]))


def cycle_graph(n):
    edges = [tuple(sorted((i, (i + 1) % n))) for i in range(n)]
    return SimplicialComplex([(i,) for i in range(n)] + edges), edges


def random_complex(rng: random.Random, n_vertices=6, p_edge=0.5, p_tri=0.5):
    """Random face-closed complex of dimension <= 2 (triangles only where all edges exist)."""
    K = SimplicialComplex([(v,) for v in range(n_vertices)])
    for e in combinations(range(n_vertices), 2):
        if rng.random() < p_edge:
            K.add(e)
    for t in combinations(range(n_vertices), 3):
        if all(f in K for f in combinations(t, 2)) and rng.random() < p_tri:
            K.add(t)
    return K


@st.composite
def complexes(draw, max_vertices=6):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_vertices))
    p_edge = draw(st.floats(0.1, 0.9))
    p_tri = draw(st.floats(0.0, 1.0))
    return random_complex(random.Random(seed), n, p_edge, p_tri)


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
