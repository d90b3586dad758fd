import random

import pytest
from hypothesis import strategies as st

from zkauth.graphs import Graph, Permutation


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


@st.composite
def permutations(draw, n):
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def graph_and_perms(draw, count=1, max_n=10):
    g = draw(graphs(max_n=max_n))
    return (g, *[draw(permutations(g.n)) for _ in range(count)])


@pytest.fixture
def rng():
    return random.Random(1234)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
