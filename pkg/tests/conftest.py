import random
import sys

from hypothesis import strategies as st

from advncg.graph import Edge, OwnedMultiGraph, pairs


@st.composite
def owned_multigraphs(draw, min_n=1, max_n=6, cap=2):
    """Random owned multigraph with multiplicities <= cap and random owners."""
    n = draw(st.integers(min_n, max_n))
    edges = []
    for a, b in pairs(n):
        m = draw(st.integers(0, cap))
        for _ in range(m):
            edges.append(Edge(a, b, draw(st.sampled_from((a, b)))))
    return OwnedMultiGraph(n, tuple(edges))


def random_multigraph(rng: random.Random, n: int, cap: int, density=0.6) -> OwnedMultiGraph:
    edges = []
    for a, b in pairs(n):
        if rng.random() < density:
            for _ in range(rng.randint(1, cap)):
                edges.append(Edge(a, b, rng.choice((a, b))))
    return OwnedMultiGraph(n, tuple(edges))


def random_two_edge_connected(rng: random.Random, n: int, cap: int = 2) -> OwnedMultiGraph:
    """Ear-style construction: a Hamiltonian cycle (or doubled edge for n=2) plus random extras."""
    from advncg.graph import is_two_edge_connected

    while True:
        order = list(range(n))
        rng.shuffle(order)
        edges = []
        if n == 2:
            edges = [Edge(0, 1, 0), Edge(0, 1, 1)]
        else:
            for i in range(n):
                a, b = order[i], order[(i + 1) % n]
                edges.append(Edge(min(a, b), max(a, b), a))
        g = OwnedMultiGraph(n, tuple(edges))
        counts = g.pair_counts()
        for a, b in pairs(n):
            if rng.random() < 0.25 and counts.get((a, b), 0) < cap:
                edges.append(Edge(a, b, b))
        g = OwnedMultiGraph(n, tuple(edges))
        if is_two_edge_connected(g):
            return g


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in mod.RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {criterion}: {detail}")
