import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from advncg.errors import CapExceededError, InvalidGraphError, InvalidTargetError, ParseError
from advncg.extcost import INF
from advncg.families import build_family
from advncg.graph import (OwnedMultiGraph, all_owned_states, build_from_strategies,
                          canonical_key, diameter, distances_from, format_graph, graph_distance,
                          is_connected, is_two_edge_connected, key_digest, parse_graph,
                          read_graph, strategies_of, write_graph)
from advncg.structure import bridges

from conftest import owned_multigraphs, random_multigraph


def test_empty_strategies_give_empty_graph():
    g = build_from_strategies(2, [(), ()])
    assert g.m == 0


def test_everyone_buys_everything_is_double_clique():
    g = build_from_strategies(3, [(1, 2), (0, 2), (0, 1)])
    assert g.m == 6
    assert all(len(g.strategy(u)) == 2 for u in range(3))
    assert canonical_key(g) == canonical_key(build_family("dg3"))


def test_cap_exceeded():
    with pytest.raises(CapExceededError):
        build_from_strategies(2, [(1, 1), (0,)], cap=2)
    # cap 3 admits it
    assert build_from_strategies(2, [(1, 1), (0,)], cap=3).m == 3


@pytest.mark.parametrize("strategies", [[(0,), ()], [(5,), ()], [(), (-1,)]])
def test_invalid_targets(strategies):
    with pytest.raises(InvalidTargetError):
        build_from_strategies(2, strategies)


def test_owner_must_be_endpoint():
    with pytest.raises(InvalidGraphError):
        OwnedMultiGraph(3, ((0, 1, 2),))


@st.composite
def strategy_vectors(draw):
    n = draw(st.integers(1, 6))
    cap = draw(st.integers(1, 3))
    room = {}
    s = []
    for u in range(n):
        targets = []
        for v in range(n):
            if v == u:
                continue
            p = (min(u, v), max(u, v))
            k = draw(st.integers(0, cap - room.get(p, 0)))
            room[p] = room.get(p, 0) + k
            targets += [v] * k
        s.append(tuple(targets))
    return n, tuple(s), cap


@given(strategy_vectors())
def test_strategy_round_trip(data):
    n, s, cap = data
    g = build_from_strategies(n, s, cap)
    assert strategies_of(g) == s
    assert g.m == sum(len(x) for x in s)


def test_distances_examples():
    c4 = build_family("c4")
    assert graph_distance(c4, 0, 2) == 2
    dg3 = build_family("dg3")
    assert all(graph_distance(dg3, u, v) == 1 for u in range(3) for v in range(3) if u != v)
    assert graph_distance(OwnedMultiGraph(2, ()), 0, 1) == INF
    assert graph_distance(c4, 3, 3) == 0


@settings(max_examples=150)
@given(owned_multigraphs(max_n=8))
def test_distance_is_a_metric_on_components(g):
    d = [distances_from(g, u) for u in range(g.n)]
    for u in range(g.n):
        for v in range(g.n):
            assert d[u][v] == d[v][u]
            for w in range(g.n):
                if d[u][v] != INF and d[v][w] != INF:
                    assert d[u][w] <= d[u][v] + d[v][w]


def test_parallel_edges_do_not_shorten_paths():
    g = build_family("double-path4")
    assert graph_distance(g, 0, 3) == 3


def test_two_edge_connected_examples():
    assert is_two_edge_connected(build_family("c4"))
    assert not is_two_edge_connected(build_family("path3"))
    assert is_two_edge_connected(build_family("ds4"))


@settings(max_examples=200)
@given(owned_multigraphs(max_n=7))
def test_two_edge_connected_matches_bridges(g):
    assert is_two_edge_connected(g) == (is_connected(g) and not bridges(g))


def test_canonical_key_examples():
    a = OwnedMultiGraph(3, ((0, 1, 0), (1, 2, 2)))
    b = OwnedMultiGraph(3, ((2, 1, 2), (1, 0, 0)))
    assert canonical_key(a) == canonical_key(b)
    assert canonical_key(OwnedMultiGraph(2, ((0, 1, 0),))) != canonical_key(OwnedMultiGraph(2, ((0, 1, 1),)))
    dg3 = build_family("dg3")
    assert canonical_key(dg3) != canonical_key(dg3.without_edge(0))
    assert len(key_digest(canonical_key(dg3))) == 12


@given(owned_multigraphs(), st.randoms(use_true_random=False))
def test_canonical_key_is_order_insensitive(g, rnd):
    edges = list(g.edges)
    rnd.shuffle(edges)
    assert canonical_key(OwnedMultiGraph(g.n, tuple(edges))) == canonical_key(g)


def test_file_round_trip(tmp_path):
    rng = random.Random(5)
    for _ in range(20):
        g = random_multigraph(rng, rng.randint(1, 6), 3)
        path = tmp_path / "g.txt"
        write_graph(g, path)
        assert canonical_key(read_graph(path)) == canonical_key(g)


def test_parse_format_details():
    text = "# a comment\nadvncg-graph v1\n\nn 3  # three agents\ne 0 1 0\ne 0 1 1\ne 1 2 2\n"
    g = parse_graph(text)
    assert g.n == 3 and g.m == 3 and g.multiplicity(0, 1) == 2
    assert format_graph(g).splitlines()[0] == "advncg-graph v1"


@pytest.mark.parametrize("text,line", [
    ("advncg-graph v2\nn 2\n", 1),
    ("advncg-graph v1\nm 2\n", 2),
    ("advncg-graph v1\nn 2\ne 0 1\n", 3),
    ("advncg-graph v1\nn 2\ne 0 1 x\n", 3),
    ("advncg-graph v1\nn 3\ne 0 1 2\n", 3),
    ("advncg-graph v1\nn 2\ne 0 0 0\n", 3),
    ("advncg-graph v1\nn 2\ne 0 1 0\ne 0 5 0\n", 4),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_parse_cap():
    text = "advncg-graph v1\nn 2\ne 0 1 0\ne 0 1 0\ne 0 1 1\n"
    assert parse_graph(text).m == 3
    with pytest.raises(ParseError):
        parse_graph(text, cap=2)


def test_all_owned_states_count():
    states = list(all_owned_states(3, 2))
    assert len(states) == 6 ** 3
    assert len({canonical_key(g) for g in states}) == len(states)


def test_diameter():
    assert diameter(build_family("c6")) == 3
    assert diameter(OwnedMultiGraph(2, ())) == INF
    assert diameter(build_family("dg4")) == 1
