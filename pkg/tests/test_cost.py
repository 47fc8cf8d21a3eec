import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from advncg.cost import (GameConfig, Model, agent_cost, delta_sum, expected_distance_cost,
                         expected_distance_cost_naive, expected_unreachable, social_cost)
from advncg.extcost import INF, format_decimal, format_exact, parse_alpha, parse_rational
from advncg.families import build_family, partially_doubled_clique
from advncg.graph import Edge, OwnedMultiGraph, is_two_edge_connected

from conftest import owned_multigraphs, random_multigraph


def test_delta_sum_examples():
    c4 = build_family("c4")
    assert all(delta_sum(c4, u) == 4 for u in range(4))
    assert delta_sum(build_family("ds3"), 1) == 3
    assert delta_sum(OwnedMultiGraph(3, ((0, 1, 0),)), 0) == INF


def test_expected_distance_examples():
    dg3 = build_family("dg3")
    assert all(expected_distance_cost(dg3, u) == 2 for u in range(3))
    # one instance of pair {0,1} removed
    i = next(i for i, e in enumerate(dg3.edges) if (e.u, e.v) == (0, 1))
    assert expected_distance_cost(dg3.without_edge(i), 0) == Fraction(11, 5)
    assert all(expected_distance_cost(build_family("c4"), u) == 5 for u in range(4))
    ds3_plus = OwnedMultiGraph(3, build_family("ds3").edges + (Edge(1, 2, 1),))
    assert expected_distance_cost(ds3_plus, 1) == Fraction(11, 5)
    assert expected_distance_cost(build_family("path3"), 0) == INF


def test_degenerate_sizes():
    assert expected_distance_cost(OwnedMultiGraph(1, ()), 0) == 0
    assert expected_distance_cost(OwnedMultiGraph(2, ()), 0) == INF
    assert expected_unreachable(OwnedMultiGraph(3, ()), 0) == 2


def test_agent_cost_examples():
    leaf_owned = OwnedMultiGraph(3, ((0, 1, 1), (0, 1, 1), (0, 2, 0), (0, 2, 0)))
    assert agent_cost(leaf_owned, GameConfig(1), 1) == 5
    assert agent_cost(build_family("dg3"), GameConfig(1, Model.KLIEMANN), 0) == 2
    assert agent_cost(build_family("c4"), GameConfig(2, Model.NCG), 0) == 6


def test_social_cost_examples():
    for a in (Fraction(0), Fraction(1), Fraction(103, 10)):
        assert social_cost(build_family("dg3"), GameConfig(a)) == 6 * a + 6
        assert social_cost(partially_doubled_clique(3, 1), GameConfig(a)) == 4 * a + 7
        assert social_cost(build_family("c4"), GameConfig(a)) == 4 * a + 20


def test_kliemann_counts_unreachable_nodes():
    # path 0-1-2: deleting either edge cuts off one (for the middle) or up to two nodes
    p = build_family("path3")
    assert expected_unreachable(p, 0) == Fraction(1 + 2, 2)
    assert expected_unreachable(p, 1) == 1


@settings(max_examples=300, deadline=None)
@given(owned_multigraphs(max_n=7, cap=3))
def test_optimized_matches_naive_oracle(g):
    for u in range(g.n):
        assert expected_distance_cost(g, u) == expected_distance_cost_naive(g, u)


@settings(max_examples=200)
@given(owned_multigraphs(max_n=6), st.randoms(use_true_random=False))
def test_ownership_invariance(g, rnd):
    flipped = OwnedMultiGraph(g.n, tuple(Edge(e.u, e.v, rnd.choice((e.u, e.v))) for e in g.edges))
    cfg = GameConfig(Fraction(3, 7))
    assert social_cost(g, cfg) == social_cost(flipped, cfg)
    for u in range(g.n):
        assert expected_distance_cost(g, u) == expected_distance_cost(flipped, u)


@settings(max_examples=200)
@given(owned_multigraphs(max_n=6))
def test_adversary_never_helps(g):
    for u in range(g.n):
        assert expected_distance_cost(g, u) >= delta_sum(g, u)


@settings(max_examples=200)
@given(owned_multigraphs(min_n=2, max_n=6))
def test_finite_iff_two_edge_connected(g):
    finite = all(expected_distance_cost(g, u) != INF for u in range(g.n))
    assert finite == is_two_edge_connected(g)


def test_fully_doubled_graphs_have_no_adversary_penalty():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(2, 6)
        g = random_multigraph(rng, n, 1)
        doubled = OwnedMultiGraph(n, g.edges + g.edges)
        for u in range(n):
            assert expected_distance_cost(doubled, u) == delta_sum(doubled, u)


def test_config_validation():
    with pytest.raises(ValueError):
        GameConfig(-1)
    with pytest.raises(ValueError):
        GameConfig(1, cap=0)
    assert GameConfig("10.3").alpha == Fraction(103, 10)
    assert GameConfig(1, "kliemann").model is Model.KLIEMANN


def test_rational_parsing_and_formatting():
    assert parse_rational("10.3") == Fraction(103, 10)
    assert parse_rational("1e6") == 10 ** 6
    assert parse_rational(" 4/6 ") == Fraction(2, 3)
    with pytest.raises(TypeError):
        parse_rational(0.1)
    with pytest.raises(ValueError):
        parse_alpha("-1/2")
    with pytest.raises(ValueError):
        parse_rational("abc")
    assert format_exact(12) == "12/1"
    assert format_exact(Fraction(2, 4)) == "1/2"
    assert format_exact(INF) == "inf"
    assert format_decimal(Fraction(1, 3)) == "0.333333333333"
    assert format_decimal(Fraction(12)) == "12"


def test_infinity_compares_exactly_with_fractions():
    big = Fraction(10 ** 400)
    assert big < INF and not INF < INF
    assert INF + Fraction(10 ** 9, 7) == INF
