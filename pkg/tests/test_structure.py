import random

import pytest
from hypothesis import given, settings

from advncg.errors import NotATwoCutEdgeError, NotTwoEdgeConnectedError
from advncg.families import all_multigraphs, build_family, clique
from advncg.graph import OwnedMultiGraph, diameter, from_mults, is_connected, is_two_edge_connected
from advncg.structure import (bridge_pairs, bridges, cut_cycle_of, dependents,
                              diameter_after_worst_removal, structure_report, two_cut_edges)

from conftest import owned_multigraphs, random_two_edge_connected


def test_bridge_examples():
    assert len(bridges(build_family("path3"))) == 2
    assert bridges(build_family("c4")) == []
    assert bridges(build_family("ds4")) == []


def test_two_cut_edge_examples():
    assert len(two_cut_edges(build_family("c4"))) == 4
    assert len(two_cut_edges(build_family("double-path4"))) == 6
    assert two_cut_edges(build_family("dg3")) == []
    with pytest.raises(NotTwoEdgeConnectedError):
        two_cut_edges(build_family("path3"))


def theta_graph():
    # nodes 0 and 1 joined by a direct edge and two internally disjoint paths of length 2
    return OwnedMultiGraph(4, ((0, 1, 0), (0, 2, 0), (1, 2, 2), (0, 3, 0), (1, 3, 3)))


def test_cut_cycle_examples():
    assert cut_cycle_of(build_family("c4"), (0, 1)) == (0, 3, 2, 1)
    assert cut_cycle_of(build_family("double-path3"), (0, 1, 0)) == (0, 1)
    with pytest.raises(NotATwoCutEdgeError):
        cut_cycle_of(theta_graph(), (0, 1))
    # an edge on a longer path is a 2-cut-edge: its partner hangs off as a bridge
    assert cut_cycle_of(theta_graph(), (0, 2)) == (0, 1, 2)
    with pytest.raises(NotATwoCutEdgeError):
        cut_cycle_of(build_family("c4"), (0, 2))


def test_cut_cycle_contains_the_new_bridges():
    rng = random.Random(2)
    for _ in range(50):
        g = random_two_edge_connected(rng, rng.randint(3, 7))
        for e in two_cut_edges(g):
            cyc = cut_cycle_of(g, e)
            hops = {(min(a, b), max(a, b)) for a, b in zip(cyc, cyc[1:])}
            i = list(g.edges).index(e)
            assert bridge_pairs(g.without_edge(i)) <= hops


def test_worst_removal_diameter_examples():
    assert diameter_after_worst_removal(build_family("c6")) == 5
    assert diameter_after_worst_removal(build_family("dg4")) == 1
    assert diameter_after_worst_removal(clique(4)) == 2
    with pytest.raises(NotTwoEdgeConnectedError):
        diameter_after_worst_removal(build_family("path4"))


def test_dependents_examples():
    assert dependents(build_family("c4"), 0, (0, 1)) == {1}
    assert dependents(build_family("path3"), 0, (0, 1)) == {1, 2}
    assert dependents(build_family("ds5"), 2, (0, 2)) == set()


@settings(max_examples=200)
@given(owned_multigraphs(max_n=7))
def test_bridge_and_two_cut_consistency(g):
    assert is_two_edge_connected(g) == (is_connected(g) and not bridges(g))
    if is_two_edge_connected(g):
        cut = two_cut_edges(g)
        assert len(cut) <= 2 * (g.n - 1)
        flagged = [bool(bridge_pairs(g.without_edge(i))) for i in range(g.m)]
        assert sum(flagged) == len(cut)


def test_deletion_bounds_on_random_graphs():
    rng = random.Random(8)
    for _ in range(300):
        g = random_two_edge_connected(rng, rng.randint(2, 8))
        assert diameter_after_worst_removal(g) <= 2 * diameter(g)
        assert len(two_cut_edges(g)) <= 2 * (g.n - 1)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_double_path_is_extremal(n):
    assert len(two_cut_edges(build_family(f"double-path{n}"))) == 2 * (n - 1)


def test_report_row():
    row = structure_report(build_family("double-path4")).as_row()
    assert row["two_cut_edge_count"] == 6 and row["bridge_count"] == 0
    row = structure_report(build_family("path3")).as_row()
    assert row["bridge_count"] == 2 and not row["two_edge_connected"]
    assert from_mults(3, (1, 1, 1)).m == 3 and len(list(all_multigraphs(3, 1))) == 8
