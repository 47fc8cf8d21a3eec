"""Bridges, 2-cut-edges, cut-cycles and diameters under single deletions.

Edge *instances* are the unit throughout: one instance of a doubled pair is
never a bridge, but it is a 2-cut-edge whenever its partner would be a bridge
on its own.  Functions returning edges return ``Edge`` tuples, with parallel
instances repeated.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import NotATwoCutEdgeError, NotTwoEdgeConnectedError
from .extcost import INF, ExtCost
from .graph import Edge, OwnedMultiGraph, diameter, distances_from, is_connected, is_two_edge_connected


def _support(g: OwnedMultiGraph):
    adj = [set() for _ in range(g.n)]
    for e in g.edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    return adj


def bridge_pairs(g: OwnedMultiGraph) -> set:
    """Node pairs ``(a, b)``, ``a < b``, whose single instance is a bridge (low-link DFS)."""
    counts = g.pair_counts()
    adj = _support(g)
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    found = set()
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(sorted(adj[root])))]
        while stack:
            x, parent, it = stack[-1]
            advanced = False
            for y in it:
                if y == parent:
                    continue
                if disc[y] == -1:
                    disc[y] = low[y] = timer
                    timer += 1
                    stack.append((y, x, iter(sorted(adj[y]))))
                    advanced = True
                    break
                low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[x])
                pair = (min(parent, x), max(parent, x))
                if low[x] > disc[parent] and counts[pair] == 1:
                    found.add(pair)
    return found


def bridges(g: OwnedMultiGraph) -> list:
    found = bridge_pairs(g)
    return [e for e in g.edges if (e.u, e.v) in found]


def _require_2ec(g):
    if not is_two_edge_connected(g):
        raise NotTwoEdgeConnectedError("graph is not 2-edge-connected")


def two_cut_edges(g: OwnedMultiGraph) -> list:
    """Edge instances whose deletion leaves at least one bridge."""
    _require_2ec(g)
    return [e for i, e in enumerate(g.edges) if bridge_pairs(g.without_edge(i))]


def _index_of(g: OwnedMultiGraph, e) -> int:
    e = Edge(min(e[0], e[1]), max(e[0], e[1]), e[2] if len(e) > 2 else None)
    for i, x in enumerate(g.edges):
        if x.u == e.u and x.v == e.v and (e.owner is None or x.owner == e.owner):
            return i
    raise NotATwoCutEdgeError(f"{tuple(e)} is not an edge of the graph")


def _lex_shortest_path(adj, src, dst):
    """Lexicographically smallest shortest node sequence from ``src`` to ``dst``."""
    dist = {dst: 0}
    queue = deque([dst])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    if src not in dist:
        return None
    seq = [src]
    while seq[-1] != dst:
        x = seq[-1]
        seq.append(min(y for y in adj[x] if dist.get(y) == dist[x] - 1))
    return seq


def cut_cycle_of(g: OwnedMultiGraph, e) -> tuple:
    """Shortest cycle through the 2-cut-edge ``e`` and the bridges it leaves behind.

    Every cycle through ``e`` must also cross each of those bridges, so the
    shortest one is ``e`` plus a shortest path between its endpoints in
    ``G - e``.  The cycle is returned as the node sequence from ``min(e)`` to
    ``max(e)``; the closing hop is ``e`` itself.
    """
    i = _index_of(g, e)
    edge = g.edges[i]
    rest = g.without_edge(i)
    if not is_two_edge_connected(g) or not bridge_pairs(rest):
        raise NotATwoCutEdgeError(f"{tuple(edge)} is not a 2-cut-edge")
    seq = _lex_shortest_path(_support(rest), edge.u, edge.v)
    nodes = set(seq)
    hops = {(min(a, b), max(a, b)) for a, b in zip(seq, seq[1:])}
    for b in bridge_pairs(rest):
        assert b in hops and b[0] in nodes, "cut-cycle misses a bridge"
    return tuple(seq)


def diameter_after_worst_removal(g: OwnedMultiGraph) -> ExtCost:
    """Largest diameter of ``G - e`` over all edge instances; checked against ``2 * diam(G)``."""
    _require_2ec(g)
    d = diameter(g)
    worst = max((diameter(g.without_edge(i)) for i in range(g.m)), default=d)
    if worst > 2 * d:
        raise AssertionError(f"post-deletion diameter {worst} exceeds twice the diameter {d}")
    return worst


def dependents(g: OwnedMultiGraph, v: int, e) -> set:
    """Nodes all of whose shortest paths from ``v`` need the pair of ``e``.

    If the pair is doubled, a parallel instance substitutes and the set is empty.
    """
    a, b = min(e[0], e[1]), max(e[0], e[1])
    if g.multiplicity(a, b) != 1:
        return set()
    before = distances_from(g, v)
    cut = OwnedMultiGraph(g.n, tuple(x for x in g.edges if (x.u, x.v) != (a, b)))
    after = distances_from(cut, v)
    return {w for w in range(g.n) if w != v and after[w] > before[w]}


@dataclass
class StructureReport:
    n: int
    edges: int
    connected: bool
    two_edge_connected: bool
    bridges: list
    two_cut_edges: list
    diameter: ExtCost
    worst_post_deletion_diameter: ExtCost

    def as_row(self) -> dict:
        return {
            "n": self.n,
            "edges": self.edges,
            "connected": self.connected,
            "two_edge_connected": self.two_edge_connected,
            "bridge_count": len(self.bridges),
            "two_cut_edge_count": len(self.two_cut_edges),
            "diameter": self.diameter,
            "worst_post_deletion_diameter": self.worst_post_deletion_diameter,
            "bridges": " ".join(f"{e.u}-{e.v}" for e in self.bridges),
            "two_cut_edges": " ".join(f"{e.u}-{e.v}" for e in self.two_cut_edges),
        }


def structure_report(g: OwnedMultiGraph) -> StructureReport:
    two_ec = is_two_edge_connected(g)
    conn = is_connected(g)
    return StructureReport(
        n=g.n,
        edges=g.m,
        connected=conn,
        two_edge_connected=two_ec,
        bridges=bridges(g),
        two_cut_edges=two_cut_edges(g) if two_ec else [],
        diameter=diameter(g) if conn else INF,
        worst_post_deletion_diameter=diameter_after_worst_removal(g) if two_ec else INF,
    )
