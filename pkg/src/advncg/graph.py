"""Owned multigraphs, the strategy bijection, hop distances and the text format.

Nodes are labeled ``0..n-1``.  Every edge instance records the endpoint that
paid for it.  Distances ignore multiplicity: a doubled pair is no shorter than
a single one, it only survives a deletion.
"""

from __future__ import annotations

import hashlib
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, NamedTuple, Sequence

from .errors import CapExceededError, InvalidGraphError, InvalidTargetError, ParseError
from .extcost import INF

DEFAULT_CAP = 2
FORMAT_HEADER = "advncg-graph v1"

Strategy = tuple  # sorted tuple of target nodes, repeats allowed
StrategyVector = tuple  # one Strategy per agent


class Edge(NamedTuple):
    u: int
    v: int
    owner: int


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple:
    """All unordered node pairs of ``0..n-1`` in lexicographic order."""
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict:
    index = {}
    for i, (a, b) in enumerate(pairs(n)):
        index[(a, b)] = i
        index[(b, a)] = i
    return index


@lru_cache(maxsize=None)
def incident_pairs(n: int, u: int) -> tuple:
    """``(v, pair_idx)`` for every ``v != u``, ordered by ``v``."""
    idx = pair_index(n)
    return tuple((v, idx[(u, v)]) for v in range(n) if v != u)


def adjacency_masks(n: int, mults: Sequence[int], skip: int = -1) -> list:
    """Bitmask adjacency of the support graph; pair ``skip`` is left out."""
    adj = [0] * n
    for i, (a, b) in enumerate(pairs(n)):
        if mults[i] and i != skip:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return adj


def bfs_levels(adj: Sequence[int], src: int) -> tuple:
    """Return ``(reached_mask, distance_sum)`` of a BFS from ``src``."""
    seen = frontier = 1 << src
    depth = total = 0
    while frontier:
        depth += 1
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= ~seen
        total += depth * nxt.bit_count()
        seen |= nxt
        frontier = nxt
    return seen, total


@dataclass(frozen=True)
class OwnedMultiGraph:
    """Labeled undirected multigraph whose edge instances carry an owner.

    Edges are stored normalized as ``(min, max, owner)``.  The multiplicity cap
    is enforced by the constructors that take one (``build_from_strategies``,
    ``from_edges``); the dataclass itself only checks loops and ownership.
    """

    n: int
    edges: tuple

    def __post_init__(self):
        if self.n < 0:
            raise InvalidGraphError("node count must be nonnegative")
        norm = []
        for e in self.edges:
            u, v, owner = (int(x) for x in e)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidTargetError(f"edge {(u, v)} has a node outside 0..{self.n - 1}")
            if u == v:
                raise InvalidTargetError(f"self-loop at node {u}")
            if owner not in (u, v):
                raise InvalidGraphError(f"owner {owner} is not an endpoint of {(u, v)}")
            norm.append(Edge(min(u, v), max(u, v), owner))
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, cap: int | None = DEFAULT_CAP) -> "OwnedMultiGraph":
        g = cls(n, tuple(edges))
        if cap is not None:
            g.check_cap(cap)
        return g

    def check_cap(self, cap: int) -> None:
        for (a, b), m in self.pair_counts().items():
            if m > cap:
                raise CapExceededError(f"pair {(a, b)} has multiplicity {m} > cap {cap}")

    @property
    def m(self) -> int:
        return len(self.edges)

    def pair_counts(self) -> Counter:
        return Counter((e.u, e.v) for e in self.edges)

    def multiplicity(self, u: int, v: int) -> int:
        a, b = min(u, v), max(u, v)
        return sum(1 for e in self.edges if e.u == a and e.v == b)

    def mults(self) -> tuple:
        """Pair multiplicities in ``pairs(n)`` order (ownership dropped)."""
        out = [0] * len(pairs(self.n))
        idx = pair_index(self.n)
        for e in self.edges:
            out[idx[(e.u, e.v)]] += 1
        return tuple(out)

    def owned_counts(self, u: int) -> Counter:
        """Multiset ``S_u`` as a Counter of targets."""
        return Counter(e.v if e.u == u else e.u for e in self.edges if e.owner == u)

    def strategy(self, u: int) -> Strategy:
        return tuple(sorted((e.v if e.u == u else e.u) for e in self.edges if e.owner == u))

    def neighbors(self, u: int) -> set:
        return {e.v if e.u == u else e.u for e in self.edges if u in (e.u, e.v)}

    def without_edge(self, index: int) -> "OwnedMultiGraph":
        return OwnedMultiGraph(self.n, self.edges[:index] + self.edges[index + 1:])

    def with_strategy(self, u: int, strategy: Iterable[int], cap: int | None = DEFAULT_CAP) -> "OwnedMultiGraph":
        """Replace ``S_u`` and keep every other agent's edges untouched."""
        kept = [e for e in self.edges if e.owner != u]
        for v in strategy:
            v = int(v)
            if v == u or not 0 <= v < self.n:
                raise InvalidTargetError(f"agent {u} cannot buy an edge to {v}")
            kept.append(Edge(min(u, v), max(u, v), u))
        return OwnedMultiGraph.from_edges(self.n, kept, cap)

    def key(self) -> tuple:
        return canonical_key(self)

    def __repr__(self):
        return f"OwnedMultiGraph(n={self.n}, edges={[tuple(e) for e in self.edges]})"


def build_from_strategies(n: int, s: Sequence[Iterable[int]], cap: int = DEFAULT_CAP) -> OwnedMultiGraph:
    if len(s) != n:
        raise InvalidGraphError(f"expected {n} strategies, got {len(s)}")
    edges = []
    for u, targets in enumerate(s):
        for v in targets:
            v = int(v)
            if v == u or not 0 <= v < n:
                raise InvalidTargetError(f"agent {u} cannot target {v}")
            edges.append(Edge(min(u, v), max(u, v), u))
    return OwnedMultiGraph.from_edges(n, edges, cap)


def strategies_of(g: OwnedMultiGraph) -> StrategyVector:
    return tuple(g.strategy(u) for u in range(g.n))


def from_mults(n: int, mults: Sequence[int], owners: Sequence[int] | None = None) -> OwnedMultiGraph:
    """Graph with the given pair multiplicities.

    ``owners[i]`` is how many instances of pair ``i`` the smaller endpoint owns
    (default: all of them).
    """
    edges = []
    for i, (a, b) in enumerate(pairs(n)):
        k = mults[i] if owners is None else owners[i]
        edges.extend([Edge(a, b, a)] * k)
        edges.extend([Edge(a, b, b)] * (mults[i] - k))
    return OwnedMultiGraph(n, tuple(edges))


def canonical_key(g: OwnedMultiGraph) -> tuple:
    """Order-insensitive, ownership-sensitive identity of a labeled state."""
    return (g.n, tuple(sorted(g.edges)))


def key_digest(key: tuple, length: int = 12) -> str:
    return hashlib.sha1(repr(key).encode()).hexdigest()[:length]


def distances_from(g: OwnedMultiGraph, u: int) -> list:
    """Hop distances from ``u`` (``INF`` for unreachable nodes)."""
    adj = [set() for _ in range(g.n)]
    for e in g.edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    dist = [INF] * g.n
    dist[u] = 0
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] == INF:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def _check_node(g, u):
    if not 0 <= u < g.n:
        raise InvalidTargetError(f"node {u} not in 0..{g.n - 1}")


def graph_distance(g: OwnedMultiGraph, u: int, v: int):
    _check_node(g, u)
    _check_node(g, v)
    return distances_from(g, u)[v]


def diameter(g: OwnedMultiGraph):
    if g.n <= 1:
        return 0
    return max(max(distances_from(g, u)) for u in range(g.n))


def is_connected(g: OwnedMultiGraph) -> bool:
    if g.n <= 1:
        return True
    seen, _ = bfs_levels(adjacency_masks(g.n, g.mults()), 0)
    return seen == (1 << g.n) - 1


def mults_two_edge_connected(n: int, mults: Sequence[int]) -> bool:
    full = (1 << n) - 1
    if n <= 1:
        return True
    if bfs_levels(adjacency_masks(n, mults), 0)[0] != full:
        return False
    for i, m in enumerate(mults):
        if m == 1 and bfs_levels(adjacency_masks(n, mults, skip=i), 0)[0] != full:
            return False
    return True


def is_two_edge_connected(g: OwnedMultiGraph) -> bool:
    """Connected, and still connected after deleting any single edge instance."""
    return mults_two_edge_connected(g.n, g.mults())


# -- text format ------------------------------------------------------------

def parse_graph(text: str, cap: int | None = None) -> OwnedMultiGraph:
    """Parse the line-based ``advncg-graph v1`` format (strict)."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if not lines or lines[0][1] != FORMAT_HEADER:
        where = lines[0][0] if lines else 1
        raise ParseError(f"expected header {FORMAT_HEADER!r}", where)
    if len(lines) < 2:
        raise ParseError("missing node count line", lines[0][0])
    lineno, body = lines[1]
    parts = body.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit():
        raise ParseError(f"expected 'n <count>', got {body!r}", lineno)
    n = int(parts[1])
    edges = []
    for lineno, body in lines[2:]:
        parts = body.split()
        if len(parts) != 4 or parts[0] != "e":
            raise ParseError(f"expected 'e <u> <v> <owner>', got {body!r}", lineno)
        try:
            u, v, owner = (int(p) for p in parts[1:])
        except ValueError:
            raise ParseError(f"non-integer field in {body!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"node id out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError("self-loop", lineno)
        if owner not in (u, v):
            raise ParseError(f"owner {owner} is not an endpoint of {u}-{v}", lineno)
        edges.append(Edge(u, v, owner))
    g = OwnedMultiGraph(n, tuple(edges))
    if cap is not None:
        try:
            g.check_cap(cap)
        except CapExceededError as exc:
            raise ParseError(str(exc)) from None
    return g


def format_graph(g: OwnedMultiGraph) -> str:
    out = [FORMAT_HEADER, f"n {g.n}"]
    out.extend(f"e {e.u} {e.v} {e.owner}" for e in sorted(g.edges))
    return "\n".join(out) + "\n"


def read_graph(path, cap: int | None = None) -> OwnedMultiGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), cap)


def write_graph(g: OwnedMultiGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g))


def all_owned_states(n: int, cap: int = DEFAULT_CAP):
    """Every ownership-resolved state on ``n`` agents with multiplicities <= cap.

    Per pair of multiplicity ``m`` there are ``m + 1`` ways to split ownership,
    so the count is ``((cap + 1)(cap + 2) / 2) ** C(n, 2)``.
    """
    ps = pairs(n)
    splits = [(m, k) for m in range(cap + 1) for k in range(m + 1)]
    for choice in product(splits, repeat=len(ps)):
        mults = tuple(m for m, _ in choice)
        owners = tuple(k for _, k in choice)
        yield from_mults(n, mults, owners)
