"""Connected dominating sets, the universal-vertex reduction, and the link
between a fresh agent's best response and minimum (1,2)-CDS.

Solvers here are plain subset enumeration by increasing size, so the first
valid set found is both minimum and lexicographically least.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .cost import GameConfig
from .errors import InfeasibleError, PreconditionError, WindowEmptyError, check_budget
from .graph import Edge, OwnedMultiGraph
from .moves import best_response_exact, best_response_window


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise PreconditionError(f"self-loop at {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise PreconditionError(f"edge {(a, b)} outside 0..{self.n - 1}")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "SimpleGraph":
        return cls(n, frozenset(tuple(e[:2]) for e in edges))

    @classmethod
    def from_owned(cls, g: OwnedMultiGraph) -> "SimpleGraph":
        """Support graph of an owned multigraph (owners and multiplicity dropped)."""
        return cls(g.n, frozenset((e.u, e.v) for e in g.edges))

    def adjacency(self) -> list:
        adj = [set() for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_connected(self) -> bool:
        return _connected(self.adjacency(), set(range(self.n)))


def cycle_graph(n):
    return SimpleGraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path_graph(n):
    return SimpleGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def complete_graph(n):
    return SimpleGraph(n, frozenset(combinations(range(n), 2)))


def star_graph(leaves):
    return SimpleGraph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return SimpleGraph(10, frozenset(outer + spokes + inner))


def induced_subgraph(g: SimpleGraph, nodes) -> SimpleGraph:
    nodes = sorted(nodes)
    relabel = {v: i for i, v in enumerate(nodes)}
    return SimpleGraph(len(nodes), frozenset(
        (relabel[a], relabel[b]) for a, b in g.edges if a in relabel and b in relabel))


def _connected(adj, nodes) -> bool:
    nodes = set(nodes)
    if not nodes:
        return False
    start = min(nodes)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == nodes


def _m_connected(adj, s, m) -> bool:
    if m == 1:
        return _connected(adj, s)
    # 2-vertex-connected: at least 3 vertices, connected, no cut vertex
    if len(s) < 3 or not _connected(adj, s):
        return False
    return all(_connected(adj, s - {x}) for x in s)


def is_k_dominating_m_connected(g: SimpleGraph, s, m: int, k: int) -> bool:
    if m not in (1, 2):
        raise PreconditionError("only m in {1, 2} is supported")
    if k < 1:
        raise PreconditionError("k must be at least 1")
    s = set(s)
    adj = g.adjacency()
    for v in range(g.n):
        if v not in s and len(adj[v] & s) < k:
            return False
    return _m_connected(adj, s, m)


def _subsets_by_size(n, budget):
    check_budget(2 ** n, budget)
    for size in range(n + 1):
        yield from combinations(range(n), size)


def min_mk_cds_bruteforce(g: SimpleGraph, m: int = 1, k: int = 2, budget: int | None = None) -> tuple:
    """Return ``(set, size)`` of the lexicographically least minimum (m,k)-CDS."""
    for s in _subsets_by_size(g.n, budget):
        if s and is_k_dominating_m_connected(g, s, m, k):
            return frozenset(s), len(s)
    raise InfeasibleError(f"no {m}-connected {k}-dominating set exists")


def is_dominating(g: SimpleGraph, s) -> bool:
    s = set(s)
    adj = g.adjacency()
    return all(v in s or adj[v] & s for v in range(g.n))


def min_dominating_set_bruteforce(g: SimpleGraph, budget: int | None = None) -> tuple:
    for s in _subsets_by_size(g.n, budget):
        if is_dominating(g, s):
            return frozenset(s), len(s)
    raise InfeasibleError("empty graph has no dominating set")  # only reachable for n = 0


def reduction_add_universal(g: SimpleGraph) -> SimpleGraph:
    """Add vertex ``n`` adjacent to every original vertex."""
    u = g.n
    return SimpleGraph(g.n + 1, g.edges | {(v, u) for v in range(g.n)})


@dataclass
class ReductionCheck:
    holds: bool
    gamma: int
    cds_size: int
    dominating_set: frozenset
    cds: frozenset

    def __bool__(self):
        return self.holds


def verify_reduction_identity(g: SimpleGraph, budget: int | None = None) -> ReductionCheck:
    """Check ``min12cds(G + universal vertex) == gamma(G) + 1``."""
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    dom, gamma = min_dominating_set_bruteforce(g, budget)
    cds, size = min_mk_cds_bruteforce(reduction_add_universal(g), 1, 2, budget)
    return ReductionCheck(size == gamma + 1, gamma, size, dom, cds)


# -- best response of a fresh agent ---------------------------------------------

def correspondence_instance(g: SimpleGraph) -> OwnedMultiGraph:
    """Game on ``g`` plus a fresh agent ``n`` with no edges; each edge of ``g``
    is owned by its smaller endpoint."""
    return OwnedMultiGraph(g.n + 1, tuple(Edge(a, b, a) for a, b in sorted(g.edges)))


@dataclass
class ReadingResult:
    reading: str
    edge_count: int
    window: tuple | None
    alpha: Fraction | None
    strategy: tuple = ()
    bought: frozenset = frozenset()
    is_cds: bool = False
    minimum: bool = False
    passed: bool = False
    note: str = ""


@dataclass
class CorrespondenceReport:
    graph: SimpleGraph
    cds: frozenset
    cds_size: int
    readings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return any(r.passed for r in self.readings.values())

    @property
    def passing_readings(self) -> list:
        return [name for name, r in self.readings.items() if r.passed]

    def __bool__(self):
        return self.passed


def _midpoint(window):
    lo, hi = window
    return (lo + hi) / 2


def best_response_cds_correspondence(g: SimpleGraph, alpha=None, cap: int = 2,
                                     budget: int | None = None) -> CorrespondenceReport:
    """Compare a fresh agent's exhaustive best response with a minimum (1,2)-CDS of ``g``.

    The edge-price window ``(1 - 1/(E+1), 1 + 1/(E(E-1)))`` is evaluated with
    ``E`` read two ways: ``"before"`` counts the edges of ``g`` only, ``"after"``
    adds the agent's purchase (the CDS size).  Without an explicit ``alpha``
    the midpoint of each window is used; an explicit ``alpha`` outside a
    window is still evaluated but that reading cannot pass.
    """
    cds, size = min_mk_cds_bruteforce(g, 1, 2, budget)
    report = CorrespondenceReport(g, cds, size)
    game = correspondence_instance(g)
    u = g.n
    for reading, e_count in (("before", len(g.edges)), ("after", len(g.edges) + size)):
        try:
            window = best_response_window(e_count)
        except WindowEmptyError as exc:
            report.readings[reading] = ReadingResult(reading, e_count, None, None, note=str(exc))
            continue
        a = Fraction(alpha) if alpha is not None else _midpoint(window)
        inside = window[0] < a < window[1]
        br = best_response_exact(game, GameConfig(a, cap=cap), u, budget)
        bought = frozenset(br.strategy)
        simple = len(bought) == len(br.strategy)
        is_cds = simple and is_k_dominating_m_connected(g, bought, 1, 2)
        minimum = is_cds and len(bought) == size
        # buying fewer edges than a minimum CDS would contradict domination
        assert not (simple and is_cds and len(bought) < size)
        report.readings[reading] = ReadingResult(
            reading, e_count, window, a, br.strategy, bought, is_cds, minimum,
            passed=inside and minimum,
            note="" if inside else "alpha outside window",
        )
    return report
