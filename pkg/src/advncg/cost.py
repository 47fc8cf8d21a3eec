"""Exact agent and social costs for the three supported cost models.

Adv-NCG (the default) charges ``alpha`` per owned edge plus the expected sum of
hop distances after one edge instance, chosen uniformly at random, is deleted.
NCG drops the adversary.  Kliemann's model replaces distances with the expected
number of nodes that become unreachable.

All heavy lifting goes through per-multigraph tables keyed by the pair
multiplicity vector, so repeated evaluations inside exhaustive searches are
cache hits.  Ownership never enters a distance term.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .extcost import INF, ExtCost, parse_alpha
from .graph import DEFAULT_CAP, OwnedMultiGraph, adjacency_masks, bfs_levels


class Model(enum.Enum):
    ADV = "adv-ncg"
    NCG = "ncg"
    KLIEMANN = "kliemann"

    @classmethod
    def parse(cls, value) -> "Model":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        aliases = {"adv": cls.ADV, "adv-ncg": cls.ADV, "advncg": cls.ADV,
                   "ncg": cls.NCG, "kliemann": cls.KLIEMANN, "kli": cls.KLIEMANN}
        if text not in aliases:
            raise ValueError(f"unknown cost model {value!r}")
        return aliases[text]


@dataclass(frozen=True)
class GameConfig:
    alpha: Fraction = field(default=Fraction(1))
    model: Model = Model.ADV
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        object.__setattr__(self, "alpha", parse_alpha(self.alpha))
        object.__setattr__(self, "model", Model.parse(self.model))
        if int(self.cap) < 1:
            raise ValueError("multiplicity cap must be at least 1")
        object.__setattr__(self, "cap", int(self.cap))


# -- cached per-multigraph tables --------------------------------------------

@lru_cache(maxsize=1 << 18)
def expected_distance_table(n: int, mults: tuple) -> tuple:
    """``dist_G(u)`` for every node of the multigraph with these multiplicities.

    Deleting one instance of a pair with multiplicity >= 2 changes nothing, so
    only single pairs need a fresh traversal.  A disconnected graph, or one
    with a bridge, gives every node infinite expected cost.
    """
    if n <= 1:
        return (Fraction(0),) * n
    total_edges = sum(mults)
    if total_edges == 0:
        return (INF,) * n
    full = (1 << n) - 1
    adj = adjacency_masks(n, mults)
    base = []
    for u in range(n):
        seen, s = bfs_levels(adj, u)
        if seen != full:
            return (INF,) * n
        base.append(s)
    totals = [b * total_edges for b in base]
    for i, m in enumerate(mults):
        if m != 1:
            continue
        cut = adjacency_masks(n, mults, skip=i)
        for u in range(n):
            seen, s = bfs_levels(cut, u)
            if seen != full:
                return (INF,) * n
            totals[u] += s - base[u]
    return tuple(Fraction(t, total_edges) for t in totals)


@lru_cache(maxsize=1 << 16)
def distance_sum_table(n: int, mults: tuple) -> tuple:
    """``delta_G(u)`` for every node (no adversary)."""
    full = (1 << n) - 1
    adj = adjacency_masks(n, mults)
    out = []
    for u in range(n):
        seen, s = bfs_levels(adj, u)
        out.append(Fraction(s) if seen == full else INF)
    return tuple(out)


@lru_cache(maxsize=1 << 16)
def unreachable_table(n: int, mults: tuple) -> tuple:
    """Expected number of nodes cut off from each node after one deletion.

    With no edges at all there is nothing to delete; the convention is that
    every other node counts as unreachable.
    """
    if n <= 1:
        return (Fraction(0),) * n
    total_edges = sum(mults)
    if total_edges == 0:
        return (Fraction(n - 1),) * n

    def lost(adj, u):
        seen, _ = bfs_levels(adj, u)
        return n - seen.bit_count()

    adj = adjacency_masks(n, mults)
    base = [lost(adj, u) for u in range(n)]
    totals = [b * total_edges for b in base]
    for i, m in enumerate(mults):
        if m != 1:
            continue
        cut = adjacency_masks(n, mults, skip=i)
        for u in range(n):
            totals[u] += lost(cut, u) - base[u]
    return tuple(Fraction(t, total_edges) for t in totals)


def distance_terms(model: Model, n: int, mults: tuple) -> tuple:
    if model is Model.ADV:
        return expected_distance_table(n, mults)
    if model is Model.NCG:
        return distance_sum_table(n, mults)
    return unreachable_table(n, mults)


# -- public operations --------------------------------------------------------

def delta_sum(g: OwnedMultiGraph, u: int) -> ExtCost:
    return distance_sum_table(g.n, g.mults())[u]


def expected_distance_cost(g: OwnedMultiGraph, u: int) -> ExtCost:
    return expected_distance_table(g.n, g.mults())[u]


def expected_unreachable(g: OwnedMultiGraph, u: int) -> ExtCost:
    return unreachable_table(g.n, g.mults())[u]


def agent_cost(g: OwnedMultiGraph, cfg: GameConfig, u: int) -> ExtCost:
    owned = sum(1 for e in g.edges if e.owner == u)
    return cfg.alpha * owned + distance_terms(cfg.model, g.n, g.mults())[u]


def agent_costs(g: OwnedMultiGraph, cfg: GameConfig) -> list:
    terms = distance_terms(cfg.model, g.n, g.mults())
    owned = [0] * g.n
    for e in g.edges:
        owned[e.owner] += 1
    return [cfg.alpha * owned[u] + terms[u] for u in range(g.n)]


def social_distance(model: Model, n: int, mults: tuple) -> ExtCost:
    return sum(distance_terms(model, n, mults), Fraction(0))


def social_cost(g: OwnedMultiGraph, cfg: GameConfig) -> ExtCost:
    return cfg.alpha * g.m + social_distance(cfg.model, g.n, g.mults())


def social_cost_of_mults(n: int, mults: Sequence[int], alpha, model: Model = Model.ADV) -> ExtCost:
    mults = tuple(mults)
    return Fraction(alpha) * sum(mults) + social_distance(model, n, mults)


# -- slow reference implementation --------------------------------------------

def _bfs_sum_naive(n, edges, u):
    adj = {x: [] for x in range(n)}
    for a, b, _ in edges:
        adj[a].append(b)
        adj[b].append(a)
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    if len(dist) < n:
        return INF
    return sum(dist.values())


def expected_distance_cost_naive(g: OwnedMultiGraph, u: int) -> ExtCost:
    """Average of ``delta_{G-e}(u)`` over every edge instance, one traversal each."""
    if g.n == 1:
        return Fraction(0)
    if not g.edges:
        return INF
    total = Fraction(0)
    for i in range(len(g.edges)):
        rest = g.edges[:i] + g.edges[i + 1:]
        s = _bfs_sum_naive(g.n, rest, u)
        if s == INF:
            return INF
        total += s
    return total / len(g.edges)

