"""Moves, exhaustive best responses and equilibrium checks.

A best response is searched over every multiset ``S_u'`` whose combined
multiplicity per pair (including edges other agents bought toward ``u``)
stays within the cap.  The current strategy wins ties, so an equilibrium is
exactly a state in which nobody has a strictly improving move.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod
from typing import Sequence

from .cost import GameConfig, distance_terms
from .errors import InvalidTargetError, NotOwnerError, PreconditionError, WindowEmptyError, check_budget
from .extcost import INF, ExtCost
from .graph import OwnedMultiGraph, distances_from, incident_pairs


# -- move taxonomy --------------------------------------------------------------

@dataclass(frozen=True)
class Buy:
    target: int
    kind = "buy"

    def detail(self):
        return f"+{self.target}"


@dataclass(frozen=True)
class Delete:
    target: int
    kind = "delete"

    def detail(self):
        return f"-{self.target}"


@dataclass(frozen=True)
class Swap:
    old: int
    new: int
    kind = "swap"

    def detail(self):
        return f"{self.old}->{self.new}"


@dataclass(frozen=True)
class MultiSwap:
    removed: tuple
    added: tuple
    kind = "multi-swap"

    def __post_init__(self):
        if len(self.removed) != len(self.added):
            raise PreconditionError("a multi-swap removes and adds equally many edges")
        object.__setattr__(self, "removed", tuple(sorted(self.removed)))
        object.__setattr__(self, "added", tuple(sorted(self.added)))

    def detail(self):
        return f"-{list(self.removed)}+{list(self.added)}"


@dataclass(frozen=True)
class Replace:
    strategy: tuple
    kind = "replace"

    def __post_init__(self):
        object.__setattr__(self, "strategy", tuple(sorted(self.strategy)))

    def detail(self):
        return str(list(self.strategy))


def resulting_strategy(current: Sequence[int], move) -> tuple:
    """The multiset ``S_u'`` produced by ``move`` from ``current``."""
    s = Counter(current)
    if isinstance(move, Buy):
        s[move.target] += 1
    elif isinstance(move, Delete):
        if s[move.target] == 0:
            raise NotOwnerError(f"no owned edge toward {move.target}")
        s[move.target] -= 1
    elif isinstance(move, Swap):
        if s[move.old] == 0:
            raise NotOwnerError(f"no owned edge toward {move.old}")
        if move.old == move.new:
            raise InvalidTargetError("a swap must change the target")
        s[move.old] -= 1
        s[move.new] += 1
    elif isinstance(move, MultiSwap):
        removed = Counter(move.removed)
        if any(s[v] < c for v, c in removed.items()):
            raise NotOwnerError(f"cannot remove {list(move.removed)} from {sorted(current)}")
        s -= removed
        s.update(move.added)
    elif isinstance(move, Replace):
        return move.strategy
    else:
        raise TypeError(f"not a move: {move!r}")
    return tuple(sorted(s.elements()))


def classify_change(old: Sequence[int], new: Sequence[int]):
    """Describe ``old -> new`` with the most specific move type."""
    a, b = Counter(old), Counter(new)
    removed = tuple(sorted((a - b).elements()))
    added = tuple(sorted((b - a).elements()))
    if not removed and len(added) == 1:
        return Buy(added[0])
    if not added and len(removed) == 1:
        return Delete(removed[0])
    if len(removed) == len(added) == 1:
        return Swap(removed[0], added[0])
    if len(removed) == len(added) and removed:
        return MultiSwap(removed, added)
    return Replace(tuple(sorted(new)))


def apply_move(g: OwnedMultiGraph, u: int, m, cap: int) -> OwnedMultiGraph:
    if not 0 <= u < g.n:
        raise InvalidTargetError(f"agent {u} not in 0..{g.n - 1}")
    return g.with_strategy(u, resulting_strategy(g.strategy(u), m), cap)


# -- exhaustive best response ---------------------------------------------------

def _others(g: OwnedMultiGraph, u: int) -> tuple:
    """Pair multiplicities with ``u``'s own edges removed."""
    out = list(g.mults())
    owned = g.owned_counts(u)
    for v, i in incident_pairs(g.n, u):
        out[i] -= owned[v]
    return tuple(out)


def _rooms(n: int, others: tuple, u: int, cap: int) -> list:
    return [(v, i, max(0, cap - others[i])) for v, i in incident_pairs(n, u)]


def candidate_count(g: OwnedMultiGraph, u: int, cap: int) -> int:
    return prod(r + 1 for _, _, r in _rooms(g.n, _others(g, u), u, cap))


def iter_candidates(n: int, others: tuple, u: int, cap: int):
    """Yield ``(counts, mults)`` for every admissible strategy of ``u``."""
    rooms = _rooms(n, others, u, cap)
    base = list(others)
    for counts in product(*(range(r + 1) for _, _, r in rooms)):
        mults = base[:]
        for (_, i, _), c in zip(rooms, counts):
            mults[i] += c
        yield counts, tuple(mults)


def min_cost_given_others(n: int, others: tuple, u: int, cfg: GameConfig) -> ExtCost:
    """Lowest cost ``u`` can reach against fixed edges of everyone else."""
    best = INF
    alpha, model = cfg.alpha, cfg.model
    for counts, mults in iter_candidates(n, others, u, cfg.cap):
        c = alpha * sum(counts) + distance_terms(model, n, mults)[u]
        if c < best:
            best = c
    return best


@dataclass
class BestResponseResult:
    agent: int
    strategy: tuple
    cost: ExtCost
    current_strategy: tuple
    current_cost: ExtCost
    improving: bool
    ties: int
    optima: list = field(default_factory=list, repr=False)

    @property
    def gain(self) -> ExtCost:
        """Cost decrease of switching to the best response (``inf - inf`` is 0)."""
        if self.cost == self.current_cost:
            return Fraction(0)
        return self.current_cost - self.cost

    @property
    def move(self):
        return classify_change(self.current_strategy, self.strategy)


def best_response_exact(g: OwnedMultiGraph, cfg: GameConfig, u: int, budget: int | None = None) -> BestResponseResult:
    if not 0 <= u < g.n:
        raise InvalidTargetError(f"agent {u} not in 0..{g.n - 1}")
    n = g.n
    others = _others(g, u)
    check_budget(candidate_count(g, u, cfg.cap), budget)
    current = g.strategy(u)
    terms = distance_terms(cfg.model, n, g.mults())
    current_cost = cfg.alpha * len(current) + terms[u]
    rooms = _rooms(n, others, u, cfg.cap)
    best = INF
    optima = []
    for counts, mults in iter_candidates(n, others, u, cfg.cap):
        c = cfg.alpha * sum(counts) + distance_terms(cfg.model, n, mults)[u]
        if c < best:
            best, optima = c, [counts]
        elif c == best:
            optima.append(counts)
    strategies = sorted(
        tuple(v for (v, _, _), c in zip(rooms, counts) for _ in range(c)) for counts in optima
    )
    improving = best < current_cost
    if improving:
        chosen, chosen_cost = strategies[0], best
    else:
        chosen, chosen_cost = current, current_cost
    return BestResponseResult(u, chosen, chosen_cost, current, current_cost, improving,
                              len(strategies), strategies)


@dataclass
class Witness:
    agent: int
    strategy: tuple
    current_cost: ExtCost
    new_cost: ExtCost

    @property
    def delta(self) -> ExtCost:
        return self.current_cost - self.new_cost


@dataclass
class NashCheck:
    is_ne: bool
    witness: Witness | None = None

    def __bool__(self):
        return self.is_ne


def is_nash_equilibrium(g: OwnedMultiGraph, cfg: GameConfig, budget: int | None = None) -> NashCheck:
    for u in range(g.n):
        br = best_response_exact(g, cfg, u, budget)
        if br.improving:
            return NashCheck(False, Witness(u, br.strategy, br.current_cost, br.cost))
    return NashCheck(True)


# -- buy/delete monotonicity ----------------------------------------------------

@dataclass
class MonotoneReport:
    agent: int
    single_buy_improves: bool
    multi_buy_improves: bool
    single_delete_improves: bool
    multi_delete_improves: bool

    @property
    def holds(self) -> bool:
        buy_ok = self.single_buy_improves or not self.multi_buy_improves
        delete_ok = self.single_delete_improves or not self.multi_delete_improves
        return buy_ok and delete_ok

    def __bool__(self):
        return self.holds


def check_monotone_buy_delete(g: OwnedMultiGraph, cfg: GameConfig, u: int,
                              budget: int | None = None) -> MonotoneReport:
    """Exhaustively test: no single buy (delete) improves => no multi-buy (multi-delete) does.

    Buys add edges on top of ``S_u`` within the pair cap; deletes remove a
    sub-multiset of ``S_u``.
    """
    n, alpha = g.n, cfg.alpha
    mults = g.mults()
    owned = g.owned_counts(u)
    pairs_u = incident_pairs(n, u)
    rooms = [max(0, cfg.cap - mults[i]) for _, i in pairs_u]
    keep = [owned[v] for v, _ in pairs_u]
    check_budget(prod(r + 1 for r in rooms) + prod(k + 1 for k in keep), budget)
    terms = distance_terms(cfg.model, n, mults)
    base = alpha * sum(owned.values()) + terms[u]

    def cost_after(delta):
        new = list(mults)
        for (_, i), d in zip(pairs_u, delta):
            new[i] += d
        new = tuple(new)
        return alpha * (sum(owned.values()) + sum(delta)) + distance_terms(cfg.model, n, new)[u]

    flags = {"single_buy": False, "multi_buy": False, "single_delete": False, "multi_delete": False}
    for delta in product(*(range(r + 1) for r in rooms)):
        size = sum(delta)
        if size and cost_after(delta) < base:
            flags["single_buy" if size == 1 else "multi_buy"] = True
    for removed in product(*(range(k + 1) for k in keep)):
        size = sum(removed)
        if size and cost_after([-r for r in removed]) < base:
            flags["single_delete" if size == 1 else "multi_delete"] = True
    return MonotoneReport(u, flags["single_buy"], flags["multi_buy"],
                          flags["single_delete"], flags["multi_delete"])


# -- neighbourhood profile ----------------------------------------------------

@dataclass
class NeighborhoodProfile:
    agent: int
    edges_total: int
    edges_before_purchase: int
    expected: dict  # node -> expected distance from the agent
    neighbor_violations: list
    non_neighbor_violations: list

    @property
    def satisfied(self) -> bool:
        return not self.neighbor_violations and not self.non_neighbor_violations

    @property
    def violations(self) -> list:
        return sorted(self.neighbor_violations + self.non_neighbor_violations)

    def window(self, reading: str = "after") -> tuple:
        """Open edge-price interval ``(1 - 1/(E+1), 1 + 1/(E(E-1)))`` for the chosen edge count."""
        e = self.edges_total if reading == "after" else self.edges_before_purchase
        return best_response_window(e)


def best_response_window(edge_count: int) -> tuple:
    if edge_count < 2:
        raise WindowEmptyError(f"no window for |E| = {edge_count}")
    e = edge_count
    return 1 - Fraction(1, e + 1), 1 + Fraction(1, e * (e - 1))


def pairwise_expected_distances(g: OwnedMultiGraph, u: int) -> list:
    """Expected hop distance from ``u`` to every node after one random deletion."""
    if not g.edges:
        return [0 if v == u else INF for v in range(g.n)]
    totals = [Fraction(0)] * g.n
    for i in range(len(g.edges)):
        d = distances_from(g.without_edge(i), u)
        totals = [t + x for t, x in zip(totals, d)]
    return [t if t == INF else t / len(g.edges) for t in totals]


def lemma3_profile(g: OwnedMultiGraph, u: int) -> NeighborhoodProfile:
    """Check whether ``u`` sits at expected distance ``1 + 1/|E|`` from each
    neighbor and exactly 2 from each non-neighbor.

    ``u`` must not be an endpoint of a doubled pair.
    """
    counts = g.pair_counts()
    if any(m >= 2 and u in pair for pair, m in counts.items()):
        raise PreconditionError(f"agent {u} is an endpoint of a multi-edge")
    e = g.m
    exp = pairwise_expected_distances(g, u)
    nbrs = g.neighbors(u)
    target_nbr = 1 + Fraction(1, e) if e else INF
    nv = [v for v in sorted(nbrs) if exp[v] != target_nbr]
    nn = [v for v in range(g.n) if v != u and v not in nbrs and exp[v] != 2]
    owned = sum(1 for x in g.edges if x.owner == u)
    return NeighborhoodProfile(u, e, e - owned, {v: exp[v] for v in range(g.n) if v != u}, nv, nn)


def single_moves(g: OwnedMultiGraph, u: int, cap: int) -> list:
    """All single deletes, buys and swaps of ``u`` in scan order (each lexicographic)."""
    n = g.n
    owned = g.owned_counts(u)
    mults = g.mults()
    idx = dict(incident_pairs(n, u))
    deletes = [Delete(v) for v in sorted(owned)]
    buys = [Buy(v) for v in sorted(idx) if mults[idx[v]] < cap]
    swaps = []
    for old in sorted(owned):
        for new in sorted(idx):
            if new != old and mults[idx[new]] < cap:
                swaps.append(Swap(old, new))
    return deletes + buys + swaps


__all__ = [
    "Buy", "Delete", "Swap", "MultiSwap", "Replace", "apply_move", "classify_change",
    "resulting_strategy", "best_response_exact", "BestResponseResult", "is_nash_equilibrium",
    "NashCheck", "Witness", "check_monotone_buy_delete", "MonotoneReport", "lemma3_profile",
    "NeighborhoodProfile", "best_response_window", "single_moves", "min_cost_given_others",
    "iter_candidates", "candidate_count", "pairwise_expected_distances",
]
