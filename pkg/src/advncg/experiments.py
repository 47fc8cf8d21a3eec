"""Grid experiments: optimum sweeps and price-of-anarchy / price-of-stability cells.

Equilibria depend on who owns which edge, so the exhaustive PoA search walks
ownership-resolved states, not bare multigraphs.  An agent's best achievable
cost depends only on ``(agent, edges of everyone else)``; that value is
memoized, so each state costs one table lookup per agent.

For ``n >= 5`` the exhaustive state space is out of reach and the sampled mode
checks the named families plus seeded random states.  Sampled cells carry a
witnessed ratio but leave the PoA/PoS columns empty.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Sequence

from .cost import GameConfig, Model, distance_terms, expected_distance_cost
from .errors import check_budget
from .extcost import INF, ExtCost, format_decimal, format_exact, is_inf, parse_alpha
from .families import (FamilySpec, build_family, family_label, partial_doubling_window,
                       optimum_bruteforce)
from .graph import DEFAULT_CAP, Edge, OwnedMultiGraph, adjacency_masks, pairs
from .moves import check_monotone_buy_delete, min_cost_given_others


# -- alpha grids ---------------------------------------------------------------

def log_grid(lo, hi, points: int) -> list:
    """``points`` rationals spaced evenly in log10 between ``lo`` and ``hi`` (3 significant digits)."""
    lo, hi = parse_alpha(lo), parse_alpha(hi)
    if points < 2:
        return [lo]
    a, b = Decimal(lo.numerator) / lo.denominator, Decimal(hi.numerator) / hi.denominator
    la, lb = a.log10(), b.log10()
    out = []
    for i in range(points):
        x = Decimal(10) ** (la + (lb - la) * i / (points - 1))
        out.append(Fraction(format(x, ".3g")) if 0 < i < points - 1 else (lo if i == 0 else hi))
    return out


def partial_doubling_midpoints(n: int) -> list:
    """Midpoint of the optimality window of each ``DG_{n,k}``, ``k`` descending."""
    return [sum(partial_doubling_window(n, k)) / 2 for k in range(comb(n, 2) - 1, 0, -1)]


def parse_alpha_grid(text: str, n: int | None = None) -> list:
    """Comma-separated rationals, or a preset: ``lemma2-windows``, ``log:LO:HI:POINTS``."""
    text = text.strip()
    if text == "lemma2-windows":
        if n is None:
            raise ValueError("lemma2-windows needs n")
        return partial_doubling_midpoints(n)
    if text.startswith("log:"):
        _, lo, hi, points = text.split(":")
        return log_grid(lo, hi, int(points))
    return [parse_alpha(x) for x in text.split(",") if x.strip()]


def _pool_map(fn, items, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# -- optimum sweep -------------------------------------------------------------

@dataclass
class OptSweepRow:
    alpha: Fraction
    cost: ExtCost
    edge_count: str
    minimizer_count: int
    labels: str

    def as_row(self) -> dict:
        return {
            "alpha": format_exact(self.alpha),
            "alpha_decimal": format_decimal(self.alpha),
            "opt_cost": format_exact(self.cost),
            "opt_cost_decimal": format_decimal(self.cost),
            "edge_count": self.edge_count,
            "minimizer_count": self.minimizer_count,
            "family_label": self.labels,
        }


def _opt_row(args):
    n, a, cap, budget = args
    res = optimum_bruteforce(n, a, cap, budget)
    counts = res.edge_counts
    labels = sorted(set(res.labels()), key=lambda s: (s == "other", s))
    return OptSweepRow(a, res.cost, "/".join(map(str, counts)), len(res.minimizers), ";".join(labels))


def opt_sweep(n: int, alphas: Iterable, cap: int = DEFAULT_CAP, budget: int | None = None,
              workers: int = 1) -> list:
    return _pool_map(_opt_row, [(n, parse_alpha(a), cap, budget) for a in alphas], workers)


# -- equilibria over ownership-resolved states ------------------------------------

def _owned_by(n: int, owners: Sequence[int], mults: Sequence[int]) -> list:
    """Per-agent owned-count vectors over pairs (``owners[i]`` = smaller endpoint's share)."""
    out = [[0] * len(mults) for _ in range(n)]
    for i, (a, b) in enumerate(pairs(n)):
        out[a][i] = owners[i]
        out[b][i] = mults[i] - owners[i]
    return out


class _NashOracle:
    """Decides NE status of raw ``(mults, owners)`` states with memoized best costs."""

    def __init__(self, n: int, cfg: GameConfig):
        self.n, self.cfg = n, cfg
        self.best = {}

    def best_cost(self, u: int, others: tuple) -> ExtCost:
        key = (u, others)
        if key not in self.best:
            self.best[key] = min_cost_given_others(self.n, others, u, self.cfg)
        return self.best[key]

    def costs(self, mults, owners) -> list:
        terms = distance_terms(self.cfg.model, self.n, tuple(mults))
        owned = _owned_by(self.n, owners, mults)
        return [self.cfg.alpha * sum(owned[u]) + terms[u] for u in range(self.n)], owned

    def is_ne(self, mults, owners) -> bool:
        costs, owned = self.costs(mults, owners)
        for u in range(self.n):
            others = tuple(m - o for m, o in zip(mults, owned[u]))
            if self.best_cost(u, others) < costs[u]:
                return False
        return True


def _diameter_of(n: int, mults) -> ExtCost:
    adj = adjacency_masks(n, mults)
    worst = 0
    full = (1 << n) - 1
    for s in range(n):
        frontier = reached = 1 << s
        dist = 0
        while reached != full:
            nxt = 0
            for v in range(n):
                if frontier >> v & 1:
                    nxt |= adj[v]
            frontier = nxt & ~reached
            if not frontier:
                return INF
            reached |= frontier
            dist += 1
        worst = max(worst, dist)
    return worst


@dataclass
class PoAGridCell:
    n: int
    alpha: Fraction
    opt_cost: ExtCost
    worst_ne_cost: ExtCost | None
    best_ne_cost: ExtCost | None
    ne_count: int
    search_complete: bool
    max_ne_diameter: ExtCost | None = None
    worst_ne_label: str = ""

    @property
    def witness_ratio(self) -> Fraction | None:
        """Worst equilibrium found over the optimum; a lower bound on PoA when sampled."""
        if self.worst_ne_cost is None or is_inf(self.worst_ne_cost):
            return None
        return self.worst_ne_cost / self.opt_cost

    @property
    def poa(self) -> Fraction | None:
        return self.witness_ratio if self.search_complete else None

    @property
    def pos(self) -> Fraction | None:
        if not self.search_complete or self.best_ne_cost is None:
            return None
        return self.best_ne_cost / self.opt_cost

    def as_row(self) -> dict:
        def both(x, name):
            if x is None:
                return {name: "", name + "_decimal": ""}
            return {name: format_exact(x), name + "_decimal": format_decimal(x)}

        row = {"n": self.n}
        row.update(both(self.alpha, "alpha"))
        row.update(both(self.opt_cost, "opt_cost"))
        row.update(both(self.worst_ne_cost, "worst_ne_cost"))
        row.update(both(self.best_ne_cost, "best_ne_cost"))
        row.update(both(self.poa, "poa"))
        row.update(both(self.pos, "pos"))
        row.update(both(self.witness_ratio, "witness_ratio"))
        row["ne_count"] = self.ne_count
        row["search_complete"] = self.search_complete
        row["max_ne_diameter"] = "" if self.max_ne_diameter is None else self.max_ne_diameter
        row["worst_ne_label"] = self.worst_ne_label
        return row


def _splits(cap):
    return [(m, k) for m in range(cap + 1) for k in range(m + 1)]


def _raw_states(n: int, cap: int):
    for choice in product(_splits(cap), repeat=len(pairs(n))):
        yield tuple(m for m, _ in choice), tuple(k for _, k in choice)


def _owners_of(g: OwnedMultiGraph) -> tuple:
    counts = {}
    for e in g.edges:
        if e.owner == e.u:
            counts[(e.u, e.v)] = counts.get((e.u, e.v), 0) + 1
    return tuple(counts.get(p, 0) for p in pairs(g.n))


def sample_states(n: int, cap: int, samples: int, seed: int) -> list:
    """Named families on ``n`` nodes followed by ``samples`` seeded random states."""
    specs = [FamilySpec("DG", n), FamilySpec("G", n), FamilySpec("DS", n), FamilySpec("P", n),
             FamilySpec("DP", n)]
    if n >= 3:
        specs.append(FamilySpec("C", n))
    if n >= 3 and n % 2:
        specs.append(FamilySpec("F", n))
    specs += [FamilySpec("DGk", n, k) for k in range(1, comb(n, 2))]
    out = []
    for spec in specs:
        g = build_family(spec)
        if all(m <= cap for m in g.mults()):
            out.append((g.mults(), _owners_of(g)))
    rng = random.Random(seed)
    splits = _splits(cap)
    for _ in range(samples):
        choice = [rng.choice(splits) for _ in pairs(n)]
        out.append((tuple(m for m, _ in choice), tuple(k for _, k in choice)))
    return out


def _poa_cell(args):
    n, a, cap, sampled, samples, seed, budget, model = args
    cfg = GameConfig(a, model, cap)
    opt = optimum_bruteforce(n, a, cap, budget, model)
    oracle = _NashOracle(n, cfg)
    if sampled:
        states = sample_states(n, cap, samples, seed)
    else:
        check_budget(len(_splits(cap)) ** len(pairs(n)), budget)
        states = _raw_states(n, cap)
    worst = best = None
    worst_mults = None
    count = 0
    max_diam = None
    seen = set()
    for mults, owners in states:
        if (mults, owners) in seen:
            continue
        seen.add((mults, owners))
        if not oracle.is_ne(mults, owners):
            continue
        count += 1
        cost = a * sum(mults) + sum(distance_terms(cfg.model, n, mults))
        if worst is None or cost > worst:
            worst, worst_mults = cost, mults
        if best is None or cost < best:
            best = cost
        d = _diameter_of(n, mults)
        max_diam = d if max_diam is None else max(max_diam, d)
    label = family_label(n, worst_mults) if worst_mults is not None else ""
    return PoAGridCell(n, a, opt.cost, worst, best, count, not sampled, max_diam, label)


def poa_grid(n: int, alphas: Iterable, cap: int = DEFAULT_CAP, sampled: bool = False,
             samples: int = 2000, seed: int = 0, budget: int | None = None,
             model: Model = Model.ADV, workers: int = 1) -> list:
    """One ``PoAGridCell`` per edge price, in grid order."""
    jobs = [(n, parse_alpha(a), cap, sampled, samples, seed, budget, Model.parse(model))
            for a in alphas]
    return _pool_map(_poa_cell, jobs, workers)


# -- buy/delete monotonicity sweep ------------------------------------------------

def agent_views(n: int, cap: int, u: int):
    """Every multigraph on ``n`` nodes with every split of ``u``'s incident ownership.

    Only ``u``'s own edges matter for ``u``'s moves, so pairs not touching ``u``
    are owned by their smaller endpoint.
    """
    ps = pairs(n)
    incident = [i for i, (a, b) in enumerate(ps) if u in (a, b)]
    for mults in product(range(cap + 1), repeat=len(ps)):
        for own in product(*(range(mults[i] + 1) for i in incident)):
            mine = dict(zip(incident, own))
            edges = []
            for i, (a, b) in enumerate(ps):
                if i in mine:
                    other = b if a == u else a
                    edges += [Edge(a, b, u)] * mine[i] + [Edge(a, b, other)] * (mults[i] - mine[i])
                else:
                    edges += [Edge(a, b, a)] * mults[i]
            yield OwnedMultiGraph(n, tuple(edges))


@dataclass
class MonotoneSweep:
    checks: int
    counterexamples: list  # (graph, agent, alpha, MonotoneReport)

    @property
    def finite_counterexamples(self) -> list:
        return [c for c in self.counterexamples
                if not is_inf(expected_distance_cost(c[0], c[1]))]


def buy_delete_sweep(ns: Iterable[int], alphas: Iterable, cap: int = DEFAULT_CAP) -> MonotoneSweep:
    """Run ``check_monotone_buy_delete`` for every agent of every state in ``agent_views``."""
    alphas = [parse_alpha(a) for a in alphas]
    checks = 0
    bad = []
    for n in ns:
        for u in range(n):
            for g in agent_views(n, cap, u):
                for a in alphas:
                    checks += 1
                    rep = check_monotone_buy_delete(g, GameConfig(a, cap=cap), u)
                    if not rep.holds:
                        bad.append((g, u, a, rep))
    return MonotoneSweep(checks, bad)
