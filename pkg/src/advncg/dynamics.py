"""Sequential improving-move dynamics, cycle detection and weak-acyclicity probes.

Schedules:

* ``round-robin``: agents ``0, 1, ..., n-1, 0, ...``.
* ``random``: a seeded uniform choice among agents not yet known to be stable
  since the last move.
* ``adversarial``: exhaustive search of the improving-move graph from the
  start state.  If a cycle is reachable it is reported; otherwise the run
  follows a longest improving path to an equilibrium.

Policies:

* ``best-response``: the mover switches to its exhaustive best response.
* ``first-improving``: the first strictly improving single move in the order
  deletes, buys, swaps (each lexicographic); if none exists the agent falls
  back to its best response, so a state where every agent passes is an NE.
* ``improving``: any strictly improving strategy change.  Under a fixed
  schedule the lexicographically least improving strategy is played; under
  the adversarial schedule every improving change is an arc, which is the
  move graph that weak acyclicity is about.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from .cost import GameConfig, distance_terms
from .extcost import ExtCost, format_exact
from .graph import OwnedMultiGraph, all_owned_states, canonical_key, key_digest
from .moves import (Replace, best_response_exact, classify_change, is_nash_equilibrium,
                    iter_candidates, resulting_strategy, single_moves, _others)

SCHEDULES = ("round-robin", "random", "adversarial")
POLICIES = ("best-response", "first-improving", "improving")


@dataclass
class DynamicsRun:
    initial: OwnedMultiGraph
    schedule: str = "round-robin"
    policy: str = "best-response"
    max_steps: int = 1000
    seed: int | None = None

    def __post_init__(self):
        if self.schedule not in SCHEDULES:
            raise ValueError(f"schedule must be one of {SCHEDULES}")
        if self.policy not in POLICIES:
            raise ValueError(f"policy must be one of {POLICIES}")
        if self.max_steps < 0:
            raise ValueError("max_steps must be nonnegative")


@dataclass
class TraceStep:
    step: int
    agent: int
    move: object
    cost_before: ExtCost
    cost_after: ExtCost
    key: tuple

    @property
    def key_hash(self) -> str:
        return key_digest(self.key)


@dataclass
class Converged:
    graph: OwnedMultiGraph
    steps: int
    trace: list = field(default_factory=list)
    kind = "converged"


@dataclass
class CycleDetected:
    key: tuple
    cycle_length: int
    first_seen: int  # step count after which the repeated state first appeared
    graph: OwnedMultiGraph
    trace: list = field(default_factory=list)
    kind = "cycle"

    @property
    def cycle_steps(self) -> list:
        return self.trace[self.first_seen:]


@dataclass
class BudgetExhausted:
    steps: int
    graph: OwnedMultiGraph
    trace: list = field(default_factory=list)
    kind = "budget"


def _cost(g: OwnedMultiGraph, cfg: GameConfig, u: int, strategy) -> ExtCost:
    h = g.with_strategy(u, strategy, cfg.cap)
    return cfg.alpha * len(strategy) + distance_terms(cfg.model, h.n, h.mults())[u]


def choose_move(g: OwnedMultiGraph, cfg: GameConfig, u: int, policy: str = "best-response",
                budget: int | None = None):
    """Return ``(new_strategy, move, cost_before, cost_after)`` or ``None`` if ``u`` is stable."""
    current = g.strategy(u)
    if policy == "first-improving":
        before = _cost(g, cfg, u, current)
        for m in single_moves(g, u, cfg.cap):
            new = resulting_strategy(current, m)
            after = _cost(g, cfg, u, new)
            if after < before:
                return new, m, before, after
    if policy == "improving":
        arcs = [a for a in improving_successors(g, cfg, "improving") if a[0] == u]
        if not arcs:
            return None
        _, new, before, after = arcs[0]
        return new, classify_change(current, new), before, after
    br = best_response_exact(g, cfg, u, budget)
    if not br.improving:
        return None
    return br.strategy, classify_change(current, br.strategy), br.current_cost, br.cost


def run_dynamics(run: DynamicsRun, cfg: GameConfig, budget: int | None = None):
    if run.schedule == "adversarial":
        return _run_adversarial(run, cfg, budget)
    g = run.initial
    n = g.n
    rng = random.Random(run.seed)
    seen = {canonical_key(g): 0}
    trace = []
    stable = set()
    turn = 0
    steps = 0
    while len(stable) < n:
        if run.schedule == "round-robin":
            u = turn % n
            turn += 1
        else:
            u = rng.choice(sorted(set(range(n)) - stable))
        choice = choose_move(g, cfg, u, run.policy, budget)
        if choice is None:
            stable.add(u)
            continue
        if steps >= run.max_steps:
            return BudgetExhausted(steps, g, trace)
        new, move, before, after = choice
        if not after < before:
            raise AssertionError(f"non-improving move {move} by agent {u}")
        g = g.with_strategy(u, new, cfg.cap)
        steps += 1
        key = canonical_key(g)
        trace.append(TraceStep(steps, u, move, before, after, key))
        if key in seen:
            return CycleDetected(key, steps - seen[key], seen[key], g, trace)
        seen[key] = steps
        stable = {u} if run.policy == "best-response" else set()
    check = is_nash_equilibrium(g, cfg, budget)
    if not check:
        raise AssertionError(f"dynamics stopped at a non-equilibrium: {check.witness}")
    return Converged(g, steps, trace)


# -- improving-move graph ---------------------------------------------------------

def improving_successors(g: OwnedMultiGraph, cfg: GameConfig, arcs: str = "improving"):
    """All ``(agent, strategy, cost_before, cost_after)`` arcs leaving ``g``.

    ``arcs="improving"``: every strictly improving strategy change;
    ``"best-response"``: only changes to an optimal strategy;
    ``"first-improving"``: improving single moves, plus best responses for
    agents without one.
    """
    n = g.n
    mults = g.mults()
    terms = distance_terms(cfg.model, n, mults)
    out = []
    for u in range(n):
        current = g.strategy(u)
        before = cfg.alpha * len(current) + terms[u]
        if arcs == "first-improving":
            found = False
            for m in single_moves(g, u, cfg.cap):
                new = resulting_strategy(current, m)
                after = _cost(g, cfg, u, new)
                if after < before:
                    out.append((u, new, before, after))
                    found = True
            if found:
                continue
        others = _others(g, u)
        incident = [v for v in range(n) if v != u]
        options = []
        for counts, cand in iter_candidates(n, others, u, cfg.cap):
            c = cfg.alpha * sum(counts) + distance_terms(cfg.model, n, cand)[u]
            if c < before:
                strategy = tuple(v for v, k in zip(incident, counts) for _ in range(k))
                options.append((c, strategy))
        if not options:
            continue
        if arcs != "improving":
            best = min(c for c, _ in options)
            options = [o for o in options if o[0] == best]
        for c, strategy in sorted(options, key=lambda o: o[1]):
            out.append((u, strategy, before, c))
    return out


def _run_adversarial(run: DynamicsRun, cfg: GameConfig, budget):
    arcs = run.policy
    start = run.initial
    succ = {}
    graphs = {canonical_key(start): start}

    def expand(key):
        if key not in succ:
            g = graphs[key]
            lst = []
            for u, strategy, before, after in improving_successors(g, cfg, arcs):
                h = g.with_strategy(u, strategy, cfg.cap)
                k = canonical_key(h)
                graphs.setdefault(k, h)
                lst.append((k, u, strategy, before, after))
            succ[key] = lst
        return succ[key]

    def step_of(i, parent_key, arc):
        k, u, strategy, before, after = arc
        move = classify_change(graphs[parent_key].strategy(u), strategy)
        return TraceStep(i, u, move, before, after, k)

    # iterative DFS with colours; a grey target means a reachable cycle
    root = canonical_key(start)
    colour = {root: 1}
    path = [(root, None)]
    iters = [iter(expand(root))]
    expanded = 1
    while iters:
        arc = next(iters[-1], None)
        if arc is None:
            colour[path[-1][0]] = 2
            iters.pop()
            path.pop()
            continue
        k = arc[0]
        c = colour.get(k, 0)
        if c == 1:
            keys = [p[0] for p in path]
            first = keys.index(k)
            chain = path[1:] + [(k, arc)]
            trace = []
            for i, (_, a) in enumerate(chain, start=1):
                trace.append(step_of(i, keys[i - 1], a))
            return CycleDetected(k, len(path) - first, first, graphs[k], trace)
        if c == 0:
            if expanded >= max(run.max_steps, 1):
                return BudgetExhausted(len(path) - 1, graphs[path[-1][0]], [])
            expanded += 1
            colour[k] = 1
            path.append((k, arc))
            iters.append(iter(expand(k)))

    # acyclic: follow a longest path to a sink (an equilibrium)
    longest = {}
    stack = [(root, False)]
    while stack:
        key, done = stack.pop()
        if done:
            best = (0, None)
            for arc in succ[key]:
                cand = (longest[arc[0]][0] + 1, arc)
                if cand[0] > best[0] or (cand[0] == best[0] and best[1] is not None and arc[1:3] < best[1][1:3]):
                    best = cand
            longest[key] = best
            continue
        if key in longest:
            continue
        stack.append((key, True))
        for arc in succ[key]:
            if arc[0] not in longest:
                stack.append((arc[0], False))
    trace = []
    key = root
    while longest[key][1] is not None:
        arc = longest[key][1]
        trace.append(step_of(len(trace) + 1, key, arc))
        key = arc[0]
    final = graphs[key]
    if not is_nash_equilibrium(final, cfg, budget):
        raise AssertionError("adversarial run ended at a non-equilibrium")
    return Converged(final, len(trace), trace)


def replay(initial: OwnedMultiGraph, steps, cap: int) -> OwnedMultiGraph:
    """Apply the moves of a trace in order and return the final state."""
    g = initial
    for st in steps:
        g = g.with_strategy(st.agent, resulting_strategy(g.strategy(st.agent), st.move), cap)
    return g


# -- weak acyclicity ----------------------------------------------------------------

@dataclass
class ReachesNE:
    path: list  # (agent, new strategy) pairs from the start state
    equilibrium: OwnedMultiGraph
    explored: int
    verdict = "reaches-ne"


@dataclass
class NoNEReachable:
    explored: int
    exhausted: bool = True
    verdict = "no-ne-reachable"


@dataclass
class Inconclusive:
    explored: int
    verdict = "inconclusive"


def probe_weak_acyclicity(g0: OwnedMultiGraph, cfg: GameConfig, budget: int = 10_000):
    """Breadth-first search of improving moves for a path to an equilibrium.

    ``budget`` bounds the number of states whose moves are enumerated.
    """
    parent = {canonical_key(g0): None}
    states = {canonical_key(g0): g0}
    queue = deque([canonical_key(g0)])
    explored = 0
    while queue:
        if explored >= budget:
            return Inconclusive(explored)
        key = queue.popleft()
        g = states[key]
        explored += 1
        arcs = improving_successors(g, cfg, "improving")
        if not arcs:
            path = []
            k = key
            while parent[k] is not None:
                prev, u, strategy = parent[k]
                path.append((u, Replace(strategy)))
                k = prev
            return ReachesNE(path[::-1], g, explored)
        for u, strategy, _, _ in arcs:
            h = g.with_strategy(u, strategy, cfg.cap)
            k = canonical_key(h)
            if k not in parent:
                parent[k] = (key, u, strategy)
                states[k] = h
                queue.append(k)
    return NoNEReachable(explored)


def classify_state_space(n: int, cfg: GameConfig, budget: int = 10_000) -> dict:
    """Probe every ownership-resolved state on ``n`` agents; ``{key: verdict}``."""
    return {canonical_key(g): probe_weak_acyclicity(g, cfg, budget)
            for g in all_owned_states(n, cfg.cap)}


def trace_rows(trace) -> list:
    return [
        {
            "step": st.step,
            "agent": st.agent,
            "move_kind": st.move.kind,
            "move_detail": st.move.detail(),
            "cost_before": format_exact(st.cost_before),
            "cost_after": format_exact(st.cost_after),
            "key_hash": st.key_hash,
        }
        for st in trace
    ]

