import csv
import io
from fractions import Fraction

import pytest

from advncg.cost import GameConfig, agent_cost
from advncg.families import build_family
from advncg.graph import Edge, OwnedMultiGraph, canonical_key
from advncg.dynamics import (POLICIES, BudgetExhausted, Converged, CycleDetected, DynamicsRun,
                             Inconclusive, ReachesNE, classify_state_space, improving_successors,
                             probe_weak_acyclicity, replay, run_dynamics, trace_rows)
from advncg.moves import is_nash_equilibrium, resulting_strategy

# an n=4 state at alpha=1 from which an adversary can keep agents improving forever
CYCLE_START = OwnedMultiGraph(4, ((0, 1, 0), (0, 1, 1), (0, 2, 2), (0, 2, 2), (1, 3, 3), (2, 3, 2)))


def test_equilibrium_start_converges_immediately():
    out = run_dynamics(DynamicsRun(build_family("dg3")), GameConfig(Fraction(1, 6)))
    assert isinstance(out, Converged) and out.steps == 0 and out.trace == []


@pytest.mark.parametrize("policy", POLICIES)
@pytest.mark.parametrize("schedule", ["round-robin", "random", "adversarial"])
def test_path_converges_to_triangle_equilibrium(schedule, policy):
    cfg = GameConfig(1)
    out = run_dynamics(DynamicsRun(build_family("path3"), schedule, policy, seed=4), cfg)
    assert isinstance(out, Converged)
    if policy == "best-response":
        assert out.steps <= 3
    assert is_nash_equilibrium(out.graph, cfg)
    assert all(out.graph.multiplicity(a, b) >= 1 for a, b in ((0, 1), (0, 2), (1, 2)))


def test_zero_budget():
    out = run_dynamics(DynamicsRun(build_family("path3"), max_steps=0), GameConfig(1))
    assert isinstance(out, BudgetExhausted) and out.steps == 0
    out = run_dynamics(DynamicsRun(build_family("dg3"), max_steps=0), GameConfig(Fraction(1, 6)))
    assert isinstance(out, Converged)


def test_every_step_strictly_improves_and_keys_match():
    cfg = GameConfig(Fraction(1, 2))
    out = run_dynamics(DynamicsRun(OwnedMultiGraph(4, ()), "random", seed=9), cfg)
    g = OwnedMultiGraph(4, ())
    for st in out.trace:
        before = agent_cost(g, cfg, st.agent)
        g = g.with_strategy(st.agent, resulting_strategy(g.strategy(st.agent), st.move), cfg.cap)
        assert st.cost_before == before
        assert st.cost_after == agent_cost(g, cfg, st.agent) < before
        assert st.key == canonical_key(g)


def test_seeded_runs_are_deterministic():
    cfg = GameConfig(1)
    start = OwnedMultiGraph(5, ())
    a = run_dynamics(DynamicsRun(start, "random", "first-improving", seed=21), cfg)
    b = run_dynamics(DynamicsRun(start, "random", "first-improving", seed=21), cfg)
    assert trace_rows(a.trace) == trace_rows(b.trace)


def test_adversarial_finds_a_cycle_and_replay_closes_it():
    out = run_dynamics(DynamicsRun(CYCLE_START, "adversarial", "improving", max_steps=20000),
                       GameConfig(1))
    assert isinstance(out, CycleDetected)
    assert len(out.cycle_steps) == out.cycle_length
    assert canonical_key(replay(out.graph, out.cycle_steps, 2)) == out.key
    for st in out.trace:
        assert st.cost_after < st.cost_before


def test_fixed_schedule_cycle_detection():
    # round-robin with the "improving" policy: whatever happens, a reported cycle must close
    out = run_dynamics(DynamicsRun(CYCLE_START, "round-robin", "improving"), GameConfig(1))
    if isinstance(out, CycleDetected):
        start = replay(CYCLE_START, out.trace[:out.first_seen], 2)
        assert canonical_key(replay(start, out.cycle_steps, 2)) == out.key
    else:
        assert is_nash_equilibrium(out.graph, GameConfig(1))


def test_improving_successors_best_response_subset():
    cfg = GameConfig(1)
    g = build_family("path3")
    every = {(u, s) for u, s, _, _ in improving_successors(g, cfg, "improving")}
    best = {(u, s) for u, s, _, _ in improving_successors(g, cfg, "best-response")}
    assert best and best <= every


def test_probe_examples():
    v = probe_weak_acyclicity(build_family("dg3"), GameConfig(Fraction(1, 6)))
    assert isinstance(v, ReachesNE) and v.path == []
    v = probe_weak_acyclicity(build_family("dg3"), GameConfig(Fraction(1, 4)))
    assert isinstance(v, ReachesNE) and len(v.path) >= 1
    assert is_nash_equilibrium(v.equilibrium, GameConfig(Fraction(1, 4)))
    v = probe_weak_acyclicity(OwnedMultiGraph(6, ()), GameConfig(1), budget=1)
    assert isinstance(v, Inconclusive)


def test_probe_path_replays_to_the_equilibrium():
    cfg = GameConfig(1)
    v = probe_weak_acyclicity(CYCLE_START, cfg)
    g = CYCLE_START
    for agent, move in v.path:
        g = g.with_strategy(agent, move.strategy, cfg.cap)
    assert canonical_key(g) == canonical_key(v.equilibrium)


def test_state_space_classification_n3():
    verdicts = classify_state_space(3, GameConfig(1))
    assert len(verdicts) == 216
    assert all(isinstance(v, ReachesNE) for v in verdicts.values())


def test_trace_csv_columns():
    out = run_dynamics(DynamicsRun(build_family("path3")), GameConfig(1))
    rows = trace_rows(out.trace)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
    header = buf.getvalue().splitlines()[0]
    assert header == "step,agent,move_kind,move_detail,cost_before,cost_after,key_hash"
    assert rows[0]["cost_before"] == "inf" and rows[0]["cost_after"] == "14/3"


def test_run_validation():
    with pytest.raises(ValueError):
        DynamicsRun(build_family("c4"), schedule="sometimes")
    with pytest.raises(ValueError):
        DynamicsRun(build_family("c4"), policy="lazy")
    with pytest.raises(ValueError):
        DynamicsRun(build_family("c4"), max_steps=-1)
    assert Edge(0, 1, 0).owner == 0
