"""Improving-move dynamics, a reachable cycle, and weak acyclicity at n = 3."""

from advncg import GameConfig, build_family
from advncg.dynamics import DynamicsRun, classify_state_space, replay, run_dynamics
from advncg.graph import OwnedMultiGraph, canonical_key

# Round-robin best responses from a path settle quickly.
out = run_dynamics(DynamicsRun(build_family("path3")), GameConfig(1))
print("path3:", out.kind, "after", out.steps, "moves")
for st in out.trace:
    print("  ", st.step, st.agent, st.move, st.cost_before, "->", st.cost_after)

# Searching every improving move from this 4-agent state finds a cycle.
start = OwnedMultiGraph(4, ((0, 1, 0), (0, 1, 1), (0, 2, 2), (0, 2, 2), (1, 3, 3), (2, 3, 2)))
cyc = run_dynamics(DynamicsRun(start, "adversarial", "improving", max_steps=20000), GameConfig(1))
print("cycle of length", cyc.cycle_length)
entry = replay(start, cyc.trace[:cyc.first_seen], 2)
assert canonical_key(replay(entry, cyc.cycle_steps, 2)) == canonical_key(entry)

# From every 3-agent state some improving path still reaches an equilibrium.
for alpha in ("1/10", "1", "10"):
    verdicts = classify_state_space(3, GameConfig(alpha))
    print("alpha", alpha, {v.verdict for v in verdicts.values()}, len(verdicts), "states")
