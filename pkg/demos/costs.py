"""Expected distance costs under a single random edge deletion."""

from fractions import Fraction

from advncg import GameConfig, Model, agent_costs, build_family, social_cost
from advncg.cost import expected_distance_cost, expected_distance_cost_naive

# A doubled triangle: every pair joined by two parallel edges.
dg3 = build_family("dg3")
cfg = GameConfig(Fraction(1))
print("DG_3 agent costs at alpha=1:", agent_costs(dg3, cfg))
print("DG_3 social cost:", social_cost(dg3, cfg))

# A 4-cycle: deleting any edge turns it into a path, so distances grow.
c4 = build_family("c4")
print("C_4 social cost at alpha=1:", social_cost(c4, cfg))

# The fast evaluator agrees with averaging over every deletion by hand.
for u in range(c4.n):
    assert expected_distance_cost(c4, u) == expected_distance_cost_naive(c4, u)

# A path has bridges, so its expected distance cost is infinite.
print("path3 social cost:", social_cost(build_family("path3"), cfg))

# The same graph priced by the other two cost models.
for model in (Model.NCG, Model.KLIEMANN):
    print(model.name, "C_4 social cost:", social_cost(c4, GameConfig(Fraction(1), model)))
