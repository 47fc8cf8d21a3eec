"""Best responses and equilibrium checks on the standard families."""

from fractions import Fraction

from advncg import GameConfig, build_family
from advncg.families import dg_deletion_distance
from advncg.moves import best_response_exact, is_nash_equilibrium

# DG_n stops being stable once an agent gains by dropping one of its edges.
for n in (3, 4, 5):
    threshold = Fraction(1, n * (n - 1) - 1)
    g = build_family(f"dg{n}")
    stable = bool(is_nash_equilibrium(g, GameConfig(threshold)))
    above = is_nash_equilibrium(g, GameConfig(threshold + Fraction(1, 1000)))
    print(f"DG_{n}: NE at {threshold}: {stable}; just above: {bool(above)}, witness {above.witness}")
    print("   distance after one deletion:", dg_deletion_distance(n, 1))

# The doubled star holds from 1 - 1/(3n-4) upward; below that a leaf buys links to every other leaf.
for n in (3, 4, 5):
    sharp = 1 - Fraction(1, 3 * n - 4)
    ds = build_family(f"ds{n}")
    below = is_nash_equilibrium(ds, GameConfig(sharp - Fraction(1, 10 ** 4), cap=3))
    print(f"DS_{n}: NE at {sharp}: {bool(is_nash_equilibrium(ds, GameConfig(sharp, cap=3)))}; "
          f"below: leaf {below.witness.agent} plays {below.witness.strategy}")

# An exhaustive best response with every optimal strategy listed.
br = best_response_exact(build_family("path3"), GameConfig(1), 0)
print("path3 agent 0 best response:", br.strategy, br.cost, "ties:", br.ties)
