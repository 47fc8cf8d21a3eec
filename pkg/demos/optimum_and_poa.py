"""Brute-force optima across edge prices, then equilibrium quality."""

from fractions import Fraction

from advncg.experiments import partial_doubling_midpoints, log_grid, opt_sweep, poa_grid

# As edges get pricier the optimum sheds parallel edges: DG_4, DG_{4,k}, G_4, then a cycle.
for row in opt_sweep(4, [Fraction(1, 100)] + partial_doubling_midpoints(4) + [Fraction(1), Fraction(10)]):
    print(row.alpha, row.cost, row.edge_count, row.labels)

# Edge counts along a wide logarithmic grid never increase.
print([r.edge_count for r in opt_sweep(3, log_grid("1/1000", 10 ** 6, 20))])

# At n = 3 the best equilibrium is optimal at alpha = 1/6 but not just above 1/5.
for cell in poa_grid(3, [Fraction(1, 6), Fraction(1, 5) + Fraction(1, 1000)]):
    print("n=3 alpha", cell.alpha, "PoA", cell.poa, "PoS", cell.pos)

# For expensive edges the doubled star is the worst equilibrium, close to 2(n-1)/n times optimal.
(cell,) = poa_grid(4, [10 ** 9])
print("n=4 PoA", float(cell.poa), "worst", cell.worst_ne_label)
