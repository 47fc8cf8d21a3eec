"""Bridges and 2-cut-edges, and the dominating-set reduction behind the hardness result."""

from advncg import build_family
from advncg.hardness import (best_response_cds_correspondence, complete_graph, cycle_graph,
                             petersen_graph, verify_reduction_identity)
from advncg.structure import structure_report, two_cut_edges

# A doubled path has 2(n-1) edges and every one of them is a 2-cut-edge.
for n in range(3, 7):
    print(n, len(two_cut_edges(build_family(f"double-path{n}"))))
print(structure_report(build_family("c6")).as_row())

# Adding a universal node turns a dominating set into a connected 2-dominating one plus the hub.
for g in (cycle_graph(4), petersen_graph()):
    chk = verify_reduction_identity(g)
    print("gamma", chk.gamma, "reduced set", chk.cds_size, chk.holds)

# A fresh agent's best response buys exactly a minimum connected 2-dominating set.
for g in (complete_graph(3), complete_graph(4), cycle_graph(4)):
    rep = best_response_cds_correspondence(g)
    print(sorted(rep.cds), rep.passing_readings)
