"""Walk the reduction trees: generic stabilizers and restricted modules.

Run with ``python3 demos/reduction_trees.py``.
"""
from coadjoint_workbench.arith import RandomSource
from coadjoint_workbench.casebook import reduction_edges, verify_reduction

for e in reduction_edges(include_extras=True):
    rep = verify_reduction(e, RandomSource(0))
    mod = rep.checks[2].computed if len(rep.checks) > 2 else rep.checks[-1].computed
    print(f"{e.name:<15} [{e.tree:<5}] H = {e.h_type:<3} dim {rep.checks[0].computed:<3} V2|H = {mod:<28} {rep.outcome}")
