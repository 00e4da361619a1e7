"""G2 acting on its 7-dimensional module: the index, then invariants restricted to a slice.

Run with ``python3 demos/g2_seven.py``.
"""
from coadjoint_workbench.arith import RandomSource
from coadjoint_workbench.indexcalc import index_of, rais_index, stabilizer
from coadjoint_workbench.irrep import build_irrep, dual
from coadjoint_workbench.poisson import invariant_space, is_invariant, restrict_at, restrict_to_subalgebra
from coadjoint_workbench.rootsys import chevalley
from coadjoint_workbench.semidirect import semidirect

src = RandomSource(1)
G2 = chevalley("G2")
V = build_irrep(G2, (1, 0))
S = semidirect(G2, V)
print(f"s = G2 x| V has dimension {S.dim}")

direct = index_of(S, src)
rais = rais_index(G2, V, src, direct=direct)
print(f"ind s = {direct.estimate} directly, {rais.estimate} as quotient dim + index of the stabilizer {rais.details}")

quad = invariant_space(S, (0, 2)).basis[0]
print("the invariant quadratic form on V*:")
print(quad.to_text())

inv = invariant_space(S, (2, 2))
F = inv.basis[0]
print(f"bi-degree (2,2): dimension {inv.dim} ({inv.status}), {len(F.terms)} terms")

xi = src.child("slice").vector(7, 9)
stab = stabilizer(dual(V), xi)
Q = restrict_to_subalgebra(restrict_at(F, xi), stab)
print(f"at xi = {xi} the stabilizer has dimension {len(stab)}")
print(f"F restricted to it: degree {Q.total_degree()}, invariant: {is_invariant(Q)}")
