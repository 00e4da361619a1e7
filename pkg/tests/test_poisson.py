from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from coadjoint_workbench.algebra import abelian
from coadjoint_workbench.arith import RandomSource
from coadjoint_workbench.casebook import lemma_algebra, lemma_invariants
from coadjoint_workbench.errors import BudgetExceeded, MixedAlgebras
from coadjoint_workbench.indexcalc import stabilizer
from coadjoint_workbench.irrep import build_irrep, dual
from coadjoint_workbench.poisson import (
    MultiPoly,
    bracket_with_basis,
    invariant_space,
    is_invariant,
    jacobian_independence,
    parse_poly,
    poisson_bracket,
    restrict_at,
    restrict_to_subalgebra,
    weight_zero_monomials,
)
from coadjoint_workbench.rootsys import chevalley
from coadjoint_workbench.semidirect import semidirect

SRC = RandomSource(3)


@pytest.fixture(scope="module")
def sl2():
    return chevalley("A1")


@pytest.fixture(scope="module")
def g2v():
    L = chevalley("G2")
    R = build_irrep(L, (1, 0))
    return L, R, semidirect(L, R)


@pytest.fixture(scope="module")
def quad(g2v):
    return invariant_space(g2v[2], (0, 2)).basis[0]


@pytest.fixture(scope="module")
def inv22(g2v):
    return invariant_space(g2v[2], (2, 2))


def test_bracket_examples(sl2):
    e, h, f = (MultiPoly.var(sl2, x) for x in ("e(1)", "h1", "f(1)"))
    assert poisson_bracket(e, f) == h
    F = e * e * f + h * 3
    assert poisson_bracket(F, F).is_zero()
    with pytest.raises(MixedAlgebras):
        poisson_bracket(e, MultiPoly.var(abelian(2), 0))


def test_lemma_a1_h2():
    q = lemma_algebra()
    _, h2 = lemma_invariants(q)
    assert poisson_bracket(MultiPoly.var(q, "a1"), h2).is_zero()


def test_casimir_oracle(sl2):
    e, h, f = (MultiPoly.var(sl2, x) for x in ("e(1)", "h1", "f(1)"))
    C = h * h + e * f * 4
    # hand expansion: {h^2, e} = 2h{h, e} = 4he and {4ef, e} = 4e{f, e} = -4eh
    assert poisson_bracket(h * h, e) == h * e * 4
    assert poisson_bracket(e * f * 4, e) == e * h * -4
    assert is_invariant(C)
    assert not is_invariant(e)


def test_lemma_h1_invariant():
    h1, _ = lemma_invariants()
    assert is_invariant(h1)


def _oracle_monomials(S, dg, dv):
    g = [i for i, t in enumerate(S.grading) if t == "g"]
    v = [i for i, t in enumerate(S.grading) if t == "v"]
    out = set()
    for a in combinations_with_replacement(g, dg):
        for b in combinations_with_replacement(v, dv):
            idx = a + b
            if all(sum(S.weights[i][k] for i in idx) == 0 for k in range(len(S.weights[0]))):
                out.add(tuple(sorted((i, idx.count(i)) for i in set(idx))))
    return out


def test_weight_zero_monomial_examples(g2v):
    L, R, S = g2v
    assert len(weight_zero_monomials(S, (0, 2))) == 4 == len(_oracle_monomials(S, 0, 2))
    assert len(weight_zero_monomials(S, (0, 1))) == 1 == len(_oracle_monomials(S, 0, 1))
    lin = weight_zero_monomials(L, 1)
    assert {m[0][0] for m in lin} == set(L.cartan)


@pytest.mark.parametrize("d", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_weight_zero_monomials_match_oracle(g2v, d):
    S = g2v[2]
    assert set(weight_zero_monomials(S, d)) == _oracle_monomials(S, *d)


def test_invariant_space_examples(g2v, quad, inv22):
    S = g2v[2]
    q02 = invariant_space(S, (0, 2))
    assert q02.dim == 1 and q02.status == "exact"
    assert quad.bidegree() == (0, 2) and is_invariant(quad)
    assert quad.to_text() == "1 * v1 v7\n-1 * v2 v6\n1 * v3 v5\n-1/2 * v4^2\n"
    assert inv22.dim == 1 and inv22.status == "exact" and len(set(inv22.dims_per_prime.values())) == 1
    assert invariant_space(chevalley("G2"), (1, 0)).dim == 0
    assert invariant_space(chevalley("E6"), 1).dim == 0


def test_invariant_22_exact_oracle(g2v, inv22):
    exact = invariant_space(g2v[2], (2, 2), mode="exact")
    assert exact.dim == 1 and exact.basis[0] == inv22.basis[0]
    F = inv22.basis[0]
    assert F.sorted_terms()[0][1] == 1
    assert is_invariant(F)


def test_budget(g2v):
    with pytest.raises(BudgetExceeded):
        invariant_space(g2v[2], (2, 2), budget=50)


def test_text_round_trip(inv22):
    F = inv22.basis[0]
    text = F.to_text()
    G = MultiPoly.from_text(F.algebra, text)
    assert G == F and G.to_text() == text


def test_parse_poly_labels_with_parentheses(sl2):
    F = parse_poly(sl2, "h1^2 + 4 e(1) f(1)")
    assert F == MultiPoly.var(sl2, "h1") ** 2 + MultiPoly.var(sl2, "e(1)") * MultiPoly.var(sl2, "f(1)") * 4


def test_restrict_at_examples(g2v, quad, inv22):
    L, R, S = g2v
    xi = SRC.child("xi").vector(7, 20)
    val = restrict_at(quad, xi)
    assert val.algebra == L and val.total_degree() == 0
    assert val == MultiPoly.const(L, quad.evaluate({14 + k: x for k, x in enumerate(xi)}))
    F = inv22.basis[0]
    assert restrict_at(F, [0] * 7).is_zero()
    P = restrict_at(F, xi)
    stab = stabilizer(dual(R), xi)
    assert len(stab) == 8
    Q = restrict_to_subalgebra(P, stab)
    assert not Q.is_zero() and Q.total_degree() == 2 and is_invariant(Q)


def test_restrict_at_infinitesimal_equivariance(g2v, inv22):
    """The derivative of restrict_at(F, .) along x.xi equals -{restrict_at(F, xi), x}."""
    L, R, S = g2v
    F = inv22.basis[0]
    n = L.dim
    xi = SRC.child("eq").vector(7, 9)
    P = restrict_at(F, xi)
    Rd = dual(R)
    partials = [restrict_at(F.derivative(n + k), xi) for k in range(R.dim)]
    for x in range(n):
        move = Rd.act({x: 1}, dict(enumerate(xi)))
        D = MultiPoly(L)
        for k, c in move.items():
            D = D + partials[k] * c
        assert D == -bracket_with_basis(P, x)


def test_jacobian_examples():
    h1, h2 = lemma_invariants()
    assert jacobian_independence([h1, h2], SRC, exact=True)
    assert jacobian_independence([h1, h2], SRC)
    assert not jacobian_independence([h1, h1 * h1], SRC)
    A = abelian(2)
    assert jacobian_independence(MultiPoly.gens(A), SRC)


def test_bigrading_of_brackets(g2v, inv22):
    S = g2v[2]
    F = inv22.basis[0]
    G = F.derivative(S.index("v1"))  # bi-degree (2, 1)
    for x in S.g_indices:
        b = bracket_with_basis(G, x)
        assert b.is_zero() or b.bidegree() == (2, 1)
    for v in S.v_indices:
        b = bracket_with_basis(G, v)
        assert b.is_zero() or b.bidegree() == (1, 2)
