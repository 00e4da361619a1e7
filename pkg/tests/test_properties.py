"""Hypothesis property suites for the algebraic invariants."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coadjoint_workbench.algebra import subalgebra_constants
from coadjoint_workbench.arith import RandomSource, rank_exact
from coadjoint_workbench.casebook import lemma_algebra
from coadjoint_workbench.indexcalc import action_matrix, index_of, pairing_matrix, stabilizer
from coadjoint_workbench.irrep import build_irrep, dual
from coadjoint_workbench.poisson import MultiPoly, bracket_with_basis, poisson_bracket
from coadjoint_workbench.rootsys import chevalley
from coadjoint_workbench.semidirect import semidirect

Q = lemma_algebra()
G2 = chevalley("G2")
V7 = build_irrep(G2, (1, 0))
S = semidirect(G2, V7)
A2 = chevalley("A2")
A2_MODULE = build_irrep(A2, (1, 1))


def polys(L, max_terms=4, max_deg=3):
    mono = st.lists(st.integers(0, L.dim - 1), min_size=0, max_size=max_deg).map(
        lambda idx: tuple(sorted((i, idx.count(i)) for i in set(idx)))
    )
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(lambda t: MultiPoly(L, t))


algebras = st.sampled_from([Q, S])


@st.composite
def triples(draw):
    L = draw(algebras)
    return L, draw(polys(L)), draw(polys(L)), draw(polys(L))


@settings(max_examples=100)
@given(triples())
def test_leibniz(t):
    _, F, G, H = t
    assert poisson_bracket(F * G, H) == F * poisson_bracket(G, H) + poisson_bracket(F, H) * G


@settings(max_examples=100)
@given(triples())
def test_poisson_jacobi(t):
    _, F, G, H = t
    total = poisson_bracket(poisson_bracket(F, G), H) + poisson_bracket(poisson_bracket(G, H), F)
    assert (total + poisson_bracket(poisson_bracket(H, F), G)).is_zero()


@given(triples())
def test_antisymmetry(t):
    _, F, G, _ = t
    assert poisson_bracket(F, G) == -poisson_bracket(G, F)


@given(polys(S))
def test_text_round_trip(F):
    assert MultiPoly.from_text(S, F.to_text()) == F


@given(st.lists(st.integers(S.base.dim, S.dim - 1), min_size=1, max_size=3), st.lists(st.integers(0, S.base.dim - 1), max_size=2))
def test_bigrading_shift(vs, gs):
    idx = vs + gs
    F = MultiPoly(S, {tuple(sorted((i, idx.count(i)) for i in set(idx))): 1})
    dg, dv = F.bidegree()
    for x in S.g_indices:
        b = bracket_with_basis(F, x)
        assert b.is_zero() or b.bidegree() == (dg, dv)
    for v in S.v_indices:
        b = bracket_with_basis(F, v)
        assert b.is_zero() or b.bidegree() == (dg - 1, dv + 1)


reps = st.sampled_from([(G2, V7), (G2, dual(V7)), (A2, A2_MODULE)])


@settings(max_examples=50)
@given(reps, st.data())
def test_rank_nullity(rep, data):
    L, R = rep
    xi = data.draw(st.lists(st.integers(-3, 3), min_size=R.dim, max_size=R.dim))
    stab = stabilizer(R, xi)
    assert len(stab) + rank_exact(action_matrix(R, xi)) == L.dim
    for v in stab:
        assert not any(R.act(dict(enumerate(v)), dict(enumerate(xi))).values())


@settings(max_examples=20)
@given(st.lists(st.integers(-3, 3), min_size=7, max_size=7).filter(any))
def test_stabilizer_subalgebra_satisfies_jacobi(xi):
    H = subalgebra_constants(G2, stabilizer(V7, xi))
    assert H.satisfies_jacobi()


@given(reps, st.integers(0, 13), st.integers(0, 13))
def test_equivariance_pairs(rep, i, j):
    L, R = rep
    i, j = i % L.dim, j % L.dim
    lhs = R.matrix_of(L.bracket_basis(i, j))
    assert lhs == R.matrices[i].commutator(R.matrices[j])


@given(st.lists(st.integers(-4, 4), min_size=21, max_size=21))
def test_pairing_antisymmetric_even_rank(xi):
    M = pairing_matrix(S, xi)
    assert M.transpose() == -M
    assert rank_exact(M) % 2 == 0


@settings(max_examples=10)
@given(st.integers(0, 2**32))
def test_index_determinism(seed):
    a = index_of(S, RandomSource(seed)).to_json()
    b = index_of(S, RandomSource(seed)).to_json()
    assert a == b and a["estimate"] >= 3


@given(reps)
def test_dual_negates_weights(rep):
    _, R = rep
    neg = sorted(tuple(-x for x in w) for w in R.weights)
    assert sorted(dual(R).weights) == neg
