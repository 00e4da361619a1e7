from fractions import Fraction

import pytest

from coadjoint_workbench.algebra import LieAlgebra, abelian
from coadjoint_workbench.arith import rank_exact
from coadjoint_workbench.errors import UnsupportedType
from coadjoint_workbench.rootsys import VO_TO_BOURBAKI, chevalley, killing_form, roots

TYPES = ["A1", "A2", "G2", "D4", "F4", "E6", "E7"]
ROOT_COUNTS = {"A1": 2, "A2": 6, "G2": 12, "D4": 24, "F4": 48, "E6": 72, "E7": 126}


@pytest.mark.parametrize("t", TYPES)
def test_root_counts_and_negation(t):
    rs = roots(t)
    assert len(rs.roots) == ROOT_COUNTS[t]
    assert {tuple(-x for x in a) for a in rs.roots} == set(rs.roots)
    assert all(rs.cartan[i][i] == 2 for i in range(rs.rank))


def test_unsupported_type():
    with pytest.raises(UnsupportedType):
        roots("G3")
    with pytest.raises(UnsupportedType):
        roots("Q2")


def test_sl2_relations():
    L = chevalley("A1")
    h, e, f = (L.index(x) for x in ("h1", "e(1)", "f(1)"))
    assert L.bracket_basis(e, f) == {h: 1}
    assert L.bracket_basis(h, e) == {e: 2}
    assert L.bracket_basis(h, f) == {f: -2}


@pytest.mark.parametrize("t,dim", [("G2", 14), ("F4", 52), ("E6", 78), ("E7", 133), ("D4", 28), ("A2", 8)])
def test_dimensions(t, dim):
    assert chevalley(t).dim == dim


@pytest.mark.parametrize("t", ["A1", "A2", "G2", "D4", "F4"])
def test_jacobi_all_triples(t):
    assert chevalley(t).satisfies_jacobi()


@pytest.mark.parametrize("t", TYPES)
def test_chevalley_integrality(t):
    L = chevalley(t)
    r = roots(t).rank
    for (i, j), vec in L.brackets.items():
        assert all(c.denominator == 1 for c in vec.values())
        if i >= r and j >= r and not set(vec) <= set(range(r)):
            # N_{alpha,beta} for root vectors with alpha + beta a root
            assert all(abs(c) <= 3 for c in vec.values())


def test_killing_sl2_oracle():
    L = chevalley("A1")
    K = killing_form(L)
    h, e, f = 0, 1, 2
    # trace of ad h ad h = 4 + 0 + 4; trace of ad e ad f = 2 + 2 + 0
    assert K[h, h] == 8 and K[e, f] == 4 and K[f, e] == 4
    assert K[e, e] == 0 and K[h, e] == 0 and K[h, f] == 0


def test_killing_abelian_zero():
    assert killing_form(abelian(3)).is_zero()


def test_killing_g2_nondegenerate():
    assert rank_exact(killing_form(chevalley("G2"))) == 14


@pytest.mark.parametrize("t", ["A2", "G2"])
def test_killing_ad_invariance(t):
    L = chevalley(t)
    K = killing_form(L)
    n = L.dim

    def kv(u, w):
        return sum((a * b * K[i, j] for i, a in u.items() for j, b in w.items()), Fraction(0))

    for x in range(n):
        for y in range(n):
            for z in range(n):
                assert kv(L.bracket_basis(x, y), {z: 1}) + kv({y: 1}, L.bracket_basis(x, z)) == 0


def test_text_round_trip_bit_exact():
    for t in ("G2", "E6"):
        L = chevalley(t)
        text = L.to_text()
        M = LieAlgebra.from_text(text)
        assert M == L and M.to_text() == text
        assert "/1)" in text


def test_vo_numbering_table():
    assert sorted(VO_TO_BOURBAKI["E6"]) == list(range(1, 7))
    assert sorted(VO_TO_BOURBAKI["E7"]) == list(range(1, 8))
