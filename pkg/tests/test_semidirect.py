from fractions import Fraction

import pytest

from coadjoint_workbench.algebra import LieAlgebra
from coadjoint_workbench.errors import MixedAlgebras
from coadjoint_workbench.irrep import adjoint, build_irrep, module
from coadjoint_workbench.rootsys import chevalley
from coadjoint_workbench.semidirect import semidirect


@pytest.fixture(scope="module")
def g2v():
    L = chevalley("G2")
    R = build_irrep(L, (1, 0))
    return L, R, semidirect(L, R)


def test_dimensions(g2v):
    L, R, S = g2v
    assert S.dim == 21
    assert list(S.g_indices) == list(range(14)) and list(S.v_indices) == list(range(14, 21))
    assert S.grading == ("g",) * 14 + ("v",) * 7


def test_e7_dimension():
    L = chevalley("E7")
    assert semidirect(L, build_irrep(L, (1, 0, 0, 0, 0, 0, 0))).dim == 189


def test_takiff_g2():
    L = chevalley("G2")
    T = semidirect(L, adjoint(L))
    assert T.dim == 28 and T.satisfies_jacobi()


def test_v_abelian_and_action(g2v):
    L, R, S = g2v
    n = L.dim
    for a in S.v_indices:
        for b in S.v_indices:
            assert S.bracket_basis(a, b) == {}
    for x in range(n):
        for c in range(R.dim):
            expected = {n + r: v for r, v in R.act({x: 1}, {c: 1}).items()}
            assert S.bracket_basis(x, n + c) == expected


def test_g_part_closed(g2v):
    L, _, S = g2v
    for x in range(L.dim):
        for y in range(L.dim):
            assert S.bracket_basis(x, y) == L.bracket_basis(x, y)


def test_mixed_jacobi_equals_equivariance(g2v):
    L, R, S = g2v
    n = L.dim
    bad_mixed = [(x, y, n + c) for x in range(n) for y in range(n) for c in range(R.dim) if any(S.jacobi_triple(x, y, n + c).values())]
    assert bad_mixed == [] and R.is_equivariant()


def test_broken_module_breaks_both():
    """A non-equivariant operator family fails equivariance and mixed Jacobi together."""
    L = chevalley("A1")
    R = build_irrep(L, (1,))
    h = L.index("h1")
    mats = list(R.matrices)
    mats[h] = mats[h].scale(2)
    from coadjoint_workbench.irrep import Representation

    bad = Representation(L, mats, R.weights)
    S = semidirect(L, bad)
    assert not bad.is_equivariant()
    assert not S.satisfies_jacobi()


def test_generators_and_text(g2v):
    L, R, S = g2v
    assert S.generators == tuple(L.generators) + (14 + R.summands[0].generator,)
    T = LieAlgebra.from_text(S.to_text())
    assert T == S and T.grading == S.grading


def test_mixed_algebras():
    with pytest.raises(MixedAlgebras):
        semidirect(chevalley("G2"), build_irrep(chevalley("A2"), (1, 0)))


def test_weights_concatenate(g2v):
    L, R, S = g2v
    assert S.weights == tuple(L.weights) + tuple(R.weights)
    assert all(isinstance(x, Fraction) for w in S.weights for x in w)


def test_direct_sum_generators():
    L = chevalley("G2")
    S = semidirect(L, module(L, [((1, 0), 2, False)]))
    assert len(S.generators) == len(L.generators) + 2
