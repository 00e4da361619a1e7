from fractions import Fraction

import numpy as np
import pytest

from coadjoint_workbench.algebra import abelian, subalgebra_constants
from coadjoint_workbench.arith import DEFAULT_PRIMES, RandomSource, kernel_basis, rank_exact
from coadjoint_workbench.casebook import lemma_algebra
from coadjoint_workbench.errors import InconsistentWithDirectIndex, ParityViolation
from coadjoint_workbench.indexcalc import (
    IndexReport,
    action_matrix,
    generic_stabilizer,
    hypersurface_sample,
    index_of,
    magic_number,
    pairing_matrix,
    quotient_dim,
    rais_index,
    reductivity_witness,
    regularity_probe,
    stabilizer,
    stabilizer_mod,
    subalgebra_index_mod,
)
from coadjoint_workbench.irrep import adjoint, build_irrep, dual, module
from coadjoint_workbench.poisson import MultiPoly, invariant_space
from coadjoint_workbench.rootsys import chevalley
from coadjoint_workbench.semidirect import semidirect

SRC = RandomSource(11)


def w(rank, i, c=1):
    return tuple(c if k == i - 1 else 0 for k in range(rank))


@pytest.fixture(scope="module")
def g2v():
    L = chevalley("G2")
    R = build_irrep(L, (1, 0))
    return L, R, semidirect(L, R)


def test_pairing_abelian_zero():
    assert pairing_matrix(abelian(4), [1, 2, 3, 4]).is_zero()


def test_pairing_sl2_dual_to_h():
    L = chevalley("A1")
    M = pairing_matrix(L, [1, 0, 0])
    assert M.to_dense() == [[0, 0, 0], [0, 0, 1], [0, -1, 0]]
    assert rank_exact(M) == 2
    ker = kernel_basis(M)
    assert len(ker) == 1 and ker[0][1:] == [0, 0] and ker[0][0] != 0


def test_pairing_lemma_dual_to_a2():
    q = lemma_algebra()
    xi = [0] * 8
    xi[q.index("a2")] = 1
    assert len(kernel_basis(pairing_matrix(q, xi))) == 2


def test_index_examples(g2v):
    assert index_of(abelian(5), SRC).estimate == 5
    assert index_of(g2v[2], SRC).estimate == 3
    rep = index_of(chevalley("F4"), SRC)
    assert rep.estimate == 4 and rep.converged


def _independent_pairing_rank(L, xi):
    """Oracle: pairing matrix assembled from bracket_basis in floating point."""
    n = L.dim
    M = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            M[i, j] = float(sum(c * xi[k] for k, c in L.bracket_basis(i, j).items()))
    return np.linalg.matrix_rank(M)


def test_takiff_index_against_oracle():
    L = chevalley("G2")
    T = semidirect(L, adjoint(L))
    rng = np.random.default_rng(5)
    oracle = T.dim - max(_independent_pairing_rank(T, rng.integers(-20, 21, T.dim)) for _ in range(5))
    assert oracle == 4 == 2 * 2
    assert index_of(T, SRC).estimate == oracle


def test_magic_numbers(g2v):
    q = lemma_algebra()
    assert magic_number(q, index_of(q, SRC, exact=True)) == 5
    sl2 = chevalley("A1")
    assert magic_number(sl2, index_of(sl2, SRC)) == 2
    assert magic_number(g2v[2], index_of(g2v[2], SRC)) == (21 + 3) // 2 == 12


def test_parity_violation():
    L = chevalley("A1")
    with pytest.raises(ParityViolation):
        magic_number(L, IndexReport(3, 1, 2, 1, (), 0))


def test_stabilizer_examples():
    L = chevalley("G2")
    R = build_irrep(L, (1, 0))
    assert len(stabilizer(R, [0] * 7)) == 14
    E6 = chevalley("E6")
    gs = generic_stabilizer(build_irrep(E6, w(6, 5)), SRC)
    assert gs.dim == 52 and gs.converged


def test_stabilizer_e7_dual():
    E7 = chevalley("E7")
    assert generic_stabilizer(dual(build_irrep(E7, w(7, 1))), SRC).dim == 78


def test_subalgebra_constants_examples(g2v):
    L, R, _ = g2v
    full = subalgebra_constants(L, [{i: 1} for i in range(L.dim)])
    assert full.dim == L.dim and full.satisfies_jacobi()
    cartan = subalgebra_constants(L, [{0: 1}, {1: 1}])
    assert cartan.dim == 2 and cartan.is_abelian()
    xi = SRC.child("g2").vector(7, 50)
    stab = stabilizer(dual(R), xi)
    H = subalgebra_constants(L, stab)
    assert H.dim == 8 and H.satisfies_jacobi()
    from coadjoint_workbench.rootsys import killing_form

    K = killing_form(L)
    ks = [[sum((a * b * K[i, j] for i, a in enumerate(u) if a for j, b in enumerate(v) if b), Fraction(0)) for v in stab] for u in stab]
    assert rank_exact(ks) == 8
    assert index_of(H, SRC, exact=True).estimate == 2


@pytest.mark.parametrize(
    "t,spec,expected",
    [("E6", [(w(6, 5), 1, False)], 1), ("F4", [(w(4, 1), 2, False)], 8), ("E7", [(w(7, 1), 2, False)], 7)],
)
def test_quotient_dim(t, spec, expected):
    L = chevalley(t)
    R = module(L, spec)
    assert quotient_dim(R, SRC) == expected
    assert quotient_dim(R, RandomSource(999)) == expected


@pytest.mark.parametrize(
    "t,spec,expected,q",
    [("F4", [(w(4, 1), 2, False)], 10, 8), ("G2", [((1, 0), 3, False)], 7, 7), ("E7", [(w(7, 1), 2, False)], 11, 7)],
)
def test_rais_index(t, spec, expected, q):
    L = chevalley(t)
    rep = rais_index(L, module(L, spec), SRC)
    assert rep.estimate == expected == rep.details["direct"]
    assert rep.details["quotient_dim"] == q


def test_rais_inconsistent_raises(g2v):
    L, R, S = g2v
    wrong = IndexReport(21, 16, 5, 2, DEFAULT_PRIMES[:2], 0)
    with pytest.raises(InconsistentWithDirectIndex):
        rais_index(L, R, SRC, direct=wrong)


def test_reductivity_witness_examples(g2v):
    L, R, _ = g2v
    stab = stabilizer(dual(R), SRC.child("w").vector(7, 50))
    fp = reductivity_witness(subalgebra_constants(L, stab), SRC)
    assert (fp["dim"], fp["killing_rank"], fp["cartan_dim"], fp["derived_dim"]) == (8, 8, 2, 8)
    E6 = chevalley("E6")
    gs = generic_stabilizer(build_irrep(E6, w(6, 5)), SRC)
    from coadjoint_workbench.indexcalc import fingerprint_mod

    f = fingerprint_mod(E6, gs.bases[DEFAULT_PRIMES[0]], DEFAULT_PRIMES[0], SRC)
    assert (f.dim, f.cartan_dim, f.killing_rank) == (52, 4, 52)
    sl2 = chevalley("A1")
    nil = subalgebra_constants(sl2, [{sl2.index("e(1)"): 1}])
    assert reductivity_witness(nil, SRC)["killing_rank"] == 0


def test_hypersurface_sample_quadric(g2v):
    L, R, S = g2v
    F = invariant_space(S, (0, 2)).basis[0]
    p = DEFAULT_PRIMES[0]
    xi = hypersurface_sample(F, p, SRC)
    assert xi.any() and F.eval_mod(F.point_coordinates(), xi, p) == 0


def test_nullcone_cubic_e6():
    E6 = chevalley("E6")
    R = build_irrep(E6, w(6, 1))
    F = invariant_space(semidirect(E6, R), (0, 3)).basis[0]
    p = DEFAULT_PRIMES[0]
    xi = hypersurface_sample(F, p, SRC.child("cubic"))
    basis = stabilizer_mod(dual(R), xi, p)
    assert basis.shape[0] == 52
    assert subalgebra_index_mod(E6, basis, p, SRC) == 4


def test_regularity_probe():
    q = lemma_algebra()
    rep = regularity_probe(q, SRC, hyperplanes=5, points=20, exact=True)
    assert rep["all_regular"] and rep["status"] == "probe-evidence-only"
    assert regularity_probe(abelian(3), SRC, 3, 5)["all_regular"]


def test_regularity_probe_g2(g2v):
    rep = regularity_probe(g2v[2], SRC, hyperplanes=5, points=20)
    assert rep["all_regular"] and rep["best_rank"] == 18


def test_rank_nullity_exact(g2v):
    L, R, _ = g2v
    for t in range(5):
        xi = SRC.child("rn", t).vector(7, 5)
        assert len(stabilizer(R, xi)) + rank_exact(action_matrix(R, xi)) == L.dim


def test_pairing_rank_even(g2v):
    S = g2v[2]
    for t in range(5):
        M = pairing_matrix(S, SRC.child("even", t).vector(S.dim, 3))
        assert rank_exact(M) % 2 == 0
        assert M.transpose() == -M


def test_index_report_json_has_provenance(g2v):
    rep = index_of(g2v[2], RandomSource(3), trials=2).to_json()
    assert rep["seed"] == 3 and len(rep["primes"]) == 2 and rep["samples"]
    assert all("rank" in s and "prime" in s for s in rep["samples"])
