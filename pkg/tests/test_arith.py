from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coadjoint_workbench.arith import (
    DEFAULT_PRIMES,
    RandomSource,
    SparseMatrix,
    crt,
    format_scalar,
    kernel_basis,
    rank_exact,
    rank_mod,
    rational_reconstruct,
)
from coadjoint_workbench.errors import DenominatorDivisibleByP

P = 1000003


def test_rank_mod_examples():
    assert rank_mod(SparseMatrix.identity(3), P) == 3
    assert rank_mod(SparseMatrix.zeros(5, 7), P) == 0
    assert rank_mod([[2, 4], [1, 2]], P) == 1


def test_rank_mod_rejects_small_modulus():
    with pytest.raises(ValueError):
        rank_mod([[1]], 101)


def test_rank_mod_denominator_divisible_by_p():
    with pytest.raises(DenominatorDivisibleByP):
        rank_mod([[Fraction(1, P)]], P)


def test_rank_exact_examples():
    assert rank_exact(SparseMatrix.identity(3)) == 3
    assert rank_exact([[1, 2], [2, 4]]) == 1


def test_rank_exact_random_agrees_with_three_primes():
    rng = np.random.default_rng(42)
    m = rng.integers(-9, 10, size=(10, 10)).tolist()
    r = rank_exact(m)
    # independent oracle: floating point SVD on small integers
    assert r == np.linalg.matrix_rank(np.array(m, dtype=float))
    assert [rank_mod(m, p) for p in DEFAULT_PRIMES[:3]] == [r, r, r]


def test_kernel_basis_examples():
    assert kernel_basis(SparseMatrix.identity(4)) == []
    assert len(kernel_basis(SparseMatrix.zeros(2, 3))) == 3
    ker = kernel_basis([[1, 1, 0]])
    assert len(ker) == 2
    for v in ker:
        assert v[0] + v[1] == 0


def test_format_scalar():
    assert format_scalar(Fraction(3)) == "3"
    assert format_scalar(Fraction(-2, 6)) == "-1/3"


def test_crt_and_reconstruction():
    p, q = DEFAULT_PRIMES[:2]
    x = Fraction(-7, 12)
    res = [x.numerator * pow(x.denominator, -1, m) % m for m in (p, q)]
    a, m = crt(res, (p, q))
    assert m == p * q
    assert rational_reconstruct(a, m) == x


def test_random_source_determinism():
    a = RandomSource(5).child("x", 3).vector(20)
    b = RandomSource(5).child("x", 3).vector(20)
    c = RandomSource(5).child("x", 4).vector(20)
    assert a == b and a != c
    assert all(-10**4 <= v <= 10**4 for v in a)


small = st.integers(-5, 5)
matrices = st.integers(1, 7).flatmap(lambda r: st.integers(1, 7).flatmap(
    lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_rank_mod_bounded_by_rank_exact(m):
    r = rank_exact(m)
    mods = [rank_mod(m, p) for p in DEFAULT_PRIMES[:3]]
    assert all(x <= r for x in mods)
    assert sum(x == r for x in mods) >= 2


@given(matrices)
def test_kernel_vectors_vanish(m):
    ker = kernel_basis(m)
    assert len(ker) == len(m[0]) - rank_exact(m)
    for v in ker:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.fractions(max_denominator=9)), max_size=12))
def test_sparse_matrix_canonical(entries):
    m = SparseMatrix(5, 5, entries)
    pos = [(r, c) for r, c, _ in m.entries]
    assert pos == sorted(set(pos))
    assert all(v != 0 for _, _, v in m.entries)
    assert m.transpose().transpose() == m
