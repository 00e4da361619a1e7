import dataclasses
import json

import pytest

from coadjoint_workbench.arith import RandomSource
from coadjoint_workbench.casebook import (
    COMPUTED,
    FIXTURE_ONLY,
    H_TYPES,
    PROBE_ONLY,
    case_by_label,
    lemma_algebra,
    lemma_bracket_terms,
    lemma_invariants,
    load_cases,
    reduction_edges,
    render_table,
    verify_case,
    verify_lemma,
    verify_reduction,
)
from coadjoint_workbench.errors import FingerprintMismatch
from coadjoint_workbench.poisson import MultiPoly, parse_poly

# the printed rows: (label, dim V, dim V*//G, q, H, ind, FA)
TABLE = [
    ("1a", 7, 1, 2, "A2", 3, "+"),
    ("1b", 14, 3, 6, "A1", 4, "+"),
    ("1c", 21, 7, 15, "{1}", 7, "+"),
    ("2a", 26, 2, 5, "D4", 6, "-"),
    ("2b", 52, 8, 22, "A2", 10, "+"),
    ("3a", 27, 1, 3, "F4", 5, "+"),
    ("3b", 54, 4, 12, "D4", 8, "-"),
    ("3c", 54, 4, 12, "D4", 8, "-"),
    ("3d", 81, 11, 36, "A2", 13, "+"),
    ("3e", 81, 11, 36, "A2", 13, "+"),
    ("4a", 56, 1, 4, "E6", 7, "-"),
    ("4b", 112, 7, 28, "D4", 11, "-"),
]


def test_fixtures_match_table():
    got = [(c.label, c.dim_v, c.quotient, c.q, c.h_type, c.ind, c.fa) for c in load_cases()]
    assert got == TABLE


def test_fixture_identity():
    for c in load_cases():
        assert c.ind == c.quotient + H_TYPES[c.h_type][1]
    assert [c.label for c in load_cases() if c.q_feasible] == ["1a", "3a"]


def test_lemma_algebra_brackets():
    q = lemma_algebra()
    i = q.index
    assert q.dim == 8 and q.satisfies_jacobi()
    assert q.bracket_basis(i("a1"), i("b1")) == {i("u"): 1}
    assert q.bracket_basis(i("h"), i("b1")) == {i("b1"): -1}
    assert q.bracket_basis(i("a2"), i("b2")) == {}
    assert q.bracket_basis(i("e"), i("a1")) == {}
    assert q.bracket_basis(i("f"), i("a1")) == {i("b1"): 1}


def test_lemma_displayed_terms():
    terms = lemma_bracket_terms()
    assert [t for t, _, _ in terms][0] == "b2^2 e"
    for _, got, exp in terms:
        assert got == exp
    total = terms[0][1]
    for _, got, _ in terms[1:]:
        total = total + got
    assert total.is_zero()


def test_lemma_degrees():
    h1, h2 = lemma_invariants()
    assert (h1.total_degree(), h2.total_degree()) == (2, 3)


def test_verify_lemma_all_pass():
    rep = verify_lemma(RandomSource(0))
    assert rep.all_match and len(rep.checks) == 6
    assert rep.check("codim-2 probe").status == PROBE_ONLY
    assert rep.check("ind q").computed == 2 and rep.check("b(q)").computed == 5


def test_verify_lemma_negative_control():
    q = lemma_algebra()
    h1, _ = lemma_invariants(q)
    bad = parse_poly(q, "b2^2 e + a2 b2 h - a2^2 f + u (a1 b2 - a2 b1) + 1/2 u^3")
    rep = verify_lemma(RandomSource(0), invariants=(h1, bad))
    assert not rep.all_match
    assert "h1, h2 Poisson-central" in rep.failing()


def test_verify_case_1c():
    rep = verify_case(case_by_label("1c"), RandomSource(0))
    assert rep.all_match
    assert rep.check("dim V*//G").detail["stabilizer_dim"] == 0
    assert rep.check("ind s (direct)").computed == 7 == rep.check("dim V*//G").computed


def test_verify_case_labels_fixture_only():
    rep = verify_case(case_by_label("1b"), RandomSource(0))
    assert rep.check("q(V//G)").status == FIXTURE_ONLY and rep.check("q(V//G)").computed is None
    assert rep.check("FA").status == FIXTURE_ONLY
    assert rep.check("dim V").status == COMPUTED


def test_verify_case_detects_wrong_fixture():
    c = dataclasses.replace(case_by_label("1a"), ind=4)
    rep = verify_case(c, RandomSource(0))
    assert rep.outcome == "mismatch"
    assert set(rep.failing()) >= {"ind s (direct)", "ind s (Rais)"}


def test_reduction_edges_shape():
    edges = reduction_edges()
    assert len(edges) == 7
    assert [e.tree for e in edges].count("bad") == 3
    labels = {c.label for c in load_cases()}
    for e in edges:
        assert e.source in labels or e.source.startswith("D4")
        assert e.target in labels or e.target.startswith("D4")
    assert len(reduction_edges(include_extras=True)) == 9


@pytest.mark.parametrize("name", ["3c->2a", "D4->1a", "1a-terminal"])
def test_verify_reduction(name):
    e = next(x for x in reduction_edges(True) if x.name == name)
    assert verify_reduction(e, RandomSource(0)).all_match


def test_verify_reduction_mismatch_raises():
    e = next(x for x in reduction_edges() if x.name == "D4->1a")
    wrong = dataclasses.replace(e, decomposition=(((1, 0), 1), ((0, 0), 2)))
    with pytest.raises(FingerprintMismatch):
        verify_reduction(wrong, RandomSource(0), raise_on_mismatch=True)


def test_render_table_and_json():
    cases = [case_by_label("1a"), case_by_label("1c")]
    reps = [verify_case(c, RandomSource(4)) for c in cases]
    text = render_table(cases, reps)
    header = text.splitlines()[0].split()
    assert header[:4] == ["row", "G", "V", "dim"]
    assert "fixture-only" in text
    again = [verify_case(c, RandomSource(4)) for c in cases]
    assert json.dumps([r.to_json() for r in reps]) == json.dumps([r.to_json() for r in again])
    assert all(r.timings is None for r in reps)


def test_timings_opt_in():
    rep = verify_case(case_by_label("1a"), RandomSource(0), timings=True)
    assert rep.timings and "index" in rep.timings
