import json

import pytest

from coadjoint_workbench import cli
from coadjoint_workbench.arith import RandomSource
from coadjoint_workbench.casebook import lemma_algebra, lemma_invariants
from coadjoint_workbench.irrep import Representation, module
from coadjoint_workbench.poisson import parse_poly
from coadjoint_workbench.rootsys import chevalley


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_first_rows(capsys):
    code, out, _ = run(capsys, "table", "--rows", "1a,1b,1c", "--seed", "7")
    rep = json.loads(out)
    assert code == 0 and rep["seed"] == 7 and [r["label"] for r in rep["rows"]] == ["1a", "1b", "1c"]
    assert all(r["outcome"] == "match" for r in rep["rows"])


def test_table_none(capsys):
    code, out, _ = run(capsys, "table", "--rows", "none")
    assert code == 0 and json.loads(out)["rows"] == []


def test_table_rendered(capsys):
    code, out, _ = run(capsys, "table", "--rows", "1c", "--format", "table")
    assert code == 0 and out.splitlines()[0].startswith("row")


def test_table_deep_nullcone_4a(capsys):
    code, out, _ = run(capsys, "table", "--rows", "4a", "--deep-nullcone")
    row = json.loads(out)["rows"][0]
    check = next(c for c in row["checks"] if c["name"] == "null-cone stabilizer")
    assert code == 0 and check["computed"][0] == 78


def test_lemma_default_and_probe(capsys):
    code, out, _ = run(capsys, "lemma")
    rep = json.loads(out)
    assert code == 0 and len(rep["checks"]) == 6
    code, out, _ = run(capsys, "lemma", "--probe-hyperplanes", "10")
    probe = json.loads(out)["checks"][-1]
    assert code == 0 and len(probe["detail"]["hyperplanes"]) == 10


def test_lemma_corrupted_fixture(capsys):
    q = lemma_algebra()
    h1, _ = lemma_invariants(q)
    bad = parse_poly(q, "b2^2 e + a2 b2 h + a2^2 f + u (a1 b2 - a2 b1) + 1/3 u^3")
    code, _ = cli.cmd_lemma(cli.RunConfig(), invariants=(h1, bad))
    err = capsys.readouterr().err
    assert code == cli.EXIT_MISMATCH and "Poisson-central" in err


@pytest.mark.parametrize(
    "argv,dim",
    [
        (["--case", "1a", "--bidegree", "2,2"], 1),
        (["--case", "1a", "--bidegree", "0,2"], 1),
        (["--algebra", "A1", "--bidegree", "1,0"], 0),
        (["--algebra", "G2", "--module", "1,0", "--bidegree", "0,2"], 1),
    ],
)
def test_invariants(capsys, argv, dim):
    code, out, _ = run(capsys, "invariants", *argv)
    assert code == 0 and json.loads(out)["dim"] == dim


def test_exit_codes(capsys):
    code, _, err = run(capsys, "invariants", "--case", "1a", "--bidegree", "2,2", "--budget", "10")
    assert code == cli.EXIT_BUDGET and "budget" in err
    code, _, err = run(capsys, "invariants", "--algebra", "Q7", "--bidegree", "1,0")
    assert code == cli.EXIT_INTERNAL


def test_mismatch_exit_code(capsys, monkeypatch):
    import dataclasses

    from coadjoint_workbench import casebook

    real = casebook.case_by_label
    monkeypatch.setattr(casebook, "case_by_label", lambda lab: dataclasses.replace(real(lab), quotient=2))
    code, _, err = run(capsys, "table", "--rows", "1c")
    assert code == cli.EXIT_MISMATCH and "dim V*//G" in err


def test_determinism_and_out(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "table", "--rows", "1a,2a", "--seed", "3", "--out", str(a))[0] == 0
    assert run(capsys, "table", "--rows", "1a,2a", "--seed", "3", "--out", str(b), "--jobs", "2")[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_cache_round_trip(tmp_path):
    cache = cli.ModuleCache(tmp_path)
    L = chevalley("F4")
    spec = [((1, 0, 0, 0), 2, False)]
    R1 = cache.module(L, spec)
    files = list(tmp_path.glob("*.rep"))
    assert len(files) == 1
    R2 = cache.module(L, spec)
    assert R1 == R2 == module(L, spec)
    assert isinstance(R2, Representation)


def test_cache_env_override(monkeypatch, tmp_path):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path / "x"))
    assert cli.default_cache_dir() == tmp_path / "x"


def test_reductions_command(capsys):
    code, out, _ = run(capsys, "reductions")
    rep = json.loads(out)
    assert code == 0 and rep["all_match"] and len(rep["edges"]) == 9
