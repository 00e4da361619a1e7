"""Command-line front end over the casebook drivers."""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import casebook
from .algebra import LieAlgebra
from .arith import DEFAULT_PRIMES, RandomSource
from .errors import BudgetExceeded, SampleBudgetExhausted, WorkbenchError
from .irrep import Representation, module
from .poisson import DEFAULT_BUDGET, invariant_space
from .rootsys import chevalley
from .semidirect import semidirect

EXIT_OK, EXIT_MISMATCH, EXIT_BUDGET, EXIT_INTERNAL = 0, 2, 3, 4
CACHE_ENV = "COADJOINT_WORKBENCH_CACHE"
CACHE_FORMAT = "module-cache v1"


class ModuleCache:
    """Representations serialized under a content hash of (algebra, module spec)."""

    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)

    def key(self, L: LieAlgebra, spec) -> str:
        blob = "\n".join([CACHE_FORMAT, L.to_text(), repr([(tuple(w), m, bool(d)) for w, m, d in spec])])
        return hashlib.sha256(blob.encode()).hexdigest()

    def module(self, L: LieAlgebra, spec) -> Representation:
        path = self.dir / f"{self.key(L, spec)}.rep"
        if path.exists():
            return Representation.from_text(path.read_text(), L)
        R = module(L, spec)
        self.dir.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(R.to_text())
        tmp.replace(path)
        return R


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "coadjoint-workbench"


@dataclass
class RunConfig:
    seed: int = 0
    primes: int = 2
    trials: int | None = None
    rows: list[str] = field(default_factory=list)
    deep: bool = False
    deep_nullcone: bool = False
    deep_33: bool = False
    output: str = "tree"
    cache_dir: str | None = None
    jobs: int = 1
    timings: bool = False
    probe_hyperplanes: int = 5
    budget: int = DEFAULT_BUDGET

    @property
    def prime_list(self) -> tuple[int, ...]:
        if self.primes < 1:
            raise ValueError("at least one prime is required")
        return tuple(DEFAULT_PRIMES[: self.primes])

    def cache(self) -> ModuleCache | None:
        return ModuleCache(self.cache_dir) if self.cache_dir else None

    def header(self) -> dict:
        return {"seed": self.seed, "primes": list(self.prime_list), "trials": self.trials}


def _verify_row(args) -> casebook.CaseReport:
    label, cfg = args
    c = casebook.case_by_label(label)
    return casebook.verify_case(
        c,
        RandomSource(cfg.seed),
        cfg.prime_list,
        deep=cfg.deep,
        deep_nullcone=cfg.deep_nullcone,
        deep_33=cfg.deep_33,
        timings=cfg.timings,
        trials=cfg.trials,
        cache=cfg.cache(),
    )


def parse_rows(text: str | None) -> list[str]:
    labels = [c.label for c in casebook.load_cases()]
    if text is None or text == "all":
        return labels
    if text in ("", "none"):
        return []
    rows = [r.strip() for r in text.split(",") if r.strip()]
    unknown = [r for r in rows if r not in labels]
    if unknown:
        raise SystemExit(f"unknown rows: {', '.join(unknown)}")
    return sorted(set(rows), key=labels.index)


def cmd_table(cfg: RunConfig) -> tuple[int, str]:
    cases = [casebook.case_by_label(r) for r in cfg.rows]
    jobs = [(r, cfg) for r in cfg.rows]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            reports = list(pool.map(_verify_row, jobs))
    else:
        reports = [_verify_row(j) for j in jobs]
    reports.sort(key=lambda r: cfg.rows.index(r.label))
    code = EXIT_OK if all(r.all_match for r in reports) else EXIT_MISMATCH
    if cfg.output == "table":
        text = casebook.render_table(cases, reports)
    else:
        text = _dump({"command": "table", **cfg.header(), "rows": [r.to_json() for r in reports], "all_match": code == 0})
    for r in reports:
        for name in r.failing():
            ch = r.check(name)
            print(f"{r.label}: {name}: expected {ch.expected}, computed {ch.computed}", file=sys.stderr)
    return code, text


def cmd_lemma(cfg: RunConfig, algebra=None, invariants=None) -> tuple[int, str]:
    rep = casebook.verify_lemma(
        RandomSource(cfg.seed), hyperplanes=cfg.probe_hyperplanes, algebra=algebra, invariants=invariants
    )
    for name in rep.failing():
        print(f"lemma: {name} failed", file=sys.stderr)
    text = _dump({"command": "lemma", "seed": cfg.seed, **rep.to_json()})
    return (EXIT_OK if rep.all_match else EXIT_MISMATCH), text


def parse_module_spec(text: str) -> list[tuple[tuple[int, ...], int, bool]]:
    """``"1,0+1,0*"`` -> two summands, the second dualized."""
    out = []
    for part in text.split("+"):
        part = part.strip()
        is_dual = part.endswith("*")
        out.append((tuple(int(x) for x in part.rstrip("*").split(",")), 1, is_dual))
    return out


def cmd_invariants(
    cfg: RunConfig, bidegree: tuple[int, int], case: str | None = None, algebra: str | None = None, mod: str | None = None
) -> tuple[int, str]:
    if case:
        L, R = casebook.build_case(casebook.case_by_label(case), cfg.cache())
        S = semidirect(L, R)
    elif algebra:
        L = chevalley(algebra)
        S = semidirect(L, module(L, parse_module_spec(mod))) if mod else L
    else:
        raise SystemExit("either --case or --algebra is required")
    inv = invariant_space(S, bidegree, primes=cfg.prime_list, budget=cfg.budget)
    body = {"command": "invariants", "case": case, "algebra": algebra or S.name, **inv.to_json()}
    body["basis"] = [b.normalized().to_text() for b in inv.basis]
    return EXIT_OK, _dump(body)


def cmd_reductions(cfg: RunConfig, extras: bool = True) -> tuple[int, str]:
    src = RandomSource(cfg.seed)
    reports = [casebook.verify_reduction(e, src) for e in casebook.reduction_edges(extras)]
    for r in reports:
        for name in r.failing():
            print(f"{r.label}: {name} failed", file=sys.stderr)
    ok = all(r.all_match for r in reports)
    text = _dump({"command": "reductions", "seed": cfg.seed, "edges": [r.to_json() for r in reports], "all_match": ok})
    return (EXIT_OK if ok else EXIT_MISMATCH), text


def _dump(obj) -> str:
    return json.dumps(casebook._jsonable(obj), indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every sampled point (default 0)")
    common.add_argument("--primes", type=int, default=2, help="number of primes (default 2)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--cache-dir", help=f"module cache directory (default ${CACHE_ENV} or ~/.cache)")
    common.add_argument("--no-cache", action="store_true", help="build every module from scratch")

    p = argparse.ArgumentParser(prog="coadjoint-workbench", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="verify rows of the exceptional table")
    t.add_argument("--rows", default="all", help="comma-separated labels, 'all' or 'none'")
    t.add_argument("--trials", type=int, help="initial samples per prime")
    t.add_argument("--deep", action="store_true", help="bi-degree (2,2) check on row 1a")
    t.add_argument("--deep-nullcone", action="store_true", help="null-cone stabilizers on rows 3a and 4a")
    t.add_argument("--deep-33", action="store_true", help="modular-only bi-degree (3,3) search on row 1a")
    t.add_argument("--format", choices=("tree", "table"), default="tree")
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")

    lm = sub.add_parser("lemma", parents=[common], help="exact checks on the eight-dimensional algebra")
    lm.add_argument("--probe-hyperplanes", type=int, default=5)

    inv = sub.add_parser("invariants", parents=[common], help="invariants of a given bi-degree")
    g = inv.add_mutually_exclusive_group(required=True)
    g.add_argument("--case", help="row label, e.g. 1a")
    g.add_argument("--algebra", help="Cartan type, e.g. G2")
    inv.add_argument("--module", help="highest weights for --algebra, e.g. '1,0' or '1,0+0,1*'")
    inv.add_argument("--bidegree", required=True, help="d_g,d_v")
    inv.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum constraint nonzeros")

    sub.add_parser("reductions", parents=[common], help="verify the reduction-tree edges")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cache_dir = None if args.no_cache else str(args.cache_dir or default_cache_dir())
    cfg = RunConfig(seed=args.seed, primes=args.primes, cache_dir=cache_dir)
    try:
        if args.command == "table":
            cfg.rows = parse_rows(args.rows)
            cfg.trials = args.trials
            cfg.deep, cfg.deep_nullcone, cfg.deep_33 = args.deep, args.deep_nullcone, args.deep_33
            cfg.output, cfg.jobs, cfg.timings = args.format, args.jobs, args.timings
            code, text = cmd_table(cfg)
        elif args.command == "lemma":
            cfg.probe_hyperplanes = args.probe_hyperplanes
            code, text = cmd_lemma(cfg)
        elif args.command == "invariants":
            cfg.budget = args.budget
            dg, dv = (int(x) for x in args.bidegree.split(","))
            code, text = cmd_invariants(cfg, (dg, dv), args.case, args.algebra, args.module)
        else:
            code, text = cmd_reductions(cfg)
    except (BudgetExceeded, SampleBudgetExhausted) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (WorkbenchError, ArithmeticError, ValueError, KeyError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
