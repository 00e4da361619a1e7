"""Recompute every numeric column of the twelve-row table (about a minute).

Run with ``python3 demos/exceptional_table.py``.
"""
from coadjoint_workbench.arith import RandomSource
from coadjoint_workbench.casebook import load_cases, render_table, verify_case

cases = load_cases()
reports = [verify_case(c, RandomSource(0)) for c in cases]
print(render_table(cases, reports))
bad = [r.label for r in reports if not r.all_match]
print("all rows reproduced" if not bad else f"mismatches in {bad}")
