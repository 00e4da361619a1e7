"""The eight-dimensional algebra sl2 x| (n(1) + n(2) + n(3)) and its two invariants.

Run with ``python3 demos/lemma_algebra.py``.
"""
from coadjoint_workbench.arith import RandomSource
from coadjoint_workbench.casebook import lemma_algebra, lemma_bracket_terms, lemma_invariants, verify_lemma

q = lemma_algebra()
h1, h2 = lemma_invariants(q)
print("h1 =", " + ".join(h1.to_text().split("\n")[:-1]))
print("h2 =", " + ".join(h2.to_text().split("\n")[:-1]))

print("\n{a1, t} for each summand t of h2:")
for term, got, _ in lemma_bracket_terms(q):
    print(f"  {term:>20}  ->  {got.to_text().strip().replace(chr(10), ' + ') or '0'}")

rep = verify_lemma(RandomSource(0))
print()
for ch in rep.checks:
    print(f"  {ch.name:<26} expected {ch.expected!s:<6} computed {ch.computed!s:<6} [{ch.status}]")
