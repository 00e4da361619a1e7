"""Root systems and Chevalley bases.

Fundamental weights follow the Vinberg--Onishchik numbering.  Where it
differs from Bourbaki the translation is::

    E6  VO 1 2 3 4 5 6  ->  Bourbaki 1 3 4 5 6 2
    E7  VO 1 2 3 4 5 6 7  ->  Bourbaki 7 6 5 4 3 1 2
    F4  VO 1 2 3 4  ->  Bourbaki 4 3 2 1

In this numbering the smallest nontrivial module of G2, F4, E6 and E7
has highest weight 1; the dual of the 27 of E6 is 5.

``cartan[i][j]`` is the value of the j-th simple root on the i-th simple
coroot ``h_i``.  Roots are integer vectors in simple-root coordinates and
weights are integer vectors in fundamental-weight coordinates.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from ._hwmodule import build_weight_module
from .algebra import LieAlgebra
from .arith import SparseMatrix
from .errors import UnsupportedType

Root = tuple[int, ...]

VO_TO_BOURBAKI = {
    "E6": (1, 3, 4, 5, 6, 2),
    "E7": (7, 6, 5, 4, 3, 1, 2),
    "F4": (4, 3, 2, 1),
}


@dataclass(frozen=True)
class CartanType:
    letter: str
    rank: int

    def __post_init__(self):
        ok = {
            "A": self.rank >= 1,
            "B": self.rank >= 2,
            "C": self.rank >= 2,
            "D": self.rank >= 4,
            "E": self.rank in (6, 7, 8),
            "F": self.rank == 4,
            "G": self.rank == 2,
        }
        if not ok.get(self.letter, False):
            raise UnsupportedType(f"no simple Lie algebra of type {self.letter}{self.rank}")

    def __str__(self) -> str:
        return f"{self.letter}{self.rank}"

    @classmethod
    def parse(cls, text) -> "CartanType":
        if isinstance(text, CartanType):
            return text
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", str(text))
        if not m:
            raise UnsupportedType(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))


def _diagram(t: CartanType) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Squared root lengths and edges (i, j, multiplicity), 0-based, VO numbering."""
    n, L = t.rank, t.letter
    chain = [(i, i + 1, 1) for i in range(n - 1)]
    if L == "A":
        return [2] * n, chain
    if L == "B":
        return [4] * (n - 1) + [2], chain[:-1] + [(n - 2, n - 1, 2)]
    if L == "C":
        return [2] * (n - 1) + [4], chain[:-1] + [(n - 2, n - 1, 2)]
    if L == "D":
        return [2] * n, [(i, i + 1, 1) for i in range(n - 2)] + [(n - 3, n - 1, 1)]
    if L == "E":
        branch = {6: 2, 7: 3, 8: 4}[n]
        return [2] * n, [(i, i + 1, 1) for i in range(n - 2)] + [(branch, n - 1, 1)]
    if L == "F":
        return [2, 2, 4, 4], [(0, 1, 1), (1, 2, 2), (2, 3, 1)]
    if L == "G":
        return [2, 6], [(0, 1, 3)]
    raise UnsupportedType(str(t))


class RootSystem:
    def __init__(self, cartan_type: CartanType):
        self.cartan_type = cartan_type
        n = cartan_type.rank
        lengths, edges = _diagram(cartan_type)
        gram = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = Fraction(lengths[i])
        for i, j, m in edges:
            v = Fraction(-m * min(lengths[i], lengths[j]), 2)
            gram[i][j] = gram[j][i] = v
        self.gram = tuple(tuple(r) for r in gram)
        self.lengths = tuple(lengths)
        self.cartan = tuple(tuple(int(2 * gram[i][j] / gram[i][i]) for j in range(n)) for i in range(n))
        self.positive = self._enumerate_positive()
        self.roots = self.positive + tuple(tuple(-c for c in a) for a in self.positive)
        self._root_set = frozenset(self.roots)

    def __repr__(self) -> str:
        return f"RootSystem({self.cartan_type})"

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def _enumerate_positive(self) -> tuple[Root, ...]:
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            new = set()
            for b in layer:
                for i in range(n):
                    # p = how far the alpha_i-string descends from b
                    p = 0
                    while True:
                        c = tuple(x - (p + 1) * (k == i) for k, x in enumerate(b))
                        if c in found:
                            p += 1
                        else:
                            break
                    q = p - self.pairing(b, i)
                    if q > 0:
                        new.add(tuple(x + (k == i) for k, x in enumerate(b)))
            new -= found
            found |= new
            layer = sorted(new)
        return tuple(sorted(found, key=lambda a: (sum(a), tuple(-x for x in a))))

    # -- root/weight arithmetic --------------------------------------------

    def pairing(self, root: Root, i: int) -> int:
        """Value of a root (simple-root coordinates) on the coroot h_i."""
        return sum(c * self.cartan[i][j] for j, c in enumerate(root))

    def is_root(self, a: Root) -> bool:
        return tuple(a) in self._root_set

    @staticmethod
    def height(a: Root) -> int:
        return sum(a)

    def root_to_weight(self, a: Root) -> tuple[int, ...]:
        return tuple(self.pairing(a, i) for i in range(self.rank))

    def norm2(self, a: Sequence) -> Fraction:
        """Squared length of a vector in simple-root coordinates."""
        n = self.rank
        return sum((self.gram[i][j] * a[i] * a[j] for i in range(n) for j in range(n) if a[i] and a[j]), Fraction(0))

    def coroot(self, a: Root) -> tuple[Fraction, ...]:
        """h_a as a combination of the simple coroots h_i."""
        na = self.norm2(a)
        return tuple(Fraction(c * self.lengths[i]) / na for i, c in enumerate(a))

    def weight_root_pairing(self, lam: Sequence, a: Root) -> Fraction:
        """(lam, a) for lam in fundamental-weight coordinates and a in root coordinates."""
        return sum((Fraction(a[k] * self.lengths[k], 2) * lam[k] for k in range(self.rank) if a[k]), Fraction(0))

    @cached_property
    def inverse_cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.rank
        aug = [[Fraction(self.cartan[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next(i for i in range(c, n) if aug[i][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [x * inv for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return tuple(tuple(row[n:]) for row in aug)

    def weight_to_root_coords(self, lam: Sequence) -> tuple[Fraction, ...]:
        inv = self.inverse_cartan
        n = self.rank
        return tuple(sum((inv[k][i] * lam[i] for i in range(n)), Fraction(0)) for k in range(n))

    def weight_inner(self, lam: Sequence, mu: Sequence) -> Fraction:
        c = self.weight_to_root_coords(mu)
        return sum((Fraction(self.lengths[k], 2) * lam[k] * c[k] for k in range(self.rank)), Fraction(0))

    @property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    @property
    def highest_root(self) -> Root:
        return self.positive[-1]

    def weyl_dimension(self, lam: Sequence[int]) -> int:
        num = den = Fraction(1)
        lr = [x + 1 for x in lam]
        for a in self.positive:
            num *= self.weight_root_pairing(lr, a)
            den *= self.weight_root_pairing(self.rho, a)
        d = num / den
        assert d.denominator == 1
        return int(d)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(x >= 0 for x in lam)

    def extraspecial(self, xi: Root) -> tuple[int, Root, int]:
        """(i, beta, p) with xi = alpha_i + beta, i minimal, p the alpha_i-string depth below beta."""
        for i in range(self.rank):
            beta = tuple(x - (k == i) for k, x in enumerate(xi))
            if beta in self._root_set and any(beta):
                p = 0
                while tuple(x - (p + 1) * (k == i) for k, x in enumerate(beta)) in self._root_set:
                    p += 1
                return i, beta, p
        raise ValueError(f"{xi} is simple or not a root")

    def recipes(self) -> list[tuple[Root, int, Root, Fraction]]:
        """Chevalley root vectors as normalised brackets of lower ones.

        ``e_xi = c [e_i, e_beta]`` and ``e_{-xi} = -c [f_i, e_{-beta}]`` with
        ``c = 1/(p+1)``; this fixes N_{alpha_i, beta} = p + 1 on extraspecial pairs.
        """
        out = []
        for xi in self.positive:
            if sum(xi) == 1:
                continue
            i, beta, p = self.extraspecial(xi)
            out.append((xi, i, beta, Fraction(1, p + 1)))
        return out

    def faithful_weight(self) -> tuple[int, ...]:
        t = self.cartan_type
        if (t.letter, t.rank) == ("E", 8):
            return self.root_to_weight(self.highest_root)
        return tuple(int(i == 0) for i in range(self.rank))


@lru_cache(maxsize=None)
def roots(t) -> RootSystem:
    return RootSystem(CartanType.parse(t))


def _label(a: Root) -> str:
    if all(x >= 0 for x in a):
        return "e(" + ",".join(map(str, a)) + ")"
    return "f(" + ",".join(str(-x) for x in a) + ")"


def root_label(a: Root) -> str:
    return _label(a)


def root_vector_matrices(rs: RootSystem, e: Sequence[SparseMatrix], f: Sequence[SparseMatrix]) -> dict[Root, SparseMatrix]:
    """Images of all Chevalley root vectors given images of the e_i and f_i."""
    n = rs.rank
    mats: dict[Root, SparseMatrix] = {}
    for i in range(n):
        a = tuple(int(k == i) for k in range(n))
        mats[a] = e[i]
        mats[tuple(-x for x in a)] = f[i]
    for xi, i, beta, c in rs.recipes():
        mats[xi] = e[i].commutator(mats[beta]).scale(c)
        nb = tuple(-x for x in beta)
        mats[tuple(-x for x in xi)] = f[i].commutator(mats[nb]).scale(-c)
    return mats


@lru_cache(maxsize=None)
def _chevalley_cached(t: str) -> LieAlgebra:
    rs = roots(t)
    n = rs.rank
    mod = build_weight_module(rs.cartan, rs.faithful_weight())
    mats = root_vector_matrices(rs, mod.e, mod.f)
    H = mod.h

    def coroot_matrix(a):
        out = SparseMatrix(mod.dim, mod.dim)
        for i, c in enumerate(rs.coroot(a)):
            if c:
                out = out + H[i].scale(c)
        return out

    for a in rs.positive:
        na = tuple(-x for x in a)
        if mats[a].commutator(mats[na]) != coroot_matrix(a):
            raise ArithmeticError(f"Chevalley normalisation failed at root {a}")

    basis_roots = list(rs.positive) + [tuple(-x for x in a) for a in rs.positive]
    labels = [f"h{i + 1}" for i in range(n)] + [_label(a) for a in basis_roots]
    idx = {a: n + k for k, a in enumerate(basis_roots)}
    br: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(n):
        for a in basis_roots:
            v = rs.pairing(a, i)
            if v:
                br[(i, idx[a])] = {idx[a]: Fraction(v)}
    for ka, a in enumerate(basis_roots):
        for b in basis_roots[ka + 1 :]:
            s = tuple(x + y for x, y in zip(a, b))
            comm = mats[a].commutator(mats[b])
            if not any(s):
                h = rs.coroot(a)
                vec = {i: c for i, c in enumerate(h) if c}
                if comm != coroot_matrix(a):
                    raise ArithmeticError("coroot bracket mismatch")
            elif s in rs._root_set:
                target = mats[s]
                (r0, c0, t0) = target.entries[0]
                N = comm[r0, c0] / t0
                if comm != target.scale(N):
                    raise ArithmeticError(f"[e{a}, e{b}] is not proportional to e{s}")
                vec = {idx[s]: N}
            else:
                if not comm.is_zero():
                    raise ArithmeticError(f"[e{a}, e{b}] should vanish")
                continue
            br[(idx[a], idx[b])] = vec
    weights = [(0,) * n] * n + [rs.root_to_weight(a) for a in basis_roots]
    gens = [idx[a] for a in rs.simple_roots] + [idx[tuple(-x for x in a)] for a in rs.simple_roots]
    return LieAlgebra(
        str(rs.cartan_type), labels, br, weights=weights, cartan=range(n), generators=gens, cartan_type=str(rs.cartan_type)
    )


def chevalley(rs) -> LieAlgebra:
    """Chevalley basis h_1..h_r, e_alpha (alpha > 0 by height), e_{-alpha}."""
    if not isinstance(rs, RootSystem):
        rs = roots(rs)
    return _chevalley_cached(str(rs.cartan_type))


def chevalley_root_index(L: LieAlgebra) -> dict[Root, int]:
    rs = roots(L.cartan_type)
    n = rs.rank
    basis_roots = list(rs.positive) + [tuple(-x for x in a) for a in rs.positive]
    return {a: n + k for k, a in enumerate(basis_roots)}


def killing_form(L: LieAlgebra) -> SparseMatrix:
    """K(x_a, x_b) = trace(ad x_a ad x_b)."""
    I, J, K, C = L.structure_coo()
    # ad_a[k, j] = c_{a j}^k ; K[a, b] = sum_{j,k} ad_a[k, j] ad_b[j, k]
    by_jk: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for a, j, k, c in zip(I.tolist(), J.tolist(), K.tolist(), C):
        by_jk.setdefault((j, k), []).append((a, c))
    acc: dict[tuple[int, int], Fraction] = {}
    for (j, k), lst in by_jk.items():
        other = by_jk.get((k, j))
        if not other:
            continue
        for a, c in lst:
            for b, d in other:
                acc[(a, b)] = acc.get((a, b), 0) + c * d
    return SparseMatrix(L.dim, L.dim, ((a, b, v) for (a, b), v in acc.items()))
