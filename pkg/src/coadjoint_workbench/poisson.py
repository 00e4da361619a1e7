"""Sparse polynomials on the dual of a Lie algebra and their Poisson brackets."""
from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

import numpy as np

from .algebra import LieAlgebra, as_sparse_vector, subalgebra_constants
from .arith import (
    DEFAULT_PRIMES,
    RandomSource,
    SparseEchelon,
    as_scalar,
    crt,
    format_scalar,
    rank_exact,
    rank_mod_dense,
    rational_reconstruct,
    reduce_mod,
)
from .errors import BudgetExceeded, MissingWeightTags, MixedAlgebras

Monomial = tuple[tuple[int, int], ...]  # sorted (variable, exponent) pairs
DEFAULT_BUDGET = 10**7


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def _mono_deg(m: Monomial) -> int:
    return sum(e for _, e in m)


class MultiPoly:
    """Polynomial in the basis elements of ``algebra``, viewed as functions on its dual."""

    __slots__ = ("algebra", "terms", "_bideg")

    def __init__(self, algebra: LieAlgebra, terms: Mapping[Monomial, object] | None = None):
        self.algebra = algebra
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                m = tuple(sorted((int(i), int(e)) for i, e in m if e))
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}
        self._bideg = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def var(cls, algebra: LieAlgebra, x) -> "MultiPoly":
        i = algebra.index(x) if isinstance(x, str) else int(x)
        return cls(algebra, {((i, 1),): 1})

    @classmethod
    def const(cls, algebra: LieAlgebra, c) -> "MultiPoly":
        return cls(algebra, {(): c})

    @classmethod
    def linear(cls, algebra: LieAlgebra, vec) -> "MultiPoly":
        return cls(algebra, {((i, 1),): c for i, c in as_sparse_vector(vec).items()})

    @classmethod
    def gens(cls, algebra: LieAlgebra) -> list["MultiPoly"]:
        return [cls.var(algebra, i) for i in range(algebra.dim)]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise MixedAlgebras("polynomials over different algebras")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.algebra, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return MultiPoly(self.algebra, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t: dict[Monomial, Fraction] = defaultdict(Fraction)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                t[_mono_mul(m1, m2)] += c1 * c2
        return MultiPoly(self.algebra, t)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / as_scalar(c))

    def __pow__(self, e: int):
        out = MultiPoly.const(self.algebra, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.algebra == other.algebra and self.terms == other.terms
        if not self.terms:
            return as_scalar(other) == 0
        return self.terms == {(): as_scalar(other)}

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text().strip() or '0'})"

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> list[int]:
        return sorted({i for m in self.terms for i, _ in m})

    def total_degree(self) -> int:
        return max((_mono_deg(m) for m in self.terms), default=0)

    def bidegree(self) -> tuple[int, int] | None:
        """(deg_g, deg_V) when the algebra is graded and the polynomial bi-homogeneous."""
        if self._bideg is None:
            g = self.algebra.grading
            if g is None:
                return None
            degs = {(sum(e for i, e in m if g[i] == "g"), sum(e for i, e in m if g[i] == "v")) for m in self.terms}
            self._bideg = degs.pop() if len(degs) == 1 else False
        return self._bideg or None

    def derivative(self, i: int) -> "MultiPoly":
        t = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(i, 0)
            if e:
                if e == 1:
                    del d[i]
                else:
                    d[i] = e - 1
                t[tuple(sorted(d.items()))] = c * e
        return MultiPoly(self.algebra, t)

    def order_key(self, m: Monomial):
        """Graded lexicographic key in basis order (larger is earlier)."""
        dense = [0] * self.algebra.dim
        for i, e in m:
            dense[i] = e
        return (_mono_deg(m), tuple(dense))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: self.order_key(mc[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        return self.sorted_terms()[0][1] if self.terms else Fraction(0)

    def normalized(self) -> "MultiPoly":
        """Scaled so that the first coefficient in monomial order is 1."""
        return self / self.leading_coefficient() if self.terms else self

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, point: Mapping[int, object]) -> Fraction:
        pt = {i: as_scalar(v) for i, v in point.items()}
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for i, e in m:
                v *= pt.get(i, 0) ** e
                if not v:
                    break
            total += v
        return total

    def substitute(self, values: Mapping[int, object], target: LieAlgebra | None = None, reindex: Mapping[int, int] | None = None) -> "MultiPoly":
        """Replace variables by constants; surviving variables may be renumbered into ``target``."""
        vals = {i: as_scalar(v) for i, v in values.items()}
        t: dict[Monomial, Fraction] = defaultdict(Fraction)
        for m, c in self.terms.items():
            keep = []
            for i, e in m:
                if i in vals:
                    c *= vals[i] ** e
                    if not c:
                        break
                else:
                    keep.append((reindex[i] if reindex else i, e))
            if c:
                t[tuple(sorted(keep))] += c
        return MultiPoly(target or self.algebra, t)

    def linear_substitution(self, images: Mapping[int, "MultiPoly"], target: LieAlgebra) -> "MultiPoly":
        """Replace each variable i by the polynomial images[i] (variables missing map to 0)."""
        out = MultiPoly(target)
        cache: dict[tuple[int, int], MultiPoly] = {}
        for m, c in self.terms.items():
            term = MultiPoly.const(target, c)
            for i, e in m:
                if (i, e) not in cache:
                    base = images.get(i, MultiPoly(target))
                    cache[(i, e)] = base**e
                term = term * cache[(i, e)]
                if not term:
                    break
            out = out + term
        return out

    def point_coordinates(self) -> list[int]:
        """Coordinates a sampled point should cover: the V-part for graded algebras."""
        g = self.algebra.grading
        if g is not None:
            return [i for i, tag in enumerate(g) if tag == "v"]
        return list(range(self.algebra.dim))

    def eval_mod(self, coords: Sequence[int], values, p: int) -> int:
        pos = {c: k for k, c in enumerate(coords)}
        vals = [int(v) % p for v in values]
        total = 0
        for m, c in self.terms.items():
            v = reduce_mod(c, p)
            for i, e in m:
                k = pos.get(i)
                if k is None:
                    v = 0
                    break
                v = v * pow(vals[k], e, p) % p
            total = (total + v) % p
        return total

    def gradient_mod(self, values, p: int) -> np.ndarray:
        """Partial derivatives modulo p at a point given on all coordinates."""
        coords = list(range(self.algebra.dim))
        return np.array([self.derivative(i).eval_mod(coords, values, p) for i in coords], dtype=np.int64)

    # -- text format --------------------------------------------------------

    def to_text(self) -> str:
        labels = self.algebra.labels
        lines = []
        for m, c in self.sorted_terms():
            mono = " ".join(labels[i] if e == 1 else f"{labels[i]}^{e}" for i, e in m)
            lines.append(f"{format_scalar(c)} * {mono}" if mono else format_scalar(c))
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, algebra: LieAlgebra, text: str) -> "MultiPoly":
        t: dict[Monomial, Fraction] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            coeff, _, mono = line.partition(" * ")
            m: dict[int, int] = {}
            for tok in mono.split():
                lab, _, e = tok.partition("^")
                i = algebra.index(lab)
                m[i] = m.get(i, 0) + (int(e) if e else 1)
            key = tuple(sorted(m.items()))
            if key in t:
                raise ValueError(f"repeated monomial {mono!r}")
            t[key] = Fraction(coeff)
        return cls(algebra, t)


def parse_poly(algebra: LieAlgebra, expr: str) -> MultiPoly:
    """Parse a small arithmetic expression in basis labels (``+ - * / ^`` and parentheses)."""
    labels = sorted(algebra.labels, key=len, reverse=True)
    tokens: list[str] = []
    k = 0
    while k < len(expr):
        ch = expr[k]
        if ch.isspace():
            k += 1
            continue
        m = re.match(r"\d+(?:/\d+)?", expr[k:])
        if m:
            tokens.append(m.group())
            k += m.end()
            continue
        lab = next((lb for lb in labels if expr.startswith(lb, k)), None)
        if lab is not None:
            tokens.append(lab)
            k += len(lab)
        elif ch in "+-*/^()":
            tokens.append(ch)
            k += 1
        else:
            raise ValueError(f"unexpected input at {expr[k:]!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def atom():
        tok = take()
        if tok == "(":
            v = sum_()
            take()
            return v
        if tok == "-":
            return -factor()
        if re.fullmatch(r"\d+(?:/\d+)?", tok):
            return MultiPoly.const(algebra, Fraction(tok))
        return MultiPoly.var(algebra, tok)

    def factor():
        v = atom()
        while peek() == "^":
            take()
            v = v ** int(take())
        return v

    def term():
        v = factor()
        while peek() in ("*", "/") or (peek() is not None and peek() not in ("+", "-", ")")):
            op = take() if peek() in ("*", "/") else "*"
            rhs = factor()
            if op == "*":
                v = v * rhs
            else:
                v = v / rhs.terms[()]
        return v

    def sum_():
        v = term()
        while peek() in ("+", "-"):
            op = take()
            rhs = term()
            v = v + rhs if op == "+" else v - rhs
        return v

    out = sum_()
    if pos != len(tokens):
        raise ValueError(f"unparsed input near {tokens[pos:]}")
    return out


# -- Poisson structure ---------------------------------------------------------


def poisson_bracket(F: MultiPoly, G: MultiPoly) -> MultiPoly:
    """Biderivation extending {x_i, x_j} = [x_i, x_j]."""
    F._check(G)
    L = F.algebra
    out: dict[Monomial, Fraction] = defaultdict(Fraction)
    dF = {i: F.derivative(i) for i in F.variables()}
    dG = {j: G.derivative(j) for j in G.variables()}
    for i, fi in dF.items():
        for j, gj in dG.items():
            br = L.bracket_basis(i, j)
            if not br:
                continue
            prod = fi * gj
            for k, c in br.items():
                for m, v in prod.terms.items():
                    out[_mono_mul(m, ((k, 1),))] += c * v
    return MultiPoly(L, out)


def bracket_with_basis(F: MultiPoly, j: int) -> MultiPoly:
    """{F, x_j} = sum_i dF/dx_i [x_i, x_j]."""
    L = F.algebra
    out: dict[Monomial, Fraction] = defaultdict(Fraction)
    for i in F.variables():
        br = L.bracket_basis(i, j)
        if not br:
            continue
        for m, v in F.derivative(i).terms.items():
            for k, c in br.items():
                out[_mono_mul(m, ((k, 1),))] += c * v
    return MultiPoly(L, out)


def is_invariant(F: MultiPoly, L: LieAlgebra | None = None) -> bool:
    """True iff {F, x_i} = 0 for every basis element."""
    if L is not None and L is not F.algebra and L != F.algebra:
        raise MixedAlgebras("polynomial is over a different algebra")
    return all(bracket_with_basis(F, j).is_zero() for j in range(F.algebra.dim))


def _commutes_with_generators(F: MultiPoly) -> bool:
    # equivalent to is_invariant: {F, .} is a derivation of the bracket
    return all(bracket_with_basis(F, j).is_zero() for j in F.algebra.generator_indices())


# -- invariant searches ---------------------------------------------------------


def _split_degree(S: LieAlgebra, d) -> tuple[list[int], int, list[int], int]:
    if isinstance(d, int):
        return list(range(S.dim)), d, [], 0
    dg, dv = d
    if S.grading is None:
        if dv:
            raise ValueError("a V-degree needs a graded (semi-direct) algebra")
        return list(range(S.dim)), dg, [], 0
    g = [i for i, t in enumerate(S.grading) if t == "g"]
    v = [i for i, t in enumerate(S.grading) if t == "v"]
    return g, dg, v, dv


def _integer_weights(W) -> list[tuple[int, ...]]:
    from math import lcm

    den = 1
    for w in W:
        for x in w:
            den = lcm(den, Fraction(x).denominator)
    return [tuple(int(Fraction(x) * den) for x in w) for w in W]


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _grouped(idx: list[int], deg: int, W) -> dict[tuple, list[tuple[int, ...]]]:
    out: dict[tuple, list[tuple[int, ...]]] = defaultdict(list)
    zero = (0,) * (len(W[0]) if W else 0)
    for combo in combinations_with_replacement(idx, deg):
        w = zero
        for i in combo:
            w = _add(w, W[i])
        out[w].append(combo)
    return out


class _ComboIndex:
    """Multisets of size ``deg`` from ``idx`` with prescribed weight sum, by meet in the middle."""

    def __init__(self, idx: list[int], deg: int, W):
        self.deg, self.W = deg, W
        self.k = deg // 2
        self.low = _grouped(idx, self.k, W)
        self.high = _grouped(idx, deg - self.k, W)

    def with_weight(self, target: tuple) -> list[tuple[int, ...]]:
        out = []
        for w, lows in self.low.items():
            highs = self.high.get(tuple(t - x for t, x in zip(target, w)))
            if not highs:
                continue
            for a in lows:
                top = a[-1] if a else -1
                out.extend(a + b for b in highs if not b or b[0] >= top)
        return out


def weight_zero_monomials(S: LieAlgebra, d) -> list[Monomial]:
    """Monomials of (bi-)degree ``d`` with vanishing total weight, in decreasing graded-lex order."""
    if S.weights is None:
        raise MissingWeightTags(f"{S.name} carries no weight tags")
    gi, dg, vi, dv = _split_degree(S, d)
    W = _integer_weights(S.weights)
    zero = (0,) * (len(W[0]) if W else 0)
    gpart = _grouped(gi, dg, W)
    vindex = _ComboIndex(vi, dv, W)
    out = []
    for w, left in gpart.items():
        right = vindex.with_weight(tuple(-x for x in w)) if (vi or dv) else ([()] if w == zero else [])
        for a in left:
            for b in right:
                m: dict[int, int] = {}
                for i in a + b:
                    m[i] = m.get(i, 0) + 1
                out.append(tuple(sorted(m.items())))
    probe = MultiPoly(S)
    out.sort(key=probe.order_key, reverse=True)
    return out


@dataclass
class InvariantSpace:
    """Kernel of the invariance conditions on a space of monomials."""

    algebra: LieAlgebra
    degree: object
    dim: int
    basis: list[MultiPoly]
    status: str  # "exact" | "modular-only"
    monomials: int
    constraints: int
    nonzeros: int
    primes: tuple[int, ...] = ()
    dims_per_prime: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return self.dim

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "degree": list(self.degree) if isinstance(self.degree, tuple) else self.degree,
            "dim": self.dim,
            "status": self.status,
            "monomials": self.monomials,
            "constraints": self.constraints,
            "nonzeros": self.nonzeros,
            "primes": list(self.primes),
            "dims_per_prime": {str(k): v for k, v in self.dims_per_prime.items()},
            "basis": [b.to_text() for b in self.basis],
        }


def _constraint_rows(S: LieAlgebra, monos: list[Monomial], budget: int):
    """Rows of the linear map c -> ({sum c_m m, x})_x over the generators x."""
    col = {m: k for k, m in enumerate(monos)}
    rows: dict[tuple[int, Monomial], dict[int, Fraction]] = {}
    nnz = 0
    gens = S.generator_indices()
    for k, m in enumerate(monos):
        for x in gens:
            for i, e in m:
                br = S.bracket_basis(i, x)
                if not br:
                    continue
                rest = dict(m)
                if e == 1:
                    del rest[i]
                else:
                    rest[i] = e - 1
                for j, c in br.items():
                    r = dict(rest)
                    r[j] = r.get(j, 0) + 1
                    key = (x, tuple(sorted(r.items())))
                    row = rows.setdefault(key, {})
                    if k not in row:
                        nnz += 1
                    row[k] = row.get(k, 0) + e * c
        if nnz > budget:
            raise BudgetExceeded(f"constraint matrix exceeds {budget} nonzeros")
    out = [{c: v for c, v in r.items() if v} for r in rows.values()]
    return [r for r in out if r], nnz, col


def _canonical_kernel(vectors: list[dict], ncols: int, p: int | None) -> list[dict]:
    """Fully reduced row echelon basis with leading (leftmost) pivots."""
    rows = [dict(v) for v in vectors]
    out: list[dict] = []
    for c in range(ncols):
        piv = next((r for r in rows if r.get(c)), None)
        if piv is None:
            continue
        rows.remove(piv)
        inv = (1 / piv[c]) if p is None else pow(int(piv[c]), -1, p)
        piv = {k: (v * inv if p is None else v * inv % p) for k, v in piv.items()}

        def elim(r):
            f = r.get(c)
            if not f:
                return r
            n = dict(r)
            for k, v in piv.items():
                n[k] = (n.get(k, 0) - f * v) if p is None else (n.get(k, 0) - f * v) % p
            return {k: v for k, v in n.items() if v}

        rows = [x for x in (elim(r) for r in rows) if x]
        out = [elim(o) for o in out]
        out.append(piv)
    return out


def invariant_space(
    S: LieAlgebra,
    d,
    mode: str = "modular",
    primes: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
    reconstruct_max: int = 4,
) -> InvariantSpace:
    """Basis of the S-invariants of (bi-)degree ``d`` supported on weight-zero monomials."""
    monos = weight_zero_monomials(S, d)
    rows, nnz, _ = _constraint_rows(S, monos, budget)
    n = len(monos)
    if mode == "exact":
        ech = SparseEchelon(n)
        for r in rows:
            ech.add(r)
        basis = _canonical_kernel(ech.kernel(), n, None)
        polys = [MultiPoly(S, {monos[k]: v for k, v in b.items()}) for b in basis]
        return InvariantSpace(S, d, len(polys), polys, "exact", n, len(rows), nnz)
    if mode != "modular":
        raise ValueError("mode must be 'exact' or 'modular'")
    primes = tuple(primes) if primes else DEFAULT_PRIMES[:2]
    kernels, dims = {}, {}
    for p in primes:
        ech = SparseEchelon(n, p)
        for r in rows:
            ech.add({c: reduce_mod(v, p) for c, v in r.items()})
        ker = _canonical_kernel(ech.kernel(), n, p)
        kernels[p] = ker
        dims[p] = len(ker)
    dim = min(dims.values())
    polys: list[MultiPoly] = []
    status = "modular-only"
    if len(set(dims.values())) == 1 and 0 < dim <= reconstruct_max:
        polys = _reconstruct(S, monos, kernels, primes)
        if polys is not None and all(_commutes_with_generators(f) for f in polys):
            status = "exact"
        else:
            polys = []
    elif dim == 0:
        status = "exact"  # a zero kernel modulo p forces a zero kernel over Q
    return InvariantSpace(S, d, dim, polys, status, n, len(rows), nnz, primes, dims)


def _reconstruct(S, monos, kernels, primes) -> list[MultiPoly] | None:
    pivots = [[min(v) for v in kernels[p]] for p in primes]
    if any(pv != pivots[0] for pv in pivots):
        return None
    out = []
    for t in range(len(kernels[primes[0]])):
        cols = sorted(set().union(*(kernels[p][t].keys() for p in primes)))
        coeffs = {}
        for c in cols:
            a, m = crt([int(kernels[p][t].get(c, 0)) for p in primes], list(primes))
            q = rational_reconstruct(a, m)
            if q is None:
                return None
            if q:
                coeffs[monos[c]] = q
        out.append(MultiPoly(S, coeffs))
    return out


# -- restriction to slices ---------------------------------------------------------


def restrict_at(F: MultiPoly, xi: Sequence) -> MultiPoly:
    """Evaluate the V-variables of F at xi in V*, giving a polynomial over the g-part."""
    S = F.algebra
    base = getattr(S, "base", None)
    if base is None or S.grading is None:
        raise ValueError("restrict_at needs a polynomial over a semi-direct product")
    v_idx = [i for i, t in enumerate(S.grading) if t == "v"]
    if len(xi) != len(v_idx):
        raise ValueError(f"point must have length {len(v_idx)}")
    values = {i: x for i, x in zip(v_idx, xi)}
    g_idx = {i: k for k, i in enumerate(k for k, t in enumerate(S.grading) if t == "g")}
    return F.substitute(values, target=base, reindex=g_idx)


def restrict_to_subalgebra(P: MultiPoly, basis: Sequence, name: str | None = None) -> MultiPoly:
    """Restrict a polynomial on g* to h* for a subalgebra h with nondegenerate Killing restriction.

    h* is identified with the Killing-orthogonal section {K(y, .) : y in h}; the
    result is a polynomial in the basis of h (as returned by subalgebra_constants).
    """
    from .rootsys import killing_form

    L = P.algebra
    vecs = [as_sparse_vector(v) for v in basis]
    H = subalgebra_constants(L, vecs, name=name)
    K = killing_form(L)
    k = len(vecs)
    # G[a][i] = K(s_a, x_i);  Ksub[a][b] = K(s_a, s_b)
    G = [[sum((c * K[j, i] for j, c in v.items()), Fraction(0)) for i in range(L.dim)] for v in vecs]
    Ksub = [[sum((G[a][i] * c for i, c in vecs[b].items()), Fraction(0)) for b in range(k)] for a in range(k)]
    from .algebra import _inverse

    Kinv = _inverse(Ksub)
    # z_a = sum_b Kinv[a][b] s_b ;  x_i -> sum_a z_a G[a][i]
    z = [MultiPoly(H, {((b, 1),): Kinv[a][b] for b in range(k)}) for a in range(k)]
    images = {}
    for i in range(L.dim):
        img = MultiPoly(H)
        for a in range(k):
            if G[a][i]:
                img = img + z[a] * G[a][i]
        images[i] = img
    return P.linear_substitution(images, H)


# -- independence ---------------------------------------------------------------------


def jacobian_independence(
    polys: Sequence[MultiPoly], src: RandomSource, samples: int = 2, primes: Sequence[int] | None = None, exact: bool = False
) -> bool:
    """Full row rank of the Jacobian at a sampled point (a certificate when True)."""
    polys = list(polys)
    if not polys:
        return True
    L = polys[0].algebra
    for f in polys[1:]:
        polys[0]._check(f)
    n = L.dim
    if exact:
        for t in range(samples):
            pt = dict(enumerate(src.child("jacobian", t).vector(n)))
            jac = [[f.derivative(i).evaluate(pt) for i in range(n)] for f in polys]
            if rank_exact(jac) == len(polys):
                return True
        return False
    for p in primes or DEFAULT_PRIMES[:2]:
        for t in range(samples):
            pt = src.child("jacobian", t, p).residues(n, p)
            jac = np.array([f.gradient_mod(pt, p) for f in polys], dtype=np.int64)
            if rank_mod_dense(jac, p) == len(polys):
                return True
    return False


__all__ = [
    "MultiPoly",
    "parse_poly",
    "poisson_bracket",
    "bracket_with_basis",
    "is_invariant",
    "weight_zero_monomials",
    "InvariantSpace",
    "invariant_space",
    "restrict_at",
    "restrict_to_subalgebra",
    "jacobian_independence",
]
