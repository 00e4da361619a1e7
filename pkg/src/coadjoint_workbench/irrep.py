"""Finite-dimensional representations of Chevalley algebras and their restrictions."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from ._hwmodule import build_weight_module
from .algebra import LieAlgebra, as_sparse_vector, subalgebra_constants
from .arith import SparseMatrix, as_scalar, direct_sum_matrices, format_scalar
from .errors import DimensionCeilingExceeded, MixedAlgebras, NonDominantWeight, WorkbenchError
from .rootsys import CartanType, RootSystem, chevalley_root_index, roots

Weight = tuple[int, ...]
DEFAULT_CEILING = 256


@dataclass(frozen=True)
class Summand:
    """One irreducible block of a direct sum, with the index of its highest vector."""

    highest_weight: tuple | None
    dual: bool
    offset: int
    dim: int
    generator: int | None = None

    def shifted(self, by: int) -> "Summand":
        gen = None if self.generator is None else self.generator + by
        return replace(self, offset=self.offset + by, generator=gen)


class Representation:
    """Exact matrices ``rho(x_i)`` for every basis element of ``algebra``.

    ``weights`` tags each module basis vector by its weight for the algebra's
    torus (``algebra.cartan``); ``summands`` records how the module was
    assembled.  Instances are treated as immutable.
    """

    def __init__(
        self,
        algebra: LieAlgebra,
        matrices: Sequence[SparseMatrix],
        weights: Sequence[Sequence] | None = None,
        summands: Sequence[Summand] = (),
        charpoly: Sequence[Fraction] | None = None,
    ):
        self.algebra = algebra
        self.matrices = tuple(matrices)
        if len(self.matrices) != algebra.dim:
            raise ValueError("need one matrix per basis element")
        dims = {m.shape for m in self.matrices}
        if len(dims) > 1 or any(r != c for r, c in dims):
            raise ValueError("matrices must be square of a common size")
        self._dim = dims.pop()[0] if dims else (len(weights) if weights is not None else sum(s.dim for s in summands))
        self.weights = tuple(tuple(as_scalar(x) for x in w) for w in weights) if weights is not None else None
        if self.weights is not None and len(self.weights) != self._dim:
            raise ValueError("one weight tag per module basis vector")
        self.summands = tuple(summands)
        self.charpoly = tuple(charpoly) if charpoly is not None else None

    @property
    def dim(self) -> int:
        return self._dim

    def __repr__(self) -> str:
        return f"Representation({self.algebra.name!r}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.matrices == other.matrices
            and self.weights == other.weights
            and self.summands == other.summands
        )

    __hash__ = None

    def act(self, x, v) -> dict[int, Fraction]:
        """rho(x) v for x in the algebra and v in the module (sparse or dense)."""
        out: dict[int, Fraction] = {}
        v = as_sparse_vector(v)
        for i, a in as_sparse_vector(x).items():
            m = self.matrices[i]
            for r, c, val in m.entries:
                if c in v:
                    out[r] = out.get(r, 0) + a * val * v[c]
        return {k: c for k, c in sorted(out.items()) if c}

    def matrix_of(self, x) -> SparseMatrix:
        out = SparseMatrix(self.dim, self.dim)
        for i, a in as_sparse_vector(x).items():
            out = out + self.matrices[i].scale(a)
        return out

    def equivariance_defects(self) -> list[tuple[int, int]]:
        """Basis pairs (i, j) with rho([x_i, x_j]) != [rho(x_i), rho(x_j)]."""
        L = self.algebra
        bad = []
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                if self.matrix_of(L.bracket_basis(i, j)) != self.matrices[i].commutator(self.matrices[j]):
                    bad.append((i, j))
        return bad

    def is_equivariant(self) -> bool:
        return not self.equivariance_defects()

    def weight_multiset(self) -> Counter:
        if self.weights is None:
            raise WorkbenchError("representation carries no weight tags")
        return Counter(self.weights)

    # -- text format --------------------------------------------------------

    def to_text(self) -> str:
        def vec(w):
            return ",".join(format_scalar(as_scalar(x)) for x in w)

        lines = ["# representation v1", f"algebra: {self.algebra.name}", f"dim: {self.dim}"]
        for s in self.summands:
            hw = "-" if s.highest_weight is None else vec(s.highest_weight)
            gen = "-" if s.generator is None else str(s.generator)
            lines.append(f"summand: {hw} dual={int(s.dual)} offset={s.offset} dim={s.dim} generator={gen}")
        if self.weights is not None:
            lines.append("weights: " + ";".join(vec(w) for w in self.weights))
        if self.charpoly is not None:
            lines.append("charpoly: " + vec(self.charpoly))
        lines.append("matrices:")
        for lab, m in zip(self.algebra.labels, self.matrices):
            body = " ".join(f"{r},{c},{format_scalar(v)}" for r, c, v in m.entries)
            lines.append(f"{lab}: {body}".rstrip())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, algebra: LieAlgebra) -> "Representation":
        lines = text.splitlines()
        if not lines or lines[0].strip() != "# representation v1":
            raise ValueError("not a representation file")

        def vec(s):
            return tuple(Fraction(x) for x in s.split(",")) if s else ()

        head, mats = {}, {}
        summands, weights, charpoly = [], None, None
        it = iter(lines[1:])
        for line in it:
            if line == "matrices:":
                break
            key, _, val = line.partition(": ")
            if key == "summand":
                m = re.fullmatch(r"(\S+) dual=(\d) offset=(\d+) dim=(\d+) generator=(\S+)", val)
                if not m:
                    raise ValueError(f"bad summand line {line!r}")
                hw = None if m.group(1) == "-" else tuple(int(x) if x.lstrip("-").isdigit() else Fraction(x) for x in m.group(1).split(","))
                gen = None if m.group(5) == "-" else int(m.group(5))
                summands.append(Summand(hw, bool(int(m.group(2))), int(m.group(3)), int(m.group(4)), gen))
            elif key == "weights":
                weights = val
            elif key == "charpoly":
                charpoly = list(vec(val))
            else:
                head[key] = val
        if head.get("algebra") != algebra.name:
            raise MixedAlgebras(f"file is for {head.get('algebra')!r}, not {algebra.name!r}")
        n = int(head["dim"])
        for line in it:
            lab, _, body = line.partition(":")
            ent = []
            for tok in body.split():
                r, c, v = tok.split(",")
                ent.append((int(r), int(c), Fraction(v)))
            mats[lab] = SparseMatrix(n, n, ent)
        matrices = [mats.get(lab, SparseMatrix(n, n)) for lab in algebra.labels]
        if weights is not None:
            weights = [vec(w) for w in weights.split(";")] if n else []
        return cls(algebra, matrices, weights, summands, charpoly)


# -- Freudenthal --------------------------------------------------------------


def _positive_root_weights(rs: RootSystem) -> list[Weight]:
    return [rs.root_to_weight(a) for a in rs.positive]


def weight_multiplicities(rs: RootSystem | str, lam: Sequence[int]) -> dict[Weight, int]:
    """Weight multiplicities of the irreducible module V(lam) by Freudenthal's recursion."""
    if not isinstance(rs, RootSystem):
        rs = roots(rs)
    lam = tuple(int(x) for x in lam)
    if len(lam) != rs.rank:
        raise ValueError(f"weight must have length {rs.rank}")
    if not rs.is_dominant(lam):
        raise NonDominantWeight(f"{lam} is not dominant")
    r = rs.rank
    alpha = [tuple(rs.cartan[i][j] for i in range(r)) for j in range(r)]
    pos = _positive_root_weights(rs)
    rho = rs.rho
    lr = tuple(a + b for a, b in zip(lam, rho))
    norm_lr = rs.weight_inner(lr, lr)

    # dominant weights below lam, by depth (root coordinates of lam - mu)
    mult: dict[Weight, int] = {lam: 1}
    levels = [[lam]]
    seen = {lam}
    while levels[-1]:
        nxt = []
        for mu in levels[-1]:
            for j in range(r):
                nu = tuple(a - b for a, b in zip(mu, alpha[j]))
                if nu in seen:
                    continue
                # nu is a weight of V(lam) iff its dominant conjugate is <= lam; test by recursion below
                seen.add(nu)
                nxt.append(nu)
        # compute multiplicities at this level
        keep = []
        for nu in nxt:
            nr = tuple(a + b for a, b in zip(nu, rho))
            denom = norm_lr - rs.weight_inner(nr, nr)
            if denom == 0:
                continue
            acc = Fraction(0)
            for a in pos:
                k = 1
                while True:
                    w = tuple(x + k * y for x, y in zip(nu, a))
                    m = mult.get(w)
                    if m is None:
                        if not _could_be_weight(w, lam, alpha, rs):
                            break
                        k += 1
                        continue
                    acc += m * rs.weight_inner(w, a)
                    k += 1
            m = 2 * acc / denom
            if m:
                if m.denominator != 1 or m < 0:
                    raise ArithmeticError("Freudenthal recursion produced a non-integer multiplicity")
                mult[nu] = int(m)
                keep.append(nu)
        levels.append(keep)
    return mult


def _could_be_weight(w: Weight, lam: Weight, alpha, rs: RootSystem) -> bool:
    """lam - w is a nonnegative combination of simple roots."""
    diff = tuple(a - b for a, b in zip(lam, w))
    return all(c >= 0 for c in rs.weight_to_root_coords(diff))


# -- constructions ------------------------------------------------------------


def _top_index(weights: Sequence[Weight], offset: int, dim: int, cartan) -> int:
    """Index of the highest-weight vector inside a block (weight with no w + alpha_i present)."""
    r = len(cartan)
    alpha = [tuple(cartan[i][j] for i in range(r)) for j in range(r)]
    block = weights[offset : offset + dim]
    present = set(block)
    for t, w in enumerate(block):
        if all(tuple(a + b for a, b in zip(w, alpha[j])) not in present for j in range(r)):
            return offset + t
    raise ArithmeticError("block has no highest weight")


def build_irrep(L: LieAlgebra, lam: Sequence[int], ceiling: int | None = DEFAULT_CEILING) -> Representation:
    """Irreducible L-module of highest weight ``lam`` (L from :func:`rootsys.chevalley`)."""
    if L.cartan_type is None:
        raise WorkbenchError("build_irrep needs a Chevalley algebra")
    rs = roots(L.cartan_type)
    lam = tuple(int(x) for x in lam)
    if len(lam) != rs.rank:
        raise ValueError(f"weight must have length {rs.rank}")
    if not rs.is_dominant(lam):
        raise NonDominantWeight(f"{lam} is not dominant")
    if ceiling is not None and rs.weyl_dimension(lam) > ceiling:
        raise DimensionCeilingExceeded(f"dim V{lam} = {rs.weyl_dimension(lam)} exceeds ceiling {ceiling}")
    mod = build_weight_module(rs.cartan, lam, ceiling)
    mats = root_vector_images(L, rs, mod.e, mod.f, mod.h)
    return Representation(L, mats, mod.weights, [Summand(lam, False, 0, mod.dim, 0)])


def root_vector_images(L, rs, e, f, h) -> list[SparseMatrix]:
    from .rootsys import root_vector_matrices

    rv = root_vector_matrices(rs, e, f)
    idx = chevalley_root_index(L)
    mats: list[SparseMatrix | None] = [None] * L.dim
    for i in range(rs.rank):
        mats[i] = h[i]
    for a, k in idx.items():
        mats[k] = rv[a]
    return mats


def adjoint(L: LieAlgebra) -> Representation:
    """The adjoint module; weight tags are copied from the algebra when present."""
    mats = [L.ad(i) for i in range(L.dim)]
    summ = []
    if L.cartan_type is not None:
        rs = roots(L.cartan_type)
        hw = rs.root_to_weight(rs.highest_root)
        summ = [Summand(hw, False, 0, L.dim, chevalley_root_index(L)[rs.highest_root])]
    return Representation(L, mats, L.weights, summ)


def dual(R: Representation) -> Representation:
    """rho*(x) = -rho(x)^T with negated weight tags."""
    mats = [-m.transpose() for m in R.matrices]
    weights = None if R.weights is None else [tuple(-x for x in w) for w in R.weights]
    summ = []
    cartan = None
    if R.algebra.cartan_type is not None:
        cartan = roots(R.algebra.cartan_type).cartan
    for s in R.summands:
        hw, gen = None, None
        if weights is not None and cartan is not None and s.highest_weight is not None:
            gen = _top_index(weights, s.offset, s.dim, cartan)
            hw = tuple(int(x) for x in weights[gen])
        summ.append(Summand(hw, not s.dual, s.offset, s.dim, gen))
    return Representation(R.algebra, mats, weights, summ)


def direct_sum(parts: Sequence[Representation], algebra: LieAlgebra | None = None) -> Representation:
    """Block-diagonal sum; ``algebra`` is required only for the empty sum."""
    parts = list(parts)
    if not parts:
        if algebra is None:
            raise ValueError("the empty direct sum needs an explicit algebra")
        return Representation(algebra, [SparseMatrix(0, 0)] * algebra.dim, [], [])
    L = parts[0].algebra
    if any(p.algebra is not L and p.algebra != L for p in parts[1:]):
        raise MixedAlgebras("all summands must be modules over the same algebra")
    mats = [direct_sum_matrices([p.matrices[i] for p in parts]) for i in range(L.dim)]
    tagged = all(p.weights is not None for p in parts)
    weights = [w for p in parts for w in p.weights] if tagged else None
    summ, off = [], 0
    for p in parts:
        summ += [s.shifted(off) for s in p.summands]
        off += p.dim
    return Representation(L, mats, weights, summ)


def module(L: LieAlgebra, spec: Sequence[tuple[Sequence[int], int, bool]] | Sequence[Sequence[int]]) -> Representation:
    """Direct sum described as ``[(lam, multiplicity, dual), ...]`` or a list of weights."""
    parts = []
    cache: dict = {}
    for item in spec:
        if len(item) == 3 and not isinstance(item[1], (list, tuple)) and isinstance(item[0], (list, tuple)):
            lam, mult, is_dual = item
        else:
            lam, mult, is_dual = item, 1, False
        key = (tuple(lam), bool(is_dual))
        if key not in cache:
            R = build_irrep(L, lam)
            cache[key] = dual(R) if is_dual else R
        parts += [cache[key]] * mult
    return direct_sum(parts, algebra=L)


# -- restriction --------------------------------------------------------------


def _torus_in_span(L: LieAlgebra, vecs: list[dict]) -> list[dict]:
    """A basis of span(vecs) intersected with the torus spanned by L.cartan."""
    from .arith import SparseEchelon

    cart = set(L.cartan)
    n, m = L.dim, len(vecs)
    # solve sum_a c_a vecs[a] has zero non-Cartan components
    rows: dict[int, dict[int, Fraction]] = {}
    for a, v in enumerate(vecs):
        for k, x in v.items():
            if k not in cart:
                rows.setdefault(k, {})[a] = x
    ech = SparseEchelon(m)
    for r in rows.values():
        ech.add(r)
    out = []
    for c in ech.kernel():
        w: dict[int, Fraction] = {}
        for a, x in c.items():
            for k, y in vecs[a].items():
                w[k] = w.get(k, 0) + x * y
        out.append({k: y for k, y in w.items() if y})
    return _rref_rows(out, n)


def _rref_rows(vecs: list[dict], n: int) -> list[dict]:
    rows = [dict(v) for v in vecs if v]
    out: list[dict] = []
    for c in range(n):
        piv = next((r for r in rows if r.get(c)), None)
        if piv is None:
            continue
        rows.remove(piv)
        s = 1 / piv[c]
        piv = {k: x * s for k, x in piv.items()}
        new = []
        for r in rows:
            if r.get(c):
                f = r[c]
                r = {k: r.get(k, 0) - f * piv.get(k, 0) for k in set(r) | set(piv)}
                r = {k: x for k, x in r.items() if x}
            if r:
                new.append(r)
        rows = new
        out = [({k: o.get(k, 0) - o.get(c, 0) * piv.get(k, 0) for k in set(o) | set(piv)} if o.get(c) else o) for o in out]
        out = [{k: x for k, x in o.items() if x} for o in out]
        out.append(piv)
    return [dict(sorted(o.items())) for o in out]


def _weight_on(L: LieAlgebra, k: int, t: dict) -> Fraction:
    """Eigenvalue of ad t on the ambient basis vector x_k (t in the torus)."""
    w = L.weights[k]
    return sum((c * w[L.cartan.index(i)] for i, c in t.items()), Fraction(0))


def restrict(R: Representation, sub: Sequence, name: str | None = None) -> Representation:
    """Restriction of R to the subalgebra spanned by ``sub``.

    When the ambient algebra has a diagonal torus and R carries weight tags,
    the torus of the subalgebra is ``span(sub)`` intersected with it; if that is a
    Cartan subalgebra of span(sub) the module is re-tagged by its weights.
    Otherwise tags are dropped and the characteristic polynomial of a fixed
    element is recorded instead.
    """
    L = R.algebra
    vecs = [as_sparse_vector(v) for v in sub]
    S = subalgebra_constants(L, vecs, name=name)
    mats = [R.matrix_of(v) for v in vecs]
    torus = None
    if L.cartan is not None and L.weights is not None and R.weights is not None:
        T = _torus_in_span(L, vecs)
        in_basis = [a for a, v in enumerate(vecs) if all(k in L.cartan for k in v)]
        if len(in_basis) == len(T):
            T = [vecs[a] for a in in_basis]
        if _is_cartan_of(L, vecs, T):
            torus = T
    if torus is None:
        cp = _charpoly(_generic_element(mats, R.dim)) if R.dim <= 128 else None
        out = Representation(S, mats, None, [], cp)
        out.torus = None
        return out
    def mod_weight(wt):
        return tuple(sum((c * wt[L.cartan.index(i)] for i, c in t.items()), Fraction(0)) for t in torus)

    weights = [tuple(_int_if(x) for x in mod_weight(w)) for w in R.weights]
    # tag the subalgebra basis when it is adapted to the torus
    sub_w = []
    for v in vecs:
        ws = {mod_weight(L.weights[k]) for k in v}
        if len(ws) != 1:
            sub_w = None
            break
        sub_w.append(tuple(_int_if(x) for x in ws.pop()))
    if sub_w is not None:
        cart = [a for a, v in enumerate(vecs) if all(k in L.cartan for k in v)]
        if len(cart) == len(torus):
            S = LieAlgebra(S.name, S.labels, S.brackets, weights=sub_w, cartan=cart)
            S.ambient, S.embedding = L, vecs
    out = Representation(S, mats, weights, [])
    out.torus = torus
    return out


def _int_if(x: Fraction):
    return int(x) if x.denominator == 1 else x


def _is_cartan_of(L: LieAlgebra, vecs: list[dict], T: list[dict]) -> bool:
    """T is self-centralizing in span(vecs): the zero T-weight part of the span is T."""
    def key(k):
        return tuple(_weight_on(L, k, t) for t in T)

    zero = tuple(Fraction(0) for _ in T)
    return _zero_part(L, vecs, key, zero) == len(T)


def _zero_part(L, vecs, key, zero) -> int:
    """dim of span(vecs) intersected with the ambient zero-weight space."""
    from .arith import SparseEchelon

    m = len(vecs)
    ech = SparseEchelon(m)
    rows: dict[int, dict[int, Fraction]] = {}
    for a, v in enumerate(vecs):
        for k, x in v.items():
            if key(k) != zero:
                rows.setdefault(k, {})[a] = x
    for r in rows.values():
        ech.add(r)
    return m - ech.rank


def _generic_element(mats: list[SparseMatrix], n: int) -> SparseMatrix:
    out = SparseMatrix(n, n)
    for a, m in enumerate(mats):
        out = out + m.scale(Fraction(a * a + 3 * a + 1))
    return out


def _charpoly(m: SparseMatrix) -> list[Fraction]:
    """Coefficients (constant term first) of det(t - m), via Hessenberg reduction."""
    n = m.shape[0]
    a = m.to_dense()
    for k in range(1, n - 1):
        piv = next((i for i in range(k, n) if a[i][k - 1] != 0), None)
        if piv is None:
            continue
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        for i in range(k + 1, n):
            if a[i][k - 1]:
                f = a[i][k - 1] / a[k][k - 1]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for row in a:
                    row[k] += f * row[i]
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for k in range(n):
        nxt = [Fraction(0)] + polys[k]
        for j, c in enumerate(polys[k]):
            nxt[j] -= a[k][k] * c
        prod = Fraction(1)
        for i in range(k - 1, -1, -1):
            prod *= a[i + 1][i]
            c = prod * a[i][k]
            if c:
                for j, q in enumerate(polys[i]):
                    nxt[j] -= c * q
        polys.append(nxt)
    return polys[n]


# -- decomposition of tagged modules -----------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Root-system type of a tagged reductive algebra and a module's irreducible constituents."""

    cartan_type: str
    summands: tuple[tuple[Weight, int], ...]
    center_rank: int = 0

    def canonical(self) -> tuple:
        return (self.cartan_type, _canonical(self.cartan_type, self.summands), self.center_rank)

    def dims(self) -> list[int]:
        return sorted((_irrep_dim(self.cartan_type, w) for w, m in self.summands for _ in range(m)), reverse=True)

    def describe(self) -> str:
        if not self.summands:
            return "0"
        parts = []
        for w, m in self.summands:
            name = "1" if not any(w) else "+".join(
                (f"{c}w{i + 1}" if c > 1 else f"w{i + 1}") for i, c in enumerate(w) if c
            )
            parts.append(name if m == 1 else f"{m}*({name})")
        return " + ".join(parts)


def _components(cartan: list[list[int]]) -> list[list[int]]:
    n = len(cartan)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and (cartan[i][j] or cartan[j][i]):
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _candidates(rank: int) -> list[CartanType]:
    out = []
    for letter in "ABCDEFG":
        try:
            out.append(CartanType(letter, rank))
        except WorkbenchError:
            pass
    return out


def identify_cartan_matrix(cartan: Sequence[Sequence[int]]) -> tuple[CartanType, tuple[int, ...]]:
    """Type of an indecomposable Cartan matrix and an ordering matching the standard one."""
    n = len(cartan)
    for t in _candidates(n):
        std = roots(t).cartan
        for perm in permutations(range(n)):
            if all(cartan[perm[a]][perm[b]] == std[a][b] for a in range(n) for b in range(n)):
                return t, perm
    raise WorkbenchError("Cartan matrix of unknown type")


def _automorphisms(t: str) -> list[tuple[int, ...]]:
    if not t:
        return [()]
    comps = t.split("+")
    if len(comps) > 1:
        raise NotImplementedError("canonical forms are implemented for simple types only")
    std = roots(t).cartan
    n = len(std)
    return [p for p in permutations(range(n)) if all(std[p[a]][p[b]] == std[a][b] for a in range(n) for b in range(n))]


def _canonical(t: str, summands) -> tuple:
    best = None
    for p in _automorphisms(t):
        img = tuple(sorted((tuple(w[p[i]] for i in range(len(w))), m) for w, m in summands))
        if best is None or img < best:
            best = img
    return best


def _irrep_dim(t: str, w) -> int:
    return roots(t).weyl_dimension(w) if t else 1


def decompose(R: Representation) -> Decomposition:
    """Irreducible constituents of a tagged module over a tagged reductive algebra.

    The algebra must carry ``cartan`` and ``weights`` (as produced by
    :func:`restrict` on an adapted basis).  Roots are the nonzero weights of
    the algebra; a generic functional picks positive roots, coroots come from
    ``[x_a, x_-a]``, and highest weights are peeled off with Freudenthal.
    """
    A = R.algebra
    if A.weights is None or A.cartan is None or R.weights is None:
        raise WorkbenchError("decompose needs weight tags on both the algebra and the module")
    k = len(A.cartan)
    root_idx: dict[tuple, int] = {}
    for i, w in enumerate(A.weights):
        if i in A.cartan:
            continue
        w = tuple(w)
        if not any(w) or w in root_idx:
            raise WorkbenchError("algebra is not split reductive with respect to its torus")
        root_idx[w] = i
    if not root_idx:
        mult = Counter(tuple(w) for w in R.weights)
        return Decomposition("", tuple(sorted(mult.items())), k)
    functional = _positive_functional(list(root_idx), k)
    pos = [r for r in root_idx if _dot(functional, r) > 0]
    posset = set(pos)
    simple = [r for r in pos if not any(tuple(a - b for a, b in zip(r, s)) in posset for s in pos)]
    cart_pos = {c: t for t, c in enumerate(A.cartan)}
    coroots = []
    for r in simple:
        h = A.bracket_basis(root_idx[r], root_idx[tuple(-x for x in r)])
        if any(i not in cart_pos for i in h):
            raise WorkbenchError("[x_a, x_-a] leaves the torus")
        c = [Fraction(0)] * k
        for i, x in h.items():
            c[cart_pos[i]] = x
        val = _dot(c, r)
        if val == 0:
            raise WorkbenchError("degenerate coroot")
        coroots.append([2 * x / val for x in c])
    n = len(simple)
    cmat = [[int(_dot(coroots[i], simple[j])) for j in range(n)] for i in range(n)]
    comps = _components(cmat)
    if len(comps) != 1:
        raise NotImplementedError("only simple (or toral) algebras are fingerprinted")
    t, perm = identify_cartan_matrix(cmat)
    rs = roots(t)

    def fund(w):
        return tuple(_dot(coroots[perm[a]], w) for a in range(n))

    # centre: weights on the orthogonal complement of the coroots
    mult = Counter()
    for w in R.weights:
        fw = fund(w)
        if any(x.denominator != 1 for x in fw):
            raise WorkbenchError("non-integral restricted weight")
        mult[tuple(int(x) for x in fw)] += 1
    out = []
    while mult:
        lam = max(mult, key=lambda w: (sum(rs.weight_to_root_coords(w)), w))
        if not rs.is_dominant(lam):
            raise WorkbenchError("peeling produced a non-dominant highest weight")
        c = mult[lam]
        for w, m in weight_multiplicities(rs, lam).items():
            mult[w] -= c * m
            if mult[w] < 0:
                raise WorkbenchError("weight multiset is not a module character")
            if mult[w] == 0:
                del mult[w]
        out.append((lam, c))
    return Decomposition(str(t), tuple(sorted(out)), k - n)


def _dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _positive_functional(rts: list[tuple], k: int) -> list[int]:
    for s in range(1, 1000):
        f = [(s * 7919 * (i + 1) ** 3) % 10007 + 1 for i in range(k)]
        if all(_dot(f, r) != 0 for r in rts):
            return f
    raise WorkbenchError("no regular functional found")


def expected_decomposition(cartan_type: str, spec: Sequence[tuple[Sequence[int], int]]) -> Decomposition:
    """Decomposition literal, e.g. ``("F4", [((1,0,0,0), 1), ((0,0,0,0), 1)])``."""
    return Decomposition(cartan_type, tuple(sorted((tuple(w), m) for w, m in spec)))


__all__ = [
    "Summand",
    "Representation",
    "weight_multiplicities",
    "build_irrep",
    "adjoint",
    "dual",
    "direct_sum",
    "module",
    "restrict",
    "decompose",
    "Decomposition",
    "expected_decomposition",
    "identify_cartan_matrix",
]
