"""Finite-dimensional Lie algebras given by exact structure constants."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .arith import SparseMatrix, as_scalar, format_scalar, reduce_mod

Vector = Mapping[int, Fraction]


def _clean(vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
    return {k: as_scalar(v) for k, v in sorted(vec.items()) if v}


def as_sparse_vector(v) -> dict[int, Fraction]:
    if isinstance(v, Mapping):
        return _clean(v)
    return {i: as_scalar(x) for i, x in enumerate(v) if x}


class LieAlgebra:
    """Lie algebra on a labelled basis.

    ``brackets`` maps ordered pairs ``(i, j)`` with ``i < j`` to the sparse
    expansion of ``[x_i, x_j]``; antisymmetry is implied by the storage.

    Optional metadata:

    * ``grading`` -- one tag per basis element (``"g"``/``"v"`` for semi-direct products);
    * ``weights`` -- torus weight of each basis element, used to prune invariant searches;
    * ``cartan`` -- indices of basis elements spanning a diagonally acting torus;
    * ``generators`` -- indices generating the algebra (defaults to the whole basis);
    * ``cartan_type`` -- Dynkin label for algebras built by :func:`rootsys.chevalley`.
    """

    def __init__(
        self,
        name: str,
        labels: Sequence[str],
        brackets: Mapping[tuple[int, int], Mapping[int, Fraction]],
        *,
        grading: Sequence[str] | None = None,
        weights: Sequence[Sequence[Fraction]] | None = None,
        cartan: Sequence[int] | None = None,
        generators: Sequence[int] | None = None,
        cartan_type: str | None = None,
    ):
        self.name = name
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")
        for lab in self.labels:
            if not lab or re.search(r"[\s^*]", lab):
                raise ValueError(f"illegal basis label {lab!r}")
        n = len(self.labels)
        self._br: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), vec in brackets.items():
            if i == j:
                if any(vec.values()):
                    raise ValueError("[x, x] must vanish")
                continue
            vec = _clean(vec)
            if not vec:
                continue
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in vec):
                raise IndexError("bracket index out of range")
            if i > j:
                i, j = j, i
                vec = {k: -v for k, v in vec.items()}
            self._br[(i, j)] = vec
        self.grading = tuple(grading) if grading is not None else None
        self.weights = tuple(tuple(as_scalar(x) for x in w) for w in weights) if weights is not None else None
        self.cartan = tuple(cartan) if cartan is not None else None
        self.generators = tuple(generators) if generators is not None else None
        self.cartan_type = cartan_type
        self._cache: dict = {}
        for attr, val in (("grading", self.grading), ("weights", self.weights)):
            if val is not None and len(val) != n:
                raise ValueError(f"{attr} must have one entry per basis element")

    # -- basic access -------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self.dim})"

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @property
    def brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return self._br

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return self._br.get((i, j), {})
        return {k: -v for k, v in self._br.get((j, i), {}).items()}

    def bracket(self, u, v) -> dict[int, Fraction]:
        """Bracket of two vectors given as sparse dicts or dense sequences."""
        u = as_sparse_vector(u)
        v = as_sparse_vector(v)
        out: dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                if i == j:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in sorted(out.items()) if c}

    def is_abelian(self) -> bool:
        return not self._br

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.labels == other.labels
            and self._br == other._br
            and self.grading == other.grading
            and self.weights == other.weights
            and self.cartan == other.cartan
            and self.generators == other.generators
            and self.cartan_type == other.cartan_type
            and self.name == other.name
        )

    def __hash__(self):
        return hash((self.name, self.labels, len(self._br)))

    def generator_indices(self) -> tuple[int, ...]:
        return self.generators if self.generators is not None else tuple(range(self.dim))

    # -- adjoint data -------------------------------------------------------

    def structure_coo(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, list[Fraction]]:
        """All nonzero c_ij^k with both orders (i, j) and (j, i)."""
        if "coo" not in self._cache:
            I, J, K, C = [], [], [], []
            for (i, j), vec in self._br.items():
                for k, c in vec.items():
                    I += [i, j]
                    J += [j, i]
                    K += [k, k]
                    C += [c, -c]
            self._cache["coo"] = (np.array(I, dtype=np.int64), np.array(J, dtype=np.int64), np.array(K, dtype=np.int64), C)
        return self._cache["coo"]

    def structure_mod(self, p: int):
        key = ("coo_mod", p)
        if key not in self._cache:
            I, J, K, C = self.structure_coo()
            Cm = np.array([reduce_mod(c, p) for c in C], dtype=np.int64)
            self._cache[key] = (I, J, K, Cm)
        return self._cache[key]

    def structure_tensor_mod(self, p: int) -> np.ndarray:
        """Dense ``T[i, j, k] = c_ij^k`` modulo ``p``."""
        n = self.dim
        I, J, K, C = self.structure_mod(p)
        t = np.zeros((n, n, n), dtype=np.int64)
        t[I, J, K] = C
        return t

    def ad(self, i: int) -> SparseMatrix:
        """Matrix of ad x_i: column j holds [x_i, x_j]."""
        return SparseMatrix(
            self.dim, self.dim, ((k, j, c) for j in range(self.dim) for k, c in self.bracket_basis(i, j).items())
        )

    def ad_of(self, u) -> SparseMatrix:
        u = as_sparse_vector(u)
        out = SparseMatrix(self.dim, self.dim)
        for i, a in u.items():
            out = out + self.ad(i).scale(a)
        return out

    def denominator_lcm(self) -> int:
        from math import lcm

        d = 1
        for vec in self._br.values():
            for c in vec.values():
                d = lcm(d, c.denominator)
        return d

    def integer_ad_matrices(self) -> tuple[list[sp.csr_matrix], int]:
        """ad matrices scaled by the common denominator ``D`` as integer CSR matrices."""
        D = self.denominator_lcm()
        n = self.dim
        I, J, K, C = self.structure_coo()
        out = []
        for a in range(n):
            sel = np.flatnonzero(I == a)
            data = np.array([int(C[s] * D) for s in sel], dtype=np.int64)
            out.append(sp.csr_matrix((data, (K[sel], J[sel])), shape=(n, n), dtype=np.int64))
        return out, D

    def jacobi_defects(self, limit: int | None = None) -> list[tuple[int, int]]:
        """Pairs (i, j) for which ad[x_i, x_j] != [ad x_i, ad x_j].

        Vanishing for every pair is equivalent to the Jacobi identity on all
        basis triples.
        """
        mats, D = self.integer_ad_matrices()
        bad = []
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                lhs = sp.csr_matrix((n, n), dtype=np.int64)
                for k, c in self.bracket_basis(i, j).items():
                    lhs = lhs + mats[k] * int(c * D)
                rhs = mats[i] @ mats[j] - mats[j] @ mats[i]
                if (lhs - rhs).count_nonzero():
                    bad.append((i, j))
                    if limit is not None and len(bad) >= limit:
                        return bad
        return bad

    def satisfies_jacobi(self) -> bool:
        return not self.jacobi_defects(limit=1)

    def jacobi_triple(self, i: int, j: int, k: int) -> dict[int, Fraction]:
        e = {i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)}
        total: dict[int, Fraction] = {}
        for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            for idx, v in self.bracket(self.bracket(e[a], e[b]), e[c]).items():
                total[idx] = total.get(idx, 0) + v
        return {k: v for k, v in total.items() if v}

    # -- text format --------------------------------------------------------

    def to_text(self) -> str:
        lines = ["# lie-algebra v1", f"name: {self.name}", f"dimension: {self.dim}", "labels: " + " ".join(self.labels)]
        if self.grading is not None:
            lines.append("grading: " + " ".join(self.grading))
        if self.cartan_type is not None:
            lines.append(f"type: {self.cartan_type}")
        if self.cartan is not None:
            lines.append("cartan: " + " ".join(map(str, self.cartan)))
        if self.generators is not None:
            lines.append("generators: " + " ".join(map(str, self.generators)))
        if self.weights is not None:
            lines.append("weights: " + " ; ".join(",".join(format_scalar(x) for x in w) for w in self.weights))
        lines.append("brackets:")
        for (i, j) in sorted(self._br):
            body = ", ".join(f"({k}, {c.numerator}/{c.denominator})" for k, c in sorted(self._br[(i, j)].items()))
            lines.append(f"{i} {j} -> [{body}]")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LieAlgebra":
        header: dict[str, str] = {}
        lines = text.splitlines()
        pos = 0
        if not lines or lines[0].strip() != "# lie-algebra v1":
            raise ValueError("not a lie-algebra v1 document")
        for pos in range(1, len(lines)):
            line = lines[pos]
            if line == "brackets:":
                break
            key, _, val = line.partition(": ")
            header[key] = val
        else:
            raise ValueError("missing brackets section")
        labels = header["labels"].split() if header.get("labels") else []
        if int(header["dimension"]) != len(labels):
            raise ValueError("dimension does not match label count")
        pat = re.compile(r"\((\d+), (-?\d+)(?:/(\d+))?\)")
        brackets = {}
        for line in lines[pos + 1 :]:
            if not line.strip():
                continue
            lhs, _, rhs = line.partition(" -> ")
            i, j = map(int, lhs.split())
            brackets[(i, j)] = {int(k): Fraction(int(a), int(b or 1)) for k, a, b in pat.findall(rhs)}
        weights = None
        if "weights" in header:
            raw = header["weights"]
            weights = [tuple(Fraction(x) for x in w.split(",") if x) for w in raw.split(" ; ")] if raw else []
        return cls(
            header["name"],
            labels,
            brackets,
            grading=header["grading"].split() if "grading" in header else None,
            weights=weights,
            cartan=[int(x) for x in header["cartan"].split()] if "cartan" in header else None,
            generators=[int(x) for x in header["generators"].split()] if "generators" in header else None,
            cartan_type=header.get("type"),
        )


def abelian(n: int, name: str | None = None) -> LieAlgebra:
    return LieAlgebra(name or f"k^{n}", [f"x{i + 1}" for i in range(n)], {})


def from_table(name: str, labels: Sequence[str], table: Mapping[tuple[str, str], Mapping[str, object]], **kw) -> LieAlgebra:
    """Build an algebra from brackets written with labels, e.g. ``{("e", "f"): {"h": 1}}``."""
    idx = {lab: i for i, lab in enumerate(labels)}
    br = {}
    for (a, b), vec in table.items():
        i, j = idx[a], idx[b]
        v = {idx[k]: as_scalar(c) for k, c in vec.items()}
        if i > j:
            i, j, v = j, i, {k: -c for k, c in v.items()}
        if (i, j) in br:
            raise ValueError(f"bracket [{a}, {b}] given twice")
        br[(i, j)] = v
    return LieAlgebra(name, labels, br, **kw)


def _inverse(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


class SpanCoordinates:
    """Exact coordinates of vectors with respect to a fixed independent family."""

    def __init__(self, basis: Sequence, dim: int):
        from .arith import SparseEchelon

        self.basis = [as_sparse_vector(v) for v in basis]
        ech = SparseEchelon(dim)
        for v in self.basis:
            if not ech.add(v):
                raise ValueError("basis vectors are linearly dependent")
        self.pivots = sorted(ech.pivot_rows)
        m = len(self.basis)
        sq = [[self.basis[a].get(c, Fraction(0)) for c in self.pivots] for a in range(m)]
        self._inv = _inverse(sq) if m else []

    def coords(self, w) -> list[Fraction] | None:
        w = as_sparse_vector(w)
        m = len(self.basis)
        wp = [(t, w[c]) for t, c in enumerate(self.pivots) if c in w]
        out = [Fraction(0)] * m
        for t, x in wp:
            row = self._inv[t]
            for a in range(m):
                if row[a]:
                    out[a] += x * row[a]
        check: dict[int, Fraction] = {}
        for a, c in enumerate(out):
            if c:
                for k, v in self.basis[a].items():
                    check[k] = check.get(k, 0) + c * v
        if {k: v for k, v in check.items() if v} != w:
            return None
        return out


def subalgebra_constants(L: LieAlgebra, basis: Sequence, name: str | None = None, labels: Sequence[str] | None = None) -> LieAlgebra:
    """Structure constants of span(basis) in the given basis, by exact linear solves.

    The result records the ambient algebra and the embedding vectors as
    ``ambient`` and ``embedding`` attributes.
    """
    from .errors import NotClosedUnderBracket

    vecs = [as_sparse_vector(v) for v in basis]
    span = SpanCoordinates(vecs, L.dim)
    m = len(vecs)
    br = {}
    for a in range(m):
        for b in range(a + 1, m):
            w = L.bracket(vecs[a], vecs[b])
            if not w:
                continue
            c = span.coords(w)
            if c is None:
                raise NotClosedUnderBracket(f"[s{a + 1}, s{b + 1}] leaves the span")
            br[(a, b)] = {k: v for k, v in enumerate(c) if v}
    sub = LieAlgebra(name or f"sub({L.name})", labels or [f"s{i + 1}" for i in range(m)], br)
    sub.ambient = L
    sub.embedding = vecs
    return sub
