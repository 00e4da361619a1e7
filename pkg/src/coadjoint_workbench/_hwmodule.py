"""Irreducible highest-weight modules from a Cartan matrix alone.

Weight spaces are built level by level below the highest weight.  A vector in
a weight space other than the top one is determined by its images under the
raising operators e_i (the module is irreducible, so no such vector is killed
by every e_i), so each new weight space is realised as the span of the vectors
``e_i f_j w`` inside the already constructed spaces one level up.  Those images
are computed from ``e_i f_j = f_j e_i + delta_ij h_i``, which only involves maps
built earlier.  Basis vectors are the first independent candidates ``f_j w``
in a fixed order, so the resulting matrices are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import SparseMatrix
from .errors import DimensionCeilingExceeded

Weight = tuple[int, ...]


@dataclass
class WeightModule:
    weights: list[Weight]
    e: list[SparseMatrix]
    f: list[SparseMatrix]
    h: list[SparseMatrix]

    @property
    def dim(self) -> int:
        return len(self.weights)


def _rref(mat: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in mat]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _apply(m: list[list[Fraction]], v: list[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in m]


def build_weight_module(cartan: Sequence[Sequence[int]], lam: Sequence[int], ceiling: int | None = None) -> WeightModule:
    """Irreducible module of highest weight ``lam`` (fundamental-weight coordinates).

    ``cartan[i][j]`` is the value of the j-th simple root on the i-th simple coroot.
    """
    r = len(cartan)
    lam = tuple(int(x) for x in lam)
    alpha = [tuple(cartan[i][j] for i in range(r)) for j in range(r)]

    def add(w, j, s=1):
        return tuple(a + s * b for a, b in zip(w, alpha[j]))

    dims: dict[Weight, int] = {lam: 1}
    E: dict[tuple[int, Weight], list[list[Fraction]]] = {}
    F: dict[tuple[int, Weight], list[list[Fraction]]] = {}
    order: list[Weight] = [lam]
    total = 1
    level = [lam]
    while level:
        cands = sorted({add(mu, j, -1) for mu in level for j in range(r)}, reverse=True)
        nxt = []
        for nu in cands:
            blocks = [(i, dims[add(nu, i)]) for i in range(r) if add(nu, i) in dims]
            cand = [(j, b) for j in range(r) if add(nu, j) in dims for b in range(dims[add(nu, j)])]
            cols = []
            for j, b in cand:
                up = add(nu, j)
                col: list[Fraction] = []
                for i, mi in blocks:
                    target = add(nu, i)
                    vec = [Fraction(0)] * mi
                    top = add(up, i)
                    if top in dims and (i, up) in E and (j, top) in F:
                        ew = [row[b] for row in E[(i, up)]]
                        vec = _apply(F[(j, top)], ew)
                    if i == j:
                        vec = list(vec)
                        vec[b] += up[i]
                    col.extend(vec)
                cols.append(col)
            nrows = sum(mi for _, mi in blocks)
            mat = [[cols[t][s] for t in range(len(cand))] for s in range(nrows)]
            red, piv = _rref(mat, len(cand))
            m = len(piv)
            if m == 0:
                continue
            dims[nu] = m
            total += m
            if ceiling is not None and total > ceiling:
                raise DimensionCeilingExceeded(f"module dimension exceeds ceiling {ceiling}")
            order.append(nu)
            nxt.append(nu)
            off = 0
            for i, mi in blocks:
                E[(i, nu)] = [[mat[off + s][t] for t in piv] for s in range(mi)]
                off += mi
            for j in range(r):
                up = add(nu, j)
                if up not in dims:
                    continue
                idx = [t for t, (jj, _) in enumerate(cand) if jj == j]
                F[(j, up)] = [[red[s][t] for t in idx] for s in range(m)]
        level = nxt

    start: dict[Weight, int] = {}
    weights: list[Weight] = []
    for w in order:
        start[w] = len(weights)
        weights.extend([w] * dims[w])
    n = len(weights)
    emats, fmats = [], []
    for i in range(r):
        ent = []
        for (k, nu), blk in E.items():
            if k != i:
                continue
            ro, co = start[add(nu, i)], start[nu]
            ent += [(ro + s, co + t, v) for s, row in enumerate(blk) for t, v in enumerate(row) if v]
        emats.append(SparseMatrix(n, n, ent))
        ent = []
        for (k, up), blk in F.items():
            if k != i:
                continue
            down = add(up, i, -1)
            if down not in dims:
                continue
            ro, co = start[down], start[up]
            ent += [(ro + s, co + t, v) for s, row in enumerate(blk) for t, v in enumerate(row) if v]
        fmats.append(SparseMatrix(n, n, ent))
    hmats = [SparseMatrix.diagonal([w[i] for w in weights]) for i in range(r)]
    return WeightModule(weights, emats, fmats, hmats)
