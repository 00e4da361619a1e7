"""Generic-rank computations: the index together with stabilizers and quotient dimensions.

Generic quantities are estimated by sampling integer points, reducing them
modulo two primes and taking ranks.  A rank computed modulo p at a particular
point never exceeds the generic rank over Q, so maxima of ranks (minima of
kernel dimensions) converge from the safe side; a value is accepted once it
is attained at both primes.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import LieAlgebra, as_sparse_vector, subalgebra_constants
from .arith import (
    DEFAULT_PRIMES,
    RandomSource,
    SparseEchelon,
    SparseMatrix,
    kernel_basis,
    kernel_mod,
    matmul_mod,
    nilspace_dim_mod,
    rank_exact,
    rank_mod_dense,
    reduce_mod,
    solve_left_mod,
)
from .errors import InconsistentWithDirectIndex, NotClosedUnderBracket, ParityViolation, SampleBudgetExhausted
from .irrep import Representation, dual

MAX_DOUBLINGS = 3


def _primes(primes) -> tuple[int, ...]:
    return tuple(primes) if primes else DEFAULT_PRIMES[:2]


# -- pairing matrices ---------------------------------------------------------


def pairing_matrix(L: LieAlgebra, xi: Sequence) -> SparseMatrix:
    """M(xi)_ij = xi([x_i, x_j]) exactly."""
    xi = as_sparse_vector(xi)
    ent = []
    for (i, j), vec in L.brackets.items():
        v = sum((c * xi[k] for k, c in vec.items() if k in xi), Fraction(0))
        if v:
            ent += [(i, j, v), (j, i, -v)]
    return SparseMatrix(L.dim, L.dim, ent)


def pairing_matrix_mod(L: LieAlgebra, xi, p: int) -> np.ndarray:
    n = L.dim
    I, J, K, C = L.structure_mod(p)
    x = np.asarray(xi, dtype=np.int64) % p
    m = np.zeros((n, n), dtype=np.int64)
    if len(I):
        np.add.at(m, (I, J), C * x[K] % p)
    return m % p


def _to_mod(vec: Sequence, p: int) -> np.ndarray:
    return np.array([reduce_mod(Fraction(x), p) for x in vec], dtype=np.int64)


# -- index --------------------------------------------------------------------


@dataclass
class IndexReport:
    """Outcome of a generic-rank computation, with everything needed to replay it."""

    dim: int
    best_rank: int
    estimate: int
    trials: int
    primes: tuple[int, ...]
    seed: int
    samples: list[dict] = field(default_factory=list)
    converged: bool = True
    method: str = "pairing-rank"
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = asdict(self)
        out["primes"] = list(self.primes)
        return out


def index_of(
    L: LieAlgebra,
    src: RandomSource,
    trials: int = 2,
    primes: Sequence[int] | None = None,
    exact: bool = False,
) -> IndexReport:
    """ind L = dim L - max rank M(xi) over sampled xi.

    With ``exact=True`` ranks are computed over Q at integer points (small
    algebras only); otherwise modulo each prime with independent points.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = L.dim
    primes = () if exact else _primes(primes)
    samples: list[dict] = []
    done, total, doublings = 0, trials, 0
    while True:
        for t in range(done, total):
            if exact:
                xi = src.child("index", t).vector(n)
                samples.append({"trial": t, "prime": 0, "rank": rank_exact(pairing_matrix(L, xi))})
            for p in primes:
                xi = src.child("index", t, p).residues(n, p)
                samples.append({"trial": t, "prime": p, "rank": rank_mod_dense(pairing_matrix_mod(L, xi, p), p) if n else 0})
        best = max((s["rank"] for s in samples), default=0)
        hit = {s["prime"] for s in samples if s["rank"] == best}
        converged = exact or hit == set(primes)
        if converged or doublings == MAX_DOUBLINGS:
            break
        done, total, doublings = total, total * 2, doublings + 1
    return IndexReport(n, best, n - best, total, tuple(primes), src.seed, samples, converged)


def magic_number(L: LieAlgebra, report: IndexReport) -> int:
    """b(L) = (dim L + ind L) / 2."""
    s = L.dim + report.estimate
    if s % 2:
        raise ParityViolation(f"dim {L.dim} and index {report.estimate} have different parity")
    return s // 2


# -- stabilizers --------------------------------------------------------------


def _action_coo(R: Representation):
    cache = R.__dict__.setdefault("_action_coo", {})
    if "coo" not in cache:
        X, Rw, Cl, V = [], [], [], []
        for i, m in enumerate(R.matrices):
            for r, c, v in m.entries:
                X.append(i)
                Rw.append(r)
                Cl.append(c)
                V.append(v)
        cache["coo"] = (np.array(X, dtype=np.int64), np.array(Rw, dtype=np.int64), np.array(Cl, dtype=np.int64), V)
    return cache["coo"]


def action_matrix_mod(R: Representation, xi, p: int) -> np.ndarray:
    """Column i is rho(x_i) xi modulo p."""
    cache = R.__dict__.setdefault("_action_coo", {})
    X, Rw, Cl, V = _action_coo(R)
    if p not in cache:
        cache[p] = np.array([reduce_mod(v, p) for v in V], dtype=np.int64)
    vals = cache[p]
    x = np.asarray(xi, dtype=np.int64) % p
    a = np.zeros((R.dim, R.algebra.dim), dtype=np.int64)
    if len(X):
        np.add.at(a, (Rw, X), vals * x[Cl] % p)
    return a % p


def action_matrix(R: Representation, xi) -> SparseMatrix:
    xi = as_sparse_vector(xi)
    ent: dict[tuple[int, int], Fraction] = {}
    for i, m in enumerate(R.matrices):
        for r, c, v in m.entries:
            if c in xi:
                ent[(r, i)] = ent.get((r, i), 0) + v * xi[c]
    return SparseMatrix(R.dim, R.algebra.dim, ((r, i, v) for (r, i), v in ent.items()))


def stabilizer(R: Representation, xi: Sequence, verify: bool = True) -> list[list[Fraction]]:
    """Exact basis of {x : rho(x) xi = 0}; closure under the bracket is checked."""
    if len(xi) != R.dim:
        raise ValueError(f"point must have length {R.dim}")
    basis = kernel_basis(action_matrix(R, xi))
    if verify and basis:
        subalgebra_constants(R.algebra, basis)
    return basis


def stabilizer_mod(R: Representation, xi, p: int) -> np.ndarray:
    """Basis (rows) of the stabilizer of xi modulo p."""
    return kernel_mod(action_matrix_mod(R, xi, p), p)


def subalgebra_constants_mod(L: LieAlgebra, basis: np.ndarray, p: int) -> np.ndarray:
    """C[a, b, c] with [s_a, s_b] = sum_c C[a, b, c] s_c modulo p."""
    S = np.asarray(basis, dtype=np.int64) % p
    k, n = S.shape
    if k == 0:
        return np.zeros((0, 0, 0), dtype=np.int64)
    T = L.structure_tensor_mod(p)
    X = matmul_mod(S, T.reshape(n, n * n), p).reshape(k, n, n)
    Y = np.stack([matmul_mod(S, X[a], p) for a in range(k)])  # Y[a, b] = [s_a, s_b]
    coords = solve_left_mod(S, Y.reshape(k * k, n), p)
    if coords is None:
        raise NotClosedUnderBracket("span is not closed under the bracket modulo p")
    return coords.reshape(k, k, k)


@dataclass
class GenericStabilizer:
    dim: int
    samples: list[dict]
    points: dict[int, np.ndarray]
    bases: dict[int, np.ndarray]
    converged: bool


def generic_stabilizer(
    R: Representation, src: RandomSource, trials: int = 2, primes: Sequence[int] | None = None
) -> GenericStabilizer:
    """Minimal stabilizer dimension over sampled points, with a witness basis per prime."""
    primes = _primes(primes)
    samples, points, bases = [], {}, {}
    done, total, doublings = 0, trials, 0
    while True:
        for t in range(done, total):
            for p in primes:
                xi = src.child("stab", t, p).residues(R.dim, p)
                a = action_matrix_mod(R, xi, p)
                d = R.algebra.dim - (rank_mod_dense(a, p) if a.size else 0)
                samples.append({"trial": t, "prime": p, "stabilizer_dim": d})
                if p not in points or d < bases[p].shape[0]:
                    points[p] = xi
                    bases[p] = kernel_mod(a, p) if a.size else np.eye(R.algebra.dim, dtype=np.int64)
        best = min(s["stabilizer_dim"] for s in samples)
        hit = {s["prime"] for s in samples if s["stabilizer_dim"] == best}
        if hit == set(primes) or doublings == MAX_DOUBLINGS:
            break
        done, total, doublings = total, total * 2, doublings + 1
    return GenericStabilizer(best, samples, points, bases, hit == set(primes))


def quotient_dim(R: Representation, src: RandomSource, trials: int = 2, primes: Sequence[int] | None = None) -> int:
    """dim V - dim g + dim g_xi at a generic xi in V (transcendence degree of the invariant field)."""
    gs = generic_stabilizer(R, src, trials, primes)
    return R.dim - R.algebra.dim + gs.dim


def subalgebra_index_mod(L: LieAlgebra, basis: np.ndarray, p: int, src: RandomSource, trials: int = 3) -> int:
    """Index of span(basis) modulo p, using restrictions of random functionals on L."""
    S = np.asarray(basis, dtype=np.int64) % p
    k = S.shape[0]
    if k == 0:
        return 0
    best = 0
    for t in range(trials):
        eta = src.child("subindex", t, p).residues(L.dim, p)
        m = matmul_mod(matmul_mod(S, pairing_matrix_mod(L, eta, p), p), S.T.copy(), p)
        best = max(best, rank_mod_dense(m, p))
    return k - best


def rais_index(
    L: LieAlgebra,
    R: Representation,
    src: RandomSource,
    direct: IndexReport | None = None,
    trials: int = 2,
    primes: Sequence[int] | None = None,
) -> IndexReport:
    """ind(L ⋉ R) as trdeg k(V*)^G + ind g_xi for generic xi in V*, checked against the direct index."""
    from .semidirect import semidirect

    primes = _primes(primes)
    Rd = dual(R)
    if direct is None:
        direct = index_of(semidirect(L, R), src.child("direct"), trials, primes)
    for attempt in range(MAX_DOUBLINGS):
        t = trials * 2**attempt
        gs = generic_stabilizer(Rd, src.child("rais", attempt), t, primes)
        qd = Rd.dim - L.dim + gs.dim
        sub_ind = {p: subalgebra_index_mod(L, gs.bases[p], p, src.child("rais", attempt), trials=t + 1) for p in primes}
        agree = len(set(sub_ind.values())) == 1 and all(gs.bases[p].shape[0] == gs.dim for p in primes)
        est = qd + min(sub_ind.values())
        if agree and est == direct.estimate:
            return IndexReport(
                L.dim + R.dim,
                L.dim + R.dim - est,
                est,
                t,
                tuple(primes),
                src.seed,
                gs.samples,
                gs.converged,
                method="rais",
                details={"quotient_dim": qd, "stabilizer_dim": gs.dim, "stabilizer_index": min(sub_ind.values()), "direct": direct.estimate},
            )
    raise InconsistentWithDirectIndex(f"Rais formula gives {est}, direct index {direct.estimate}")


# -- fingerprints ---------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    cartan_dim: int
    killing_rank: int
    derived_dim: int

    @property
    def reductive_evidence(self) -> bool:
        return self.killing_rank == self.dim

    def to_json(self) -> dict:
        return {**asdict(self), "reductive_evidence": self.reductive_evidence}


def _killing_mod(L: LieAlgebra, p: int) -> np.ndarray:
    key = ("killing_mod", p)
    if key not in L._cache:
        from .rootsys import killing_form

        if "killing" not in L._cache:
            L._cache["killing"] = killing_form(L)
        L._cache[key] = L._cache["killing"].to_mod(p)
    return L._cache[key]


def fingerprint_mod(L: LieAlgebra, basis: np.ndarray, p: int, src: RandomSource, trials: int = 3) -> Fingerprint:
    """(dim, Cartan dim, restricted Killing rank, derived dim) of span(basis) modulo p."""
    S = np.asarray(basis, dtype=np.int64) % p
    k = S.shape[0]
    if k == 0:
        return Fingerprint(0, 0, 0, 0)
    K = _killing_mod(L, p)
    kr = rank_mod_dense(matmul_mod(matmul_mod(S, K, p), S.T.copy(), p), p)
    C = subalgebra_constants_mod(L, S, p)
    derived = rank_mod_dense(C.reshape(k * k, k), p)
    cartan = k
    for t in range(trials):
        x = src.child("cartan", t, p).residues(k, p)
        ad = np.tensordot(x, C, axes=(0, 0)) % p  # ad[b, c]: [x, s_b] = sum_c ad[b, c] s_c
        cartan = min(cartan, nilspace_dim_mod(ad.T.copy(), p))
    return Fingerprint(k, cartan, kr, derived)


def reductivity_witness(sub: LieAlgebra, src: RandomSource | None = None, primes: Sequence[int] | None = None) -> dict:
    """Fingerprint of a subalgebra carrying ``ambient`` and ``embedding`` attributes.

    Computed at two primes; the larger ranks and the smaller Cartan dimension
    are kept (each of them can only move in the other direction by bad luck).
    """
    src = src or RandomSource(0)
    primes = _primes(primes)
    L = sub.ambient
    prints = []
    for p in primes:
        S = np.array([[reduce_mod(v.get(i, 0), p) for i in range(L.dim)] for v in sub.embedding], dtype=np.int64).reshape(
            len(sub.embedding), L.dim
        )
        prints.append(fingerprint_mod(L, S, p, src.child("witness")))
    fp = Fingerprint(
        sub.dim,
        min(f.cartan_dim for f in prints),
        max(f.killing_rank for f in prints),
        max(f.derived_dim for f in prints),
    )
    return {**fp.to_json(), "primes": list(primes), "agree": len(set(prints)) == 1}


# -- null-cone sampling ---------------------------------------------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_rem(out, m, p)


def _poly_rem(a, m, p):
    a = _poly_trim(list(a))
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        f = a[-1] * inv % p
        s = len(a) - len(m)
        for i, y in enumerate(m):
            a[s + i] = (a[s + i] - f * y) % p
        _poly_trim(a)
    return a


def _poly_gcd(a, b, p):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _poly_powmod(base, e, m, p):
    result, b = [1], _poly_rem(base, m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, b, m, p)
        b = _poly_mulmod(b, b, m, p)
        e >>= 1
    return result


def _interpolate(values: list[int], p: int) -> list[int]:
    """Coefficients of the polynomial through (t, values[t]), t = 0..d."""
    d = len(values) - 1
    coeffs = [0] * (d + 1)
    for i, y in enumerate(values):
        num, den = [1], 1
        for j in range(d + 1):
            if j != i:
                num = [(a - j * b) % p for a, b in zip([0] + num, num + [0])]
                den = den * (i - j) % p
        f = y * pow(den, -1, p) % p
        coeffs = [(c + f * n) % p for c, n in zip(coeffs, num)]
    return _poly_trim(coeffs)


def poly_roots_mod(f: list[int], p: int, src: RandomSource) -> list[int]:
    """Roots in F_p of a univariate polynomial (coefficients constant term first)."""
    f = _poly_trim([x % p for x in f])
    if len(f) <= 1:
        return []
    xp = _poly_powmod([0, 1], p, f, p) + [0, 0]
    xp[1] = (xp[1] - 1) % p
    roots: list[int] = []
    stack = [_poly_gcd(f, xp, p)]
    t = 0
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            roots.append(-h[0] * pow(h[1], -1, p) % p)
            continue
        while True:
            delta = src.child("split", t).integers(0, p - 1)
            t += 1
            w = _poly_powmod([delta, 1], (p - 1) // 2, h, p) or [0]
            w[0] = (w[0] - 1) % p
            d = _poly_gcd(h, w, p)
            if 1 < len(d) < len(h):
                stack += [d, _poly_div(h, d, p)]
                break
    return sorted(set(roots))


def _poly_div(a, b, p):
    a = _poly_trim(list(a))
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - len(b) + 1)
    while len(a) >= len(b):
        f = a[-1] * inv % p
        s = len(a) - len(b)
        q[s] = f
        for i, y in enumerate(b):
            a[s + i] = (a[s + i] - f * y) % p
        _poly_trim(a)
    return q


def hypersurface_sample(F, p: int, src: RandomSource, budget: int = 200) -> np.ndarray:
    """A nonzero point of {F = 0} modulo p, on the coordinates F depends on.

    For a polynomial over a semi-direct product the point lives in V* (the
    V-coordinates); otherwise in the dual of the whole algebra.  Points come
    from random lines a + t b through roots of the restricted polynomial.
    """
    coords = F.point_coordinates()
    d = F.total_degree()
    if d < 1:
        raise ValueError("F must be nonconstant")
    m = len(coords)
    for attempt in range(budget):
        r = src.child("line", attempt)
        a = r.child("a").residues(m, p)
        b = r.child("b").residues(m, p)
        vals = [F.eval_mod(coords, (a + t * b) % p, p) for t in range(d + 1)]
        for t in poly_roots_mod(_interpolate(vals, p), p, r):
            pt = (a + t * b) % p
            if pt.any():
                return pt
    raise SampleBudgetExhausted(f"no point of F = 0 found in {budget} lines")


# -- regularity probe -------------------------------------------------------------


def regularity_probe(
    L: LieAlgebra,
    src: RandomSource,
    hyperplanes: int = 5,
    points: int = 20,
    best_rank: int | None = None,
    exact: bool = False,
    p: int | None = None,
) -> dict:
    """Fraction of sampled points on random hyperplanes of L* with maximal pairing rank.

    All-regular outcomes are evidence, not proof, that the singular set has
    codimension at least 2.
    """
    n = L.dim
    p = p or DEFAULT_PRIMES[0]
    if best_rank is None:
        best_rank = index_of(L, src.child("probe-index"), exact=exact).best_rank
    rows = []
    for h in range(hyperplanes):
        r = src.child("hyperplane", h)
        c = r.vector(n)
        if not any(c):
            c[0] = 1
        j = next(i for i, x in enumerate(c) if x)
        regular = 0
        for t in range(points):
            x = r.child("point", t).vector(n)
            if exact:
                xi = [Fraction(v) for v in x]
                xi[j] = Fraction(0)
                xi[j] = -sum(a * b for a, b in zip(c, xi)) / c[j]
                rank = rank_exact(pairing_matrix(L, xi))
            else:
                xi = np.array(x, dtype=np.int64) % p
                xi[j] = 0
                xi[j] = (-int(np.dot(np.array(c, dtype=object) % p, xi.astype(object))) * pow(c[j] % p, -1, p)) % p
                rank = rank_mod_dense(pairing_matrix_mod(L, xi, p), p)
            regular += rank == best_rank
        rows.append({"hyperplane": h, "points": points, "regular": regular})
    return {
        "status": "probe-evidence-only",
        "best_rank": best_rank,
        "hyperplanes": rows,
        "all_regular": all(r["regular"] == r["points"] for r in rows),
        "seed": src.seed,
        "prime": None if exact else p,
    }


# -- generic points adapted to the standard torus -----------------------------------


@dataclass
class AdaptedStabilizer:
    """Exact generic stabilizer whose basis is (torus, then root vectors of the torus)."""

    point: dict[int, Fraction]
    basis: list[dict[int, Fraction]]
    torus: list[dict[int, Fraction]]
    support: list[int]


def _span_rank(vecs) -> int:
    return int(np.linalg.matrix_rank(np.array(vecs, dtype=float))) if len(vecs) else 0


def adapted_generic_stabilizer(
    R: Representation, src: RandomSource, target_dim: int, target_rank: int, max_candidates: int = 2000
) -> AdaptedStabilizer:
    """Generic point of R supported on weights spanning a subspace U with
    dim U = rank g - target_rank, whose stabilizer meets the standard Cartan
    subalgebra in a Cartan subalgebra of the stabilizer.

    The torus T = {h : mu(h) = 0 for mu in U} fixes the point; when T is
    self-centralizing in the stabilizer, all restricted weights are rational.
    """
    from itertools import combinations

    L = R.algebra
    if L.cartan is None or L.weights is None or R.weights is None:
        raise ValueError("weight tags are required")
    r = len(L.cartan)
    du = r - target_rank
    wts = sorted({tuple(w) for w in R.weights if any(w)}, reverse=True)
    seen = set()
    cands = []
    if du == 0:
        cands.append(())
    else:
        for combo in combinations(wts, du):
            if _span_rank(combo) == du:
                cands.append(combo)
    p = DEFAULT_PRIMES[0]
    for ci, combo in enumerate(cands[:max_candidates]):
        support = [k for k, w in enumerate(R.weights) if _span_rank(list(combo) + [w]) == du] if du else [
            k for k, w in enumerate(R.weights) if not any(w)
        ]
        key = tuple(support)
        if not support or key in seen:
            continue
        seen.add(key)
        coeffs = src.child("adapted", ci).integers(1, 9, size=len(support))
        xi = {k: Fraction(int(c)) for k, c in zip(support, coeffs)}
        dense = np.zeros(R.dim, dtype=np.int64)
        for k, v in xi.items():
            dense[k] = int(v)
        if L.dim - rank_mod_dense(action_matrix_mod(R, dense, p), p) != target_dim:
            continue
        # torus killing U
        ws = [[Fraction(x) for x in w] for w in combo]
        tor = kernel_basis(ws) if ws else [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
        torus = [{L.cartan[i]: c for i, c in enumerate(t) if c} for t in tor]

        def cls(k):
            w = L.weights[k]
            return tuple(sum((c * w[i] for i, c in enumerate(t)), Fraction(0)) for t in tor)

        stab = kernel_basis(action_matrix(R, xi))
        classes: dict[tuple, list[dict]] = {}
        zero = tuple(Fraction(0) for _ in tor)
        for v in stab:
            parts: dict[tuple, dict[int, Fraction]] = {}
            for k, x in enumerate(v):
                if x:
                    parts.setdefault(cls(k), {})[k] = x
            for c, part in parts.items():
                classes.setdefault(c, []).append(part)
        basis = list(torus)
        ok = True
        for c in sorted(classes):
            ech = SparseEchelon(L.dim)
            for part in classes[c]:
                ech.add(part)
            if c == zero:
                if ech.rank != len(torus):
                    ok = False
                    break
                continue
            basis += [dict(sorted(ech.pivot_rows[q].items())) for q in sorted(ech.pivot_rows)]
        if ok and len(basis) == target_dim:
            return AdaptedStabilizer(xi, basis, torus, support)
    raise SampleBudgetExhausted("no torus-adapted generic point found")


__all__ = [
    "pairing_matrix",
    "pairing_matrix_mod",
    "IndexReport",
    "index_of",
    "magic_number",
    "stabilizer",
    "stabilizer_mod",
    "subalgebra_constants",
    "subalgebra_constants_mod",
    "generic_stabilizer",
    "quotient_dim",
    "subalgebra_index_mod",
    "rais_index",
    "Fingerprint",
    "fingerprint_mod",
    "reductivity_witness",
    "hypersurface_sample",
    "poly_roots_mod",
    "regularity_probe",
    "AdaptedStabilizer",
    "adapted_generic_stabilizer",
]
