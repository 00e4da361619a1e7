"""Exact rational and modular linear algebra.

Two back ends live here.  Exact work uses :class:`fractions.Fraction` with
sparse row dictionaries; modular work uses dense ``int64`` numpy arrays for
small or dense systems and the same sparse row elimination for large sparse
ones.  Primes are kept below ``2**25`` so that a single product of residues
fits comfortably in 64 bits and matrix products can be accumulated in chunks.
"""
from __future__ import annotations

import zlib
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DenominatorDivisibleByP

Scalar = Fraction

MIN_PRIME = 10**6
DENSE_COLUMN_LIMIT = 64
_CHUNK = 4096  # inner dimension per int64 accumulation; p < 2**25 keeps sums < 2**63


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_above(start: int, count: int) -> list[int]:
    out = []
    n = start + 1
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


# 16777259, 16777289, ... : all in (2**24, 2**25)
DEFAULT_PRIMES: tuple[int, ...] = tuple(primes_above(2**24, 8))


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def reduce_mod(x, p: int) -> int:
    """Image of a rational number in the field with ``p`` elements."""
    x = as_scalar(x)
    den = x.denominator % p
    if den == 0:
        raise DenominatorDivisibleByP(f"denominator of {x} divisible by {p}")
    return x.numerator * pow(den, -1, p) % p


def format_scalar(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# sparse matrices
# ---------------------------------------------------------------------------


class SparseMatrix:
    """Rational matrix stored as a dictionary of nonzero rows.

    ``entries`` yields ``(row, col, value)`` triples in position order; zero
    values are never stored.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, entries: Iterable = ()):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        self.rows: dict[int, dict[int, Fraction]] = {}
        for r, c, v in entries:
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise IndexError(f"entry ({r}, {c}) outside {self.nrows}x{self.ncols}")
            v = as_scalar(v)
            if v == 0:
                continue
            row = self.rows.setdefault(r, {})
            s = row.get(c, 0) + v
            if s:
                row[c] = s
            else:
                del row[c]
                if not row:
                    del self.rows[r]

    @classmethod
    def _from_rows(cls, nrows, ncols, rows) -> "SparseMatrix":
        m = cls.__new__(cls)
        m.nrows, m.ncols = nrows, ncols
        m.rows = {r: row for r, row in rows.items() if row}
        return m

    @classmethod
    def from_dense(cls, data: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        return cls(nrows, ncols, ((i, j, v) for i, row in enumerate(data) for j, v in enumerate(row) if v))

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, ((i, i, 1) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def diagonal(cls, values: Sequence) -> "SparseMatrix":
        return cls(len(values), len(values), ((i, i, v) for i, v in enumerate(values)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> list[tuple[int, int, Fraction]]:
        return [(r, c, v) for r in sorted(self.rows) for c, v in sorted(self.rows[r].items())]

    def __iter__(self) -> Iterator[tuple[int, int, Fraction]]:
        return iter(self.entries)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.rows.values())

    def __getitem__(self, key) -> Fraction:
        r, c = key
        return self.rows.get(r, {}).get(c, Fraction(0))

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(self.entries)))

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for r, row in self.rows.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def to_mod(self, p: int) -> np.ndarray:
        a = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        for r, row in self.rows.items():
            for c, v in row.items():
                a[r, c] = reduce_mod(v, p)
        return a

    def transpose(self) -> "SparseMatrix":
        rows: dict[int, dict[int, Fraction]] = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                rows.setdefault(c, {})[r] = v
        return SparseMatrix._from_rows(self.ncols, self.nrows, rows)

    T = property(transpose)

    def scale(self, s) -> "SparseMatrix":
        s = as_scalar(s)
        if s == 0:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix._from_rows(
            self.nrows, self.ncols, {r: {c: v * s for c, v in row.items()} for r, row in self.rows.items()}
        )

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def _combine(self, other: "SparseMatrix", sign: int) -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = {r: dict(row) for r, row in self.rows.items()}
        for r, orow in other.rows.items():
            row = rows.setdefault(r, {})
            for c, v in orow.items():
                s = row.get(c, 0) + sign * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
        return SparseMatrix._from_rows(self.nrows, self.ncols, rows)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            rows: dict[int, dict[int, Fraction]] = {}
            for r, row in self.rows.items():
                acc: dict[int, Fraction] = {}
                for k, v in row.items():
                    orow = other.rows.get(k)
                    if not orow:
                        continue
                    for c, w in orow.items():
                        acc[c] = acc.get(c, 0) + v * w
                acc = {c: v for c, v in acc.items() if v}
                if acc:
                    rows[r] = acc
            return SparseMatrix._from_rows(self.nrows, other.ncols, rows)
        return self.apply(other)

    def apply(self, vec) -> list[Fraction]:
        """Matrix times a dense vector (sequence) or a sparse dict vector."""
        if isinstance(vec, dict):
            out = [Fraction(0)] * self.nrows
            for r, row in self.rows.items():
                s = Fraction(0)
                for c, v in row.items():
                    w = vec.get(c)
                    if w:
                        s += v * w
                out[r] = s
            return out
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.nrows
        for r, row in self.rows.items():
            s = Fraction(0)
            for c, v in row.items():
                w = vec[c]
                if w:
                    s += v * w
            out[r] = s
        return out

    def commutator(self, other: "SparseMatrix") -> "SparseMatrix":
        return (self @ other) - (other @ self)

    def trace(self) -> Fraction:
        return sum((row.get(r, 0) for r, row in self.rows.items()), Fraction(0))

    def denominator_lcm(self) -> int:
        d = 1
        for row in self.rows.values():
            for v in row.values():
                d = d * v.denominator // gcd(d, v.denominator)
        return d

    def block(self, row_offset: int, col_offset: int, nrows: int, ncols: int) -> "SparseMatrix":
        """Embed this matrix at the given offset of a larger zero matrix."""
        return SparseMatrix._from_rows(
            nrows,
            ncols,
            {r + row_offset: {c + col_offset: v for c, v in row.items()} for r, row in self.rows.items()},
        )


def direct_sum_matrices(blocks: Sequence[SparseMatrix]) -> SparseMatrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    rows: dict[int, dict[int, Fraction]] = {}
    ro = co = 0
    for b in blocks:
        for r, row in b.rows.items():
            rows[r + ro] = {c + co: v for c, v in row.items()}
        ro += b.nrows
        co += b.ncols
    return SparseMatrix._from_rows(n, m, rows)


# ---------------------------------------------------------------------------
# randomness
# ---------------------------------------------------------------------------


def _key_int(key) -> int:
    if isinstance(key, int):
        return key & 0xFFFFFFFF
    return zlib.crc32(str(key).encode())


class RandomSource:
    """Seeded integer stream.  Children derived by key are independent of draw order."""

    def __init__(self, seed: int, bound: int = 10**4, _path: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.bound = int(bound)
        self._path = tuple(_path)
        self._rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=self._path)))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, path={self._path})"

    def child(self, *keys) -> "RandomSource":
        return RandomSource(self.seed, self.bound, self._path + tuple(_key_int(k) for k in keys))

    def integers(self, low: int, high: int, size=None):
        """Uniform integers in the closed range ``[low, high]``."""
        if size is None:
            return int(self._rng.integers(low, high + 1))
        return self._rng.integers(low, high + 1, size=size, dtype=np.int64)

    def vector(self, n: int, bound: int | None = None) -> list[int]:
        b = self.bound if bound is None else bound
        return [int(x) for x in self.integers(-b, b, size=n)]

    def residues(self, n: int, p: int) -> np.ndarray:
        return self.integers(0, p - 1, size=n)


# ---------------------------------------------------------------------------
# dense modular kernels
# ---------------------------------------------------------------------------


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    k = a.shape[-1]
    if k <= _CHUNK:
        return (a @ b) % p
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for s in range(0, k, _CHUNK):
        out = (out + (a[..., s : s + _CHUNK] @ b[s : s + _CHUNK]) % p) % p
    return out


def rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns the nonzero rows and pivot columns."""
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod_dense(a: np.ndarray, p: int) -> int:
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    if m > n:
        a = a.T.copy()
        m, n = n, m
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        below = a[r + 1 :, c]
        hit = np.flatnonzero(below)
        if hit.size:
            f = below[hit] * inv % p
            a[r + 1 + hit] = (a[r + 1 + hit] - np.outer(f, a[r]) % p) % p
        r += 1
    return r


def kernel_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Right kernel over F_p as rows of a ``(n - rank) x n`` array."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref_mod(a, p)
    free = [c for c in range(n) if c not in set(pivots)]
    k = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        k[t, f] = 1
        if pivots:
            k[t, pivots] = (-r[:, f]) % p
    return k


def solve_left_mod(basis: np.ndarray, vectors: np.ndarray, p: int) -> np.ndarray | None:
    """Coordinates ``c`` with ``c @ basis == vectors`` (rows), or None if not in the span."""
    basis = np.asarray(basis, dtype=np.int64) % p
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.int64)) % p
    k, n = basis.shape
    aug = np.concatenate([basis.T, vectors.T], axis=1)
    r, pivots = rref_mod(aug, p)
    if any(c >= k for c in pivots):
        return None
    if len(pivots) < k:
        raise ValueError("basis rows are linearly dependent")
    return r[:k, k:].T.copy()


def inverse_mod(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([np.asarray(a, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref_mod(aug, p)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular mod p")
    return r[:, n:]


def nilspace_dim_mod(a: np.ndarray, p: int) -> int:
    """Dimension of the generalized 0-eigenspace of a square matrix over F_p."""
    n = a.shape[0]
    if n == 0:
        return 0
    power = np.array(a, dtype=np.int64) % p
    prev = n - rank_mod_dense(power, p)
    while True:
        power = matmul_mod(power, a, p)
        cur = n - rank_mod_dense(power, p)
        if cur == prev:
            return cur
        prev = cur


# ---------------------------------------------------------------------------
# sparse elimination over Q or F_p
# ---------------------------------------------------------------------------


class _Rationals:
    zero = Fraction(0)

    @staticmethod
    def norm(x):
        return as_scalar(x)

    @staticmethod
    def inv(x):
        return 1 / x

    @staticmethod
    def mul(x, y):
        return x * y

    @staticmethod
    def sub(x, y):
        return x - y


class _ModP:
    def __init__(self, p: int):
        self.p = p
        self.zero = 0

    def norm(self, x):
        if isinstance(x, Fraction):
            return reduce_mod(x, self.p)
        return int(x) % self.p

    def inv(self, x):
        return pow(x, -1, self.p)

    def mul(self, x, y):
        return x * y % self.p

    def sub(self, x, y):
        return (x - y) % self.p


class SparseEchelon:
    """Incrementally maintained reduced row echelon form.

    Pivot rows are kept fully reduced against each other, so reducing an
    incoming row needs a single pass over its pivot columns.
    """

    def __init__(self, ncols: int, p: int | None = None):
        self.ncols = ncols
        self.field = _Rationals() if p is None else _ModP(p)
        self.pivot_rows: dict[int, dict[int, object]] = {}
        self._occurs: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: dict) -> dict:
        F = self.field
        r = {c: F.norm(v) for c, v in row.items()}
        r = {c: v for c, v in r.items() if v}
        for c in [c for c in r if c in self.pivot_rows]:
            v = r.get(c)
            if not v:
                continue
            for k, w in self.pivot_rows[c].items():
                s = F.sub(r.get(k, F.zero), F.mul(v, w))
                if s:
                    r[k] = s
                else:
                    r.pop(k, None)
        return r

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when it raised the rank."""
        F = self.field
        r = self.reduce(row)
        if not r:
            return False
        occ = self._occurs
        c0 = min(r, key=lambda c: (len(occ.get(c, ())), c))
        inv = F.inv(r[c0])
        r = {c: F.mul(v, inv) for c, v in r.items()}
        for pc in list(occ.get(c0, ())):
            prow = self.pivot_rows[pc]
            f = prow.get(c0)
            if not f:
                continue
            for k, w in r.items():
                s = F.sub(prow.get(k, F.zero), F.mul(f, w))
                if s:
                    if k not in prow:
                        occ.setdefault(k, set()).add(pc)
                    prow[k] = s
                else:
                    if k in prow:
                        del prow[k]
                        occ[k].discard(pc)
        self.pivot_rows[c0] = r
        for k in r:
            occ.setdefault(k, set()).add(c0)
        return True

    def kernel(self) -> list[dict[int, object]]:
        """Right kernel of the inserted rows as sparse vectors."""
        F = self.field
        one = F.norm(1)
        free = [c for c in range(self.ncols) if c not in self.pivot_rows]
        out = []
        for f in free:
            vec = {f: one}
            for pc in self._occurs.get(f, ()):
                w = self.pivot_rows[pc].get(f)
                if w:
                    vec[pc] = F.sub(F.zero, w)
            out.append(vec)
        return out


def _dense_rows(m) -> tuple[list[dict], int]:
    if isinstance(m, SparseMatrix):
        return [m.rows[r] for r in sorted(m.rows)], m.ncols
    m = list(m)
    ncols = len(m[0]) if m else 0
    return [{c: v for c, v in enumerate(row) if v} for row in m], ncols


def rank_mod(m, p: int) -> int:
    """Rank over F_p of a rational matrix (SparseMatrix or nested sequence)."""
    if p <= MIN_PRIME or not is_prime(p):
        raise ValueError(f"modulus must be a prime > 10^6, got {p}")
    rows, ncols = _dense_rows(m)
    if ncols < DENSE_COLUMN_LIMIT:
        a = np.zeros((len(rows), ncols), dtype=np.int64)
        for i, row in enumerate(rows):
            for c, v in row.items():
                a[i, c] = reduce_mod(v, p)
        return rank_mod_dense(a, p) if len(rows) else 0
    ech = SparseEchelon(ncols, p)
    for row in rows:
        ech.add(row)
    return ech.rank


def rank_exact(m) -> int:
    """Rank over Q by Bareiss fraction-free elimination on integer rows."""
    rows, ncols = _dense_rows(m)
    mat = []
    for row in rows:
        if not row:
            continue
        den = 1
        for v in row.values():
            d = as_scalar(v).denominator
            den = den * d // gcd(den, d)
        dense = [0] * ncols
        for c, v in row.items():
            v = as_scalar(v)
            dense[c] = v.numerator * (den // v.denominator)
        mat.append(dense)
    nr = len(mat)
    if nr == 0:
        return 0
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pr = mat[r]
        pv = pr[c]
        for i in range(r + 1, nr):
            row = mat[i]
            f = row[c]
            mat[i] = [(pv * row[k] - f * pr[k]) // prev for k in range(ncols)]
        prev = pv
        r += 1
    return r


def kernel_basis(m) -> list[list[Fraction]]:
    """Exact basis of the right null space, as dense rational vectors."""
    rows, ncols = _dense_rows(m)
    ech = SparseEchelon(ncols)
    for row in rows:
        ech.add(row)
    out = []
    for vec in ech.kernel():
        dense = [Fraction(0)] * ncols
        for c, v in vec.items():
            dense[c] = v
        out.append(dense)
    return out


def row_space_basis(vectors: Sequence[Sequence], p: int | None = None) -> list[list]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    rows, ncols = _dense_rows(vectors)
    if not rows:
        return []
    if p is not None:
        a = np.zeros((len(rows), ncols), dtype=np.int64)
        for i, row in enumerate(rows):
            for c, v in row.items():
                a[i, c] = reduce_mod(as_scalar(v), p) if isinstance(v, Fraction) else int(v) % p
        r, _ = rref_mod(a, p)
        return [list(map(int, x)) for x in r]
    ech = SparseEchelon(ncols)
    for row in rows:
        ech.add(row)
    out = []
    for c in sorted(ech.pivot_rows):
        dense = [Fraction(0)] * ncols
        for k, v in ech.pivot_rows[c].items():
            dense[k] = v
        out.append(dense)
    return out


# ---------------------------------------------------------------------------
# reconstruction
# ---------------------------------------------------------------------------


def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int]:
    x, m = 0, 1
    for r, q in zip(residues, moduli):
        t = ((r - x) * pow(m, -1, q)) % q
        x += m * t
        m *= q
    return x % m, m


def rational_reconstruct(a: int, m: int, bound: int | None = None) -> Fraction | None:
    """Find n/d with n = a*d (mod m), |n| <= N, 0 < d <= D (Wang's algorithm).

    With ``bound`` given, D = bound and N = (m // 2) // D; otherwise both are
    ``isqrt(m // 2)``.  Returns None when no such fraction exists.
    """
    a %= m
    if bound is None:
        n_bound = d_bound = isqrt(m // 2)
    else:
        d_bound = bound
        n_bound = max(1, (m // 2) // bound)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > n_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > d_bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)
