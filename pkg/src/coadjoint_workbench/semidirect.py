"""Semi-direct products g ⋉ V with V an abelian ideal."""
from __future__ import annotations

from fractions import Fraction

from .algebra import LieAlgebra
from .errors import MixedAlgebras
from .irrep import Representation


class SemidirectAlgebra(LieAlgebra):
    """A :class:`LieAlgebra` on the basis (g-basis, V-basis), graded ``g``/``v``.

    ``base`` and ``module`` refer back to the factors.  The V-part starts at
    index ``base.dim``.
    """

    base: LieAlgebra
    module: Representation

    @property
    def g_indices(self) -> range:
        return range(self.base.dim)

    @property
    def v_indices(self) -> range:
        return range(self.base.dim, self.dim)

    def bidegree_of(self, exponents) -> tuple[int, int]:
        n = self.base.dim
        dg = sum(e for i, e in exponents.items() if i < n)
        return dg, sum(exponents.values()) - dg


def semidirect(L: LieAlgebra, R: Representation, name: str | None = None, v_prefix: str = "v") -> SemidirectAlgebra:
    """The bracket [(x, v), (x', v')] = ([x, x'], x.v' - x'.v)."""
    if R.algebra is not L and R.algebra != L:
        raise MixedAlgebras("the module is not over this algebra")
    n, m = L.dim, R.dim
    labels = list(L.labels) + [f"{v_prefix}{k + 1}" for k in range(m)]
    while len(set(labels)) != len(labels):
        v_prefix += "_"
        labels = list(L.labels) + [f"{v_prefix}{k + 1}" for k in range(m)]
    br: dict[tuple[int, int], dict[int, Fraction]] = {key: dict(v) for key, v in L.brackets.items()}
    for i, mat in enumerate(R.matrices):
        cols: dict[int, dict[int, Fraction]] = {}
        for r, c, val in mat.entries:
            cols.setdefault(c, {})[n + r] = val
        for c, vec in cols.items():
            br[(i, n + c)] = vec
    weights = None
    if L.weights is not None and R.weights is not None:
        weights = list(L.weights) + list(R.weights)
    gens = None
    if L.generators is not None:
        tops = [s.generator for s in R.summands if s.generator is not None]
        covered = sum(s.dim for s in R.summands if s.generator is not None)
        if covered == m:
            gens = list(L.generators) + [n + t for t in tops]
    S = SemidirectAlgebra(
        name or f"{L.name}x{R.dim}",
        labels,
        br,
        grading=["g"] * n + ["v"] * m,
        weights=weights,
        cartan=L.cartan,
        generators=gens,
    )
    S.base = L
    S.module = R
    return S
