"""The tensor cell model of X x X, its diagonal neighbourhood and the swap quotient.

A product cell is a pair ``(s, t)`` of simplices; its dimension is dim s + dim t and
its orientation is the tensor orientation, so the boundary obeys the Leibniz rule.

The relative part D of a pair (X, A) consists of the cells with a factor in A and of
the closure of the cells whose factors share a vertex.  A cell (s, t) lies in that
closure iff some vertex w has both s + w and t + w in X; this is the smallest
subcomplex containing the cells that meet the diagonal, and the swap acts freely on
everything outside it.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from .chains import Chain, ChainComplex, ChainMap, Ring
from .complex import (SimplicialComplex, SimplicialMap, Subcomplex, Subdivision, barycentric_subdivision,
                      sd_chain, simplex_boundary)
from .errors import MalformedInputError, ResourceGuardError

DEFAULT_CELL_CAP = 5_000_000


def cell_cap() -> int:
    value = os.environ.get("SYMSQ_CELL_CAP")
    if value:
        try:
            return int(value)
        except ValueError:
            raise MalformedInputError(f"SYMSQ_CELL_CAP must be an integer, got {value!r}") from None
    return DEFAULT_CELL_CAP


def tau_sign(p: int, q: int) -> int:
    """Sign with which the swap sends s (x) t to t (x) s for dim s = p, dim t = q."""
    if p < 0 or q < 0:
        raise MalformedInputError("degrees must be non-negative")
    return -1 if (p * q) % 2 else 1


def tensor_boundary(cell) -> dict:
    """Leibniz boundary of a tensor cell of any number of simplex factors."""
    out: dict = {}
    sign = 1
    for pos, s in enumerate(cell):
        for face, c in simplex_boundary(s).items():
            key = cell[:pos] + (face,) + cell[pos + 1:]
            out[key] = out.get(key, 0) + sign * c
        if (len(s) - 1) % 2:
            sign = -sign
    return out


def swap(cell) -> tuple[int, tuple]:
    s, t = cell
    return tau_sign(len(s) - 1, len(t) - 1), (t, s)


def cross_chain(a: Chain, b: Chain) -> Chain:
    """The cross product a x b; the basis of the product is the literal tensor basis."""
    if a.ring is not b.ring:
        raise MalformedInputError(f"ring mismatch: {a.ring.value} vs {b.ring.value}")
    terms = {}
    for s, c in a.terms.items():
        for t, d in b.terms.items():
            terms[(s, t)] = c * d
    return Chain(a.degree + b.degree, terms, a.ring)


class ProductPairComplex:
    """The relative chain complex C(X x X) / C(D) for a pair (X, A)."""

    def __init__(self, X: SimplicialComplex, A: Subcomplex | None = None, ring: Ring = Ring.Z,
                 cap: int | None = None):
        if A is not None:
            if A.parent != X:
                raise MalformedInputError("subcomplex belongs to a different complex")
            for s in A.simplices:
                for f in simplex_boundary(s):
                    if f not in A.simplices:
                        raise MalformedInputError(f"subcomplex is not face-closed: {s} lacks face {f}")
        self.X = X
        self.A = A
        self.ring = ring
        cap = cell_cap() if cap is None else cap
        n = len(X)
        if n * n > cap:
            raise ResourceGuardError(f"product of a {n}-cell complex has {n * n} cells, above the cap {cap}")
        self.reach = _vertex_reach(X)
        a_set = A.simplices if A is not None else frozenset()
        self._a = a_set
        basis: dict[int, list] = {}
        simplices = X.simplices()
        for s in simplices:
            if s in a_set:
                continue
            rs = self.reach[s]
            p = len(s) - 1
            for t in simplices:
                if t in a_set or rs & self.reach[t]:
                    continue
                basis.setdefault(p + len(t) - 1, []).append((s, t))
        self.complex = ChainComplex(basis, tensor_boundary, ring, name=f"({X.name})^2 rel D")

    def in_relative_part(self, cell) -> bool:
        s, t = cell
        return s in self._a or t in self._a or bool(self.reach[s] & self.reach[t])

    def restrict(self, chain: Chain) -> Chain:
        return self.complex.restrict(chain)


def _vertex_reach(X: SimplicialComplex) -> dict:
    """For each simplex s, the bitmask of vertices w such that s + w is a simplex of X."""
    reach = {s: sum(1 << v for v in s) for s in X.simplices()}
    for s in X.simplices():
        for i, v in enumerate(s):
            if len(s) > 1:
                reach[s[:i] + s[i + 1:]] |= 1 << v
    return reach


def product_pair(X: SimplicialComplex, A: Subcomplex | None = None, ring: Ring = Ring.Z,
                 cap: int | None = None) -> ProductPairComplex:
    return ProductPairComplex(X, A, ring, cap)


class QuotientPairComplex:
    """Coinvariants of the swap on a product pair: the chain model of sys(X, A).

    Orbit cells are represented by the lexicographically smaller of (s, t), (t, s).
    """

    def __init__(self, P: ProductPairComplex):
        self.product = P
        self.ring = P.ring
        self.X, self.A = P.X, P.A
        basis: dict[int, list] = {}
        for k in P.complex.degrees:
            basis[k] = [c for c in P.complex.basis(k) if c < (c[1], c[0])]
        self.complex = ChainComplex(basis, self._orbit_boundary, P.ring, name=f"sys({P.X.name})")
        self.project = ChainMap(self.project_cell, P.ring, self.complex)

    def project_cell(self, cell) -> dict:
        """pr# on one product cell: zero on D, else the orbit cell with the swap sign."""
        s, t = cell
        if self.product.in_relative_part(cell):
            return {}
        if cell < (t, s):
            return {cell: 1}
        return {(t, s): tau_sign(len(s) - 1, len(t) - 1)}

    def _orbit_boundary(self, rep) -> dict:
        out: dict = {}
        for face, c in tensor_boundary(rep).items():
            for img, d in self.project_cell(face).items():
                out[img] = out.get(img, 0) + c * d
        return out


def symmetric_quotient(P: ProductPairComplex) -> QuotientPairComplex:
    return QuotientPairComplex(P)


def product_map(f: SimplicialMap, g: SimplicialMap | None = None):
    """The cellular map f x g on tensor cells (degenerate images vanish)."""
    g = g or f

    def on_cell(cell):
        s, t = cell
        out = {}
        for s2, a in f.on_simplex(s).items():
            for t2, b in g.on_simplex(t).items():
                out[(s2, t2)] = a * b
        return out
    return on_cell


def quotient_map(f: SimplicialMap, source: QuotientPairComplex, target: QuotientPairComplex) -> ChainMap:
    """(sys f)#: f acting on both factors of orbit cells, then projected into the target quotient."""
    if source.X != f.domain or target.X != f.codomain:
        raise MalformedInputError("map does not match the quotient complexes")
    if not f.is_pair_map(source.A, target.A):
        raise MalformedInputError("map does not send the source subcomplex into the target subcomplex")
    on_product = product_map(f)

    def on_cell(rep):
        out: dict = {}
        for cell, c in on_product(rep).items():
            for img, d in target.project_cell(cell).items():
                out[img] = out.get(img, 0) + c * d
        return out
    return ChainMap(on_cell, target.ring, target.complex)


@dataclass
class TowerLevel:
    level: int
    X: SimplicialComplex
    A: Subcomplex | None
    product: ProductPairComplex = field(repr=False)
    quotient: QuotientPairComplex = field(repr=False)


class Tower:
    """Iterated barycentric subdivisions of a pair with their product/quotient complexes.

    Level m models the diagonal neighbourhood of the m-fold subdivision; finer levels
    have smaller neighbourhoods.  ``comparison(m)`` is the chain map from level m+1 to
    level m induced by the simplicial approximation of the identity (barycenter of s
    goes to the last vertex of s) on both factors.
    """

    def __init__(self, X: SimplicialComplex, A: Subcomplex | None = None, ring: Ring = Ring.Z,
                 cap: int | None = None):
        self.ring = ring
        self.cap = cap
        self._spaces: list[tuple[SimplicialComplex, Subcomplex | None]] = [(X, A)]
        self._subdivisions: list[Subdivision] = []
        self._levels: dict[int, TowerLevel] = {}

    def space(self, m: int) -> tuple[SimplicialComplex, Subcomplex | None]:
        cap = cell_cap() if self.cap is None else self.cap
        while len(self._spaces) <= m:
            X, A = self._spaces[-1]
            if len(X) * 8 > cap:
                raise ResourceGuardError(f"subdividing a {len(X)}-cell complex would exceed the cap {cap}")
            sd = barycentric_subdivision(X)
            self._subdivisions.append(sd)
            self._spaces.append((sd.complex, sd.subcomplex(A)))
        return self._spaces[m]

    def subdivision(self, m: int) -> Subdivision:
        """The subdivision taking level m to level m+1."""
        self.space(m + 1)
        return self._subdivisions[m]

    def level(self, m: int) -> TowerLevel:
        if m < 0:
            raise MalformedInputError("tower level must be non-negative")
        if m not in self._levels:
            X, A = self.space(m)
            P = ProductPairComplex(X, A, self.ring, self.cap)
            self._levels[m] = TowerLevel(m, X, A, P, QuotientPairComplex(P))
        return self._levels[m]

    def lift(self, chain: Chain, m: int, start: int = 0) -> Chain:
        """Push a chain of level ``start`` to level m through sd#."""
        for i in range(start, m):
            chain = sd_chain(self.subdivision(i), chain)
        return chain

    def comparison(self, m: int) -> ChainMap:
        coarse = self.level(m)
        g = self.subdivision(m).approximation
        on_product = product_map(g)

        def on_cell(rep):
            out: dict = {}
            for cell, c in on_product(rep).items():
                for img, d in coarse.quotient.project_cell(cell).items():
                    out[img] = out.get(img, 0) + c * d
            return out
        return ChainMap(on_cell, self.ring, coarse.quotient.complex)


def diagonal_tower(X: SimplicialComplex, A: Subcomplex | None, ring: Ring, m: int,
                   cap: int | None = None) -> tuple[ProductPairComplex, ChainMap]:
    """The product pair at level m and the comparison chain map from level m+1 to level m."""
    tower = Tower(X, A, ring, cap)
    return tower.level(m).product, tower.comparison(m)


def cell_to_json(cell, orbit: bool = False):
    out = [list(s) for s in cell]
    return {"cell": out, "orbit": True} if orbit else out
