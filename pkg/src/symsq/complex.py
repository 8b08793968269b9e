"""Finite abstract simplicial complexes, simplicial maps and barycentric subdivision.

Simplices are tuples of vertex ids in strictly increasing order; that order is the
orientation.  Signs live in chain coefficients, never in vertex order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .chains import Chain, ChainComplex, ChainMap, Ring
from .errors import MalformedInputError

Simplex = tuple


def permutation_sign(seq) -> int:
    """Sign of the permutation that sorts ``seq`` (entries must be distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def canonical_simplex(vertices: Iterable[int]) -> Simplex:
    vs = list(vertices)
    if not vs:
        raise MalformedInputError("empty simplex")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise MalformedInputError(f"vertex ids must be non-negative integers, got {v!r}")
    s = tuple(sorted(vs))
    if len(set(s)) != len(s):
        raise MalformedInputError(f"duplicate vertex in simplex {list(vs)}")
    return s


def faces(simplex: Simplex) -> Iterable[Simplex]:
    """All nonempty faces, including the simplex itself."""
    n = len(simplex)
    for r in range(1, n + 1):
        yield from combinations(simplex, r)


def simplex_boundary(simplex: Simplex) -> dict[Simplex, int]:
    if len(simplex) <= 1:
        return {}
    return {simplex[:i] + simplex[i + 1:]: (-1) ** i for i in range(len(simplex))}


class SimplicialComplex:
    """An immutable finite abstract simplicial complex."""

    def __init__(self, simplices: Iterable[Simplex], name: str = ""):
        by_dim: dict[int, set] = {}
        for s in simplices:
            by_dim.setdefault(len(s) - 1, set()).add(tuple(s))
        self._by_dim = {k: tuple(sorted(v)) for k, v in sorted(by_dim.items())}
        self._set = frozenset(s for v in self._by_dim.values() for s in v)
        self.name = name
        for s in self._set:
            if len(s) > 1:
                for f in simplex_boundary(s):
                    if f not in self._set:
                        raise MalformedInputError(f"simplex {s} is missing its face {f}")

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], name: str = "") -> "SimplicialComplex":
        closure = set()
        for f in facets:
            closure.update(faces(canonical_simplex(f)))
        return cls(closure, name)

    @property
    def dim(self) -> int:
        return max(self._by_dim, default=-1)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self._by_dim.get(0, ()))

    def simplices(self, k: int | None = None) -> tuple[Simplex, ...]:
        """Simplices of dimension k, or all simplices ordered by dimension then lexicographically."""
        if k is None:
            return tuple(s for v in self._by_dim.values() for s in v)
        return self._by_dim.get(k, ())

    def f_vector(self) -> list[int]:
        return [len(self._by_dim.get(k, ())) for k in range(self.dim + 1)]

    def facets(self) -> tuple[Simplex, ...]:
        cofaced = set()
        for s in self._set:
            for f in simplex_boundary(s):
                cofaced.add(f)
        return tuple(s for s in self.simplices() if s not in cofaced)

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self._set

    def __len__(self):
        return len(self._set)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return f"SimplicialComplex({self.name or '?'}, f={self.f_vector()})"

    def subcomplex(self, facets: Iterable[Iterable[int]]) -> "Subcomplex":
        return Subcomplex.from_facets(self, facets)

    def empty_subcomplex(self) -> "Subcomplex":
        return Subcomplex(self, ())


def build_complex(facets: Iterable[Iterable[int]], name: str = "") -> SimplicialComplex:
    return SimplicialComplex.from_facets(facets, name)


class Subcomplex:
    """A face-closed set of simplices of a parent complex."""

    def __init__(self, parent: SimplicialComplex, simplices: Iterable[Simplex]):
        self.parent = parent
        simplices = frozenset(tuple(s) for s in simplices)
        for s in simplices:
            if s not in parent:
                raise MalformedInputError(f"{s} is not a simplex of the parent complex")
            for f in simplex_boundary(s):
                if f not in simplices:
                    raise MalformedInputError(f"subcomplex is not face-closed: {s} lacks face {f}")
        self.simplices = simplices

    @classmethod
    def from_facets(cls, parent: SimplicialComplex, facets: Iterable[Iterable[int]]) -> "Subcomplex":
        closure = set()
        for f in facets:
            s = canonical_simplex(f)
            if s not in parent:
                raise MalformedInputError(f"subcomplex facet {list(f)} is not a face of the complex")
            closure.update(faces(s))
        return cls(parent, closure)

    def __contains__(self, simplex) -> bool:
        return tuple(simplex) in self.simplices

    def __len__(self):
        return len(self.simplices)

    def as_complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.simplices)


class SimplicialMap:
    """A vertex map that sends every simplex of ``domain`` onto a simplex of ``codomain``."""

    def __init__(self, domain: SimplicialComplex, codomain: SimplicialComplex, vertex_map: Mapping[int, int]):
        self.domain = domain
        self.codomain = codomain
        self.vertex_map = {int(k): int(v) for k, v in vertex_map.items()}
        missing = [v for v in domain.vertices if v not in self.vertex_map]
        if missing:
            raise MalformedInputError(f"vertex map undefined on {missing}")
        for s in domain.simplices():
            if self.image(s) not in codomain:
                raise MalformedInputError(f"image of {s} is not a simplex of the codomain")

    def image(self, simplex: Simplex) -> Simplex:
        return tuple(sorted({self.vertex_map[v] for v in simplex}))

    def on_simplex(self, simplex: Simplex) -> dict[Simplex, int]:
        """f# on one oriented simplex: 0 if degenerate, else the sorted image with its sign."""
        img = [self.vertex_map[v] for v in simplex]
        if len(set(img)) < len(img):
            return {}
        return {tuple(sorted(img)): permutation_sign(img)}

    def compose(self, after: "SimplicialMap") -> "SimplicialMap":
        """The composite ``after o self``."""
        return SimplicialMap(self.domain, after.codomain,
                             {v: after.vertex_map[w] for v, w in self.vertex_map.items()})

    def is_pair_map(self, source_sub: Subcomplex | None, target_sub: Subcomplex | None) -> bool:
        if source_sub is None or not len(source_sub):
            return True
        if target_sub is None:
            return False
        return all(self.image(s) in target_sub for s in source_sub.simplices)

    @classmethod
    def identity(cls, K: SimplicialComplex) -> "SimplicialMap":
        return cls(K, K, {v: v for v in K.vertices})


def induced_chain_map(f: SimplicialMap, ring: Ring = Ring.Z, target: ChainComplex | None = None) -> ChainMap:
    return ChainMap(f.on_simplex, ring, target)


def complex_of(K: SimplicialComplex, ring: Ring = Ring.Z) -> ChainComplex:
    """The simplicial chain complex of K; basis = canonical simplices."""
    basis = {k: K.simplices(k) for k in range(K.dim + 1)}
    return ChainComplex(basis, simplex_boundary, ring, name=K.name)


def relative_complex(K: SimplicialComplex, A: Subcomplex | None, ring: Ring = Ring.Z) -> ChainComplex:
    """C(K)/C(A): basis = simplices of K outside A, boundary terms in A deleted."""
    if A is None:
        return complex_of(K, ring)
    if A.parent != K:
        raise MalformedInputError("subcomplex belongs to a different complex")
    for s in A.simplices:
        for f in simplex_boundary(s):
            if f not in A.simplices:
                raise MalformedInputError(f"subcomplex is not face-closed: {s} lacks face {f}")
    basis = {k: [s for s in K.simplices(k) if s not in A.simplices] for k in range(K.dim + 1)}
    return ChainComplex(basis, simplex_boundary, ring, name=f"{K.name}/A")


@dataclass
class Subdivision:
    """The barycentric subdivision sd(K) with its comparison data.

    Vertex ``i`` of ``complex`` is the barycenter of ``carrier[i]``; ids follow the
    canonical simplex order of K (dimension first), so barycenters along a flag appear
    in increasing id order.
    """

    source: SimplicialComplex
    complex: SimplicialComplex
    carrier: tuple
    vertex_of: dict
    chain_map: ChainMap = field(repr=False)
    approximation: SimplicialMap = field(repr=False)

    def subcomplex(self, A: Subcomplex | None) -> Subcomplex | None:
        """sd(A) as a subcomplex of sd(K)."""
        if A is None:
            return None
        simplices = [s for s in self.complex.simplices() if all(self.carrier[v] in A for v in s)]
        return Subcomplex(self.complex, simplices)

    def subdivide_map(self, f: SimplicialMap, target: "Subdivision") -> SimplicialMap:
        """sd(f): barycenter of s goes to the barycenter of f(s)."""
        return SimplicialMap(self.complex, target.complex,
                             {v: target.vertex_of[f.image(s)] for v, s in enumerate(self.carrier)})


def barycentric_subdivision(K: SimplicialComplex) -> Subdivision:
    order = K.simplices()
    vertex_of = {s: i for i, s in enumerate(order)}

    flags: list[Simplex] = []

    @lru_cache(maxsize=None)
    def flags_ending(s: Simplex) -> tuple:
        out = [(vertex_of[s],)]
        for f in faces(s):
            if f != s:
                out.extend(fl + (vertex_of[s],) for fl in flags_ending(f))
        return tuple(out)

    for s in order:
        flags.extend(flags_ending(s))
    sdK = SimplicialComplex(flags, name=f"sd({K.name})" if K.name else "")

    @lru_cache(maxsize=None)
    def sd_simplex(s: Simplex) -> tuple:
        # cone on sd of the boundary with the barycenter first, then moved to the end
        if len(s) == 1:
            return (((vertex_of[s],), 1),)
        b = vertex_of[s]
        move = (-1) ** (len(s) - 1)
        acc: dict = {}
        for face, c in simplex_boundary(s).items():
            for piece, d in sd_simplex(face):
                key = piece + (b,)
                acc[key] = acc.get(key, 0) + c * d * move
        return tuple((k, v) for k, v in sorted(acc.items()) if v)

    def on_cell(s):
        return dict(sd_simplex(tuple(s)))

    approx = SimplicialMap(sdK, K, {i: s[-1] for i, s in enumerate(order)})
    return Subdivision(K, sdK, tuple(order), vertex_of, ChainMap(on_cell, Ring.Z), approx)


def sd_chain(sub: Subdivision, chain: Chain) -> Chain:
    """Apply sd# to a chain, keeping its ring."""
    return ChainMap(sub.chain_map.on_cell, chain.ring)(chain)
