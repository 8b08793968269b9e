"""Sparse chains, finite chain complexes and chain maps over Z or Z/2."""
from __future__ import annotations

import enum
from typing import Callable, Hashable, Iterable, Mapping

from .errors import MalformedInputError


class Ring(enum.Enum):
    Z = "Z"
    Z2 = "Z2"

    def reduce(self, c: int) -> int:
        return c & 1 if self is Ring.Z2 else c

    @classmethod
    def parse(cls, value) -> "Ring":
        if isinstance(value, Ring):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise MalformedInputError(f"unknown ring {value!r}; expected 'Z' or 'Z2'") from None


Cell = Hashable


class Chain:
    """A finite formal sum of cells of one degree.

    Zero coefficients are never stored.  Over Z2 coefficients are reduced to bits.
    """

    __slots__ = ("degree", "ring", "terms")

    def __init__(self, degree: int, terms: Mapping[Cell, int] | None = None, ring: Ring = Ring.Z):
        self.degree = degree
        self.ring = ring
        clean = {}
        if terms:
            for cell, c in terms.items():
                c = ring.reduce(c)
                if c:
                    clean[cell] = c
        self.terms = clean

    @classmethod
    def from_terms(cls, degree: int, pairs: Iterable[tuple[int, Cell]], ring: Ring = Ring.Z) -> "Chain":
        acc: dict = {}
        for c, cell in pairs:
            acc[cell] = acc.get(cell, 0) + c
        return cls(degree, acc, ring)

    @classmethod
    def zero(cls, degree: int, ring: Ring = Ring.Z) -> "Chain":
        return cls(degree, None, ring)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, cell) -> int:
        return self.terms.get(cell, 0)

    def _check(self, other: "Chain"):
        if other.ring is not self.ring:
            raise MalformedInputError(f"ring mismatch: {self.ring.value} vs {other.ring.value}")
        if other.degree != self.degree:
            raise MalformedInputError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        acc = dict(self.terms)
        for cell, c in other.terms.items():
            acc[cell] = acc.get(cell, 0) + c
        return Chain(self.degree, acc, self.ring)

    def __neg__(self) -> "Chain":
        return Chain(self.degree, {k: -v for k, v in self.terms.items()}, self.ring)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, scalar: int) -> "Chain":
        return Chain(self.degree, {k: scalar * v for k, v in self.terms.items()}, self.ring)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.degree == other.degree and self.ring is other.ring and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"{c}*{cell}" for cell, c in self) or "0"
        return f"Chain[{self.degree}, {self.ring.value}]({body})"


class ChainComplex:
    """A finite free chain complex with a fixed ordered cell basis per degree.

    ``boundary`` maps a cell to its boundary as ``{face: coefficient}``.  Faces that are
    not basis cells of the complex are dropped, which is how relative complexes
    (quotients by a subcomplex) are realised.  Boundary columns are built lazily
    per degree and cached.
    """

    def __init__(self, basis: Mapping[int, Iterable[Cell]], boundary: Callable[[Cell], Mapping[Cell, int]],
                 ring: Ring = Ring.Z, name: str = ""):
        self.ring = ring
        self.name = name
        self._basis = {}
        self._index = {}
        for k, cells in basis.items():
            cells = tuple(sorted(set(cells)))
            if cells:
                self._basis[k] = cells
                self._index[k] = {c: i for i, c in enumerate(cells)}
        self._boundary_fn = boundary
        self._columns: dict[int, list[dict[int, int]]] = {}
        self.cache: dict = {}

    @property
    def degrees(self) -> list[int]:
        return sorted(self._basis)

    @property
    def top_degree(self) -> int:
        return max(self._basis, default=-1)

    def basis(self, k: int) -> tuple:
        return self._basis.get(k, ())

    def rank(self, k: int) -> int:
        return len(self._basis.get(k, ()))

    def size(self) -> int:
        return sum(len(b) for b in self._basis.values())

    def index(self, k: int) -> dict:
        return self._index.get(k, {})

    def contains(self, cell, k: int) -> bool:
        return cell in self._index.get(k, ())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(b) for k, b in self._basis.items())

    def raw_boundary(self, cell) -> Mapping[Cell, int]:
        return self._boundary_fn(cell)

    def boundary_columns(self, k: int) -> list[dict[int, int]]:
        """Column j holds the boundary of basis cell j of degree k, in degree-(k-1) indices."""
        cols = self._columns.get(k)
        if cols is None:
            rows = self._index.get(k - 1, {})
            ring = self.ring
            cols = []
            for cell in self.basis(k):
                col = {}
                for face, c in self._boundary_fn(cell).items():
                    i = rows.get(face)
                    if i is not None:
                        col[i] = col.get(i, 0) + c
                col = {i: ring.reduce(c) for i, c in col.items() if ring.reduce(c)}
                cols.append(col)
            self._columns[k] = cols
        return cols

    def boundary_matrix(self, k: int) -> list[list[int]]:
        """Dense matrix of the boundary map from degree k to degree k-1."""
        m, n = self.rank(k - 1), self.rank(k)
        mat = [[0] * n for _ in range(m)]
        for j, col in enumerate(self.boundary_columns(k)):
            for i, c in col.items():
                mat[i][j] = c
        return mat

    def restrict(self, chain: Chain) -> Chain:
        """Drop the cells that are not basis cells (projection onto the relative chains)."""
        idx = self._index.get(chain.degree, {})
        return Chain(chain.degree, {c: v for c, v in chain.terms.items() if c in idx}, self.ring)

    def boundary(self, chain: Chain) -> Chain:
        acc: dict = {}
        for cell, c in chain.terms.items():
            for face, d in self._boundary_fn(cell).items():
                acc[face] = acc.get(face, 0) + c * d
        return self.restrict(Chain(chain.degree - 1, acc, self.ring))

    def is_cycle(self, chain: Chain) -> bool:
        return not self.boundary(chain)

    def to_vector(self, chain: Chain) -> dict[int, int]:
        idx = self._index.get(chain.degree, {})
        vec = {}
        for cell, c in chain.terms.items():
            i = idx.get(cell)
            if i is None:
                raise MalformedInputError(f"cell {cell!r} is not a degree-{chain.degree} basis cell")
            vec[i] = c
        return vec

    def from_vector(self, k: int, vec: Mapping[int, int]) -> Chain:
        cells = self.basis(k)
        return Chain(k, {cells[i]: c for i, c in vec.items()}, self.ring)

    def __repr__(self):
        dims = ", ".join(f"{k}:{len(b)}" for k, b in sorted(self._basis.items()))
        return f"ChainComplex({self.name or '?'}, {self.ring.value}, cells={{{dims}}})"


class ChainMap:
    """A linear map on chains given by its value on single cells.

    ``on_cell`` returns ``{image_cell: coefficient}`` for one source cell.  When a target
    complex is given, image cells outside its basis are dropped.
    """

    def __init__(self, on_cell: Callable[[Cell], Mapping[Cell, int]], ring: Ring,
                 target: ChainComplex | None = None, shift: int = 0):
        self.on_cell = on_cell
        self.ring = ring
        self.target = target
        self.shift = shift

    def __call__(self, chain: Chain) -> Chain:
        acc: dict = {}
        for cell, c in chain.terms.items():
            for img, d in self.on_cell(cell).items():
                acc[img] = acc.get(img, 0) + c * d
        out = Chain(chain.degree + self.shift, acc, self.ring)
        if self.target is not None:
            out = self.target.restrict(out)
        return out

    def then(self, other: "ChainMap") -> "ChainMap":
        """The composite ``other o self``."""
        def on_cell(cell):
            acc: dict = {}
            for img, c in self.on_cell(cell).items():
                if self.target is not None and not self.target.contains(img, cell_degree(img)):
                    continue
                for img2, d in other.on_cell(img).items():
                    acc[img2] = acc.get(img2, 0) + c * d
            return {k: v for k, v in acc.items() if self.ring.reduce(v)}
        return ChainMap(on_cell, self.ring, other.target, self.shift + other.shift)


def cell_degree(cell) -> int:
    """Dimension of a simplex ``(v0, ..., vk)`` or of a tensor cell ``(s1, s2, ...)``."""
    if cell and isinstance(cell[0], tuple):
        return sum(len(s) - 1 for s in cell)
    return len(cell) - 1
