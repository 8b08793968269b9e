"""Pseudomanifold recognition, orientations and fundamental cycles."""
from __future__ import annotations

from dataclasses import dataclass, field

from .chains import Chain, ChainComplex, Ring
from .complex import SimplicialComplex, Subcomplex, simplex_boundary
from .errors import OrientationError, StructureError


@dataclass
class PseudomanifoldReport:
    dim: int
    pure: bool
    ridge_ok: bool
    strongly_connected: bool
    components: list[tuple] = field(repr=False)
    boundary: Subcomplex = field(repr=False)

    @property
    def is_pseudomanifold(self) -> bool:
        """Pure with every ridge in at most two facets (components are handled separately)."""
        return self.pure and self.ridge_ok


def _ridge_map(facets) -> dict:
    ridges: dict = {}
    for f in facets:
        for r in simplex_boundary(f):
            ridges.setdefault(r, []).append(f)
    return ridges


def _components(facets, ridges) -> list[tuple]:
    seen, comps = set(), []
    for f in facets:
        if f in seen:
            continue
        stack, comp = [f], []
        seen.add(f)
        while stack:
            g = stack.pop()
            comp.append(g)
            for r in simplex_boundary(g):
                for h in ridges[r]:
                    if h not in seen:
                        seen.add(h)
                        stack.append(h)
        comps.append(tuple(sorted(comp)))
    return comps


def analyze(K: SimplicialComplex) -> PseudomanifoldReport:
    facets = K.facets()
    n = K.dim
    pure = all(len(f) - 1 == n for f in facets)
    top = K.simplices(n)
    ridges = _ridge_map(top) if n > 0 else {}
    ridge_ok = all(len(v) <= 2 for v in ridges.values())
    comps = _components(top, ridges) if n > 0 else [(f,) for f in top]
    free = [r for r, v in ridges.items() if len(v) == 1]
    boundary = Subcomplex.from_facets(K, free)
    return PseudomanifoldReport(n, pure, ridge_ok, len(comps) == 1, comps, boundary)


@dataclass
class Orientation:
    signs: dict
    witness: list | None = None

    @property
    def orientable(self) -> bool:
        return self.witness is None


def _propagate(cells, cofaces_of_face, incidence, seed_order):
    """Coherent +-1 signs on top cells across faces with exactly two cofaces.

    ``incidence(cell)`` gives ``{face: coef}``.  Returns (signs, witness); the witness is
    the pair of cells meeting with inconsistent signs, or None.
    """
    signs: dict = {}
    for seed in seed_order:
        if seed in signs:
            continue
        signs[seed] = 1
        stack = [seed]
        while stack:
            a = stack.pop()
            for face, ca in incidence(a).items():
                for b in cofaces_of_face.get(face, ()):
                    if b == a:
                        continue
                    cb = incidence(b)[face]
                    want = -signs[a] * ca * cb  # ca, cb are +-1
                    if b not in signs:
                        signs[b] = want
                        stack.append(b)
                    elif signs[b] != want:
                        return signs, [a, b, face]
    return signs, None


def orient(K: SimplicialComplex, seed=None) -> Orientation:
    """Propagate facet signs depth-first from ``seed`` (default: the first facet of each component)."""
    rep = analyze(K)
    if not rep.is_pseudomanifold:
        raise StructureError(f"{K.name or 'complex'} is not a pseudomanifold "
                             f"(pure={rep.pure}, ridges ok={rep.ridge_ok})")
    top = K.simplices(K.dim)
    ridges = _ridge_map(top) if K.dim > 0 else {}
    order = list(top)
    if seed is not None:
        seed = tuple(seed)
        order.remove(seed)
        order.insert(0, seed)
    signs, witness = _propagate(order, ridges, simplex_boundary, order)
    return Orientation(signs, witness)


def fundamental_cycle(K: SimplicialComplex, ring: Ring = Ring.Z, relative: bool | None = None) -> Chain:
    """Signed (Z) or plain (Z2) sum of facets; a cycle of C(K) or of C(K, boundary).

    Disconnected pseudomanifolds get the sum of the component cycles.
    """
    rep = analyze(K)
    if not rep.is_pseudomanifold:
        raise StructureError(f"{K.name or 'complex'} is not a pseudomanifold "
                             f"(pure={rep.pure}, ridges ok={rep.ridge_ok})")
    has_boundary = len(rep.boundary) > 0
    if relative is None:
        relative = has_boundary
    if has_boundary and not relative:
        raise StructureError("the complex has nonempty boundary; only a relative fundamental cycle exists")
    top = K.simplices(K.dim)
    if ring is Ring.Z2:
        return Chain(K.dim, {f: 1 for f in top}, ring)
    o = orient(K)
    if not o.orientable:
        raise OrientationError(f"{K.name or 'complex'} is not orientable; no integral fundamental class",
                               o.witness)
    return Chain(K.dim, dict(o.signs), ring)


def coherent_top_cycle(C: ChainComplex, n: int | None = None) -> tuple[Chain, list[list]]:
    """The fundamental cycle of a cellular pseudomanifold given by its chain complex.

    Every (n-1)-cell must have exactly zero or two cofaces, each with incidence +-1;
    otherwise the top cells do not form a closed (relative) pseudomanifold.  Signs are
    propagated across shared faces from the first cell of each component.  Returns the
    cycle and the components (lists of top cells).
    """
    n = C.top_degree if n is None else n
    top = C.basis(n)
    faces = C.basis(n - 1)
    cols = C.boundary_columns(n)
    incid = {cell: {faces[i]: c for i, c in col.items()} for cell, col in zip(top, cols)}
    cofaces: dict = {}
    for cell, inc in incid.items():
        for face, c in inc.items():
            if C.ring is Ring.Z and abs(c) != 1:
                raise StructureError(f"face {face!r} has incidence {c} with {cell!r}")
            cofaces.setdefault(face, []).append(cell)
    bad = [f for f, cs in cofaces.items() if len(cs) != 2]
    if bad:
        raise StructureError(f"{len(bad)} codimension-one cells do not have exactly two cofaces, "
                             f"e.g. {bad[0]!r}")
    if C.ring is Ring.Z2:
        signs = {c: 1 for c in top}
    else:
        signs, witness = _propagate(top, cofaces, incid.__getitem__, top)
        if witness is not None:
            raise OrientationError("the top cells admit no coherent orientation", witness)
    return Chain(n, signs, C.ring), _cell_components(top, incid, cofaces)


def _cell_components(top, incid, cofaces) -> list[list]:
    seen, comps = set(), []
    for c in top:
        if c in seen:
            continue
        seen.add(c)
        stack, comp = [c], []
        while stack:
            a = stack.pop()
            comp.append(a)
            for face in incid[a]:
                for b in cofaces[face]:
                    if b not in seen:
                        seen.add(b)
                        stack.append(b)
        comps.append(comp)
    return comps
