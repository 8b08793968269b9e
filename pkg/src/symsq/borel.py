"""A finite Borel construction (X x X x S^N)/Z2 and its comparison with the symmetric square.

The sphere is the boundary of the (N+1)-dimensional cross-polytope: vertex 2i is +e_i,
vertex 2i+1 is -e_i, and the antipode flips the last bit.  The antipode keeps the
vertex order of every simplex, so the involution (s, t, r) -> (t, s, -r) only picks up
the Koszul sign (-1)^{dim s * dim t}.  It never fixes a cell because no simplex of the
sphere equals its antipode.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .chains import ChainComplex, Ring
from .complex import SimplicialComplex, SimplicialMap, Subcomplex, build_complex
from .errors import MalformedInputError, ResourceGuardError
from .homology import betti_numbers
from .product import Tower, _vertex_reach, cell_cap, tau_sign, tensor_boundary


@dataclass
class EquivariantSphere:
    N: int
    complex: SimplicialComplex
    involution: SimplicialMap = field(repr=False)

    def antipode(self, simplex: tuple) -> tuple:
        return tuple(v ^ 1 for v in simplex)


def antipodal_sphere(N: int) -> EquivariantSphere:
    if N < 0:
        raise MalformedInputError("sphere dimension must be non-negative")
    facets = [list(f) for f in product(*[(2 * i, 2 * i + 1) for i in range(N + 1)])]
    S = build_complex(facets, f"S{N}")
    return EquivariantSphere(N, S, SimplicialMap(S, S, {v: v ^ 1 for v in S.vertices}))


class BorelPairComplex:
    """Orbit chain complex of triple cells (s, t, r), relative to the diagonal neighbourhood.

    With ``relative=False`` the complex is the whole orbit complex; otherwise cells
    whose first two factors touch (or lie in A) are divided out, crossed with the
    full sphere.
    """

    def __init__(self, X: SimplicialComplex, N: int, ring: Ring = Ring.Z2, relative: bool = True,
                 A: Subcomplex | None = None, cap: int | None = None):
        self.X, self.A, self.ring, self.relative = X, A, ring, relative
        self.sphere = antipodal_sphere(N)
        S = self.sphere.complex
        cap = cell_cap() if cap is None else cap
        total = len(X) ** 2 * len(S)
        if total > cap:
            raise ResourceGuardError(f"Borel complex needs {total} triple cells, above the cap {cap}")
        self.triple_cells = total
        self.reach = _vertex_reach(X)
        self._a = A.simplices if A is not None else frozenset()
        basis: dict[int, list] = {}
        fixed = 0
        for s in X.simplices():
            for t in X.simplices():
                if relative and self._touches(s, t):
                    continue
                for r in S.simplices():
                    cell = (s, t, r)
                    partner = (t, s, self.sphere.antipode(r))
                    if partner == cell:
                        fixed += 1
                    elif cell < partner:
                        basis.setdefault(len(s) + len(t) + len(r) - 3, []).append(cell)
        self.fixed_cells = fixed
        self.complex = ChainComplex(basis, self._orbit_boundary, ring, name=f"Borel({X.name}, S{N})")

    def _touches(self, s, t) -> bool:
        return s in self._a or t in self._a or bool(self.reach[s] & self.reach[t])

    def project_cell(self, cell) -> dict:
        s, t, r = cell
        if self.relative and self._touches(s, t):
            return {}
        partner = (t, s, self.sphere.antipode(r))
        if cell < partner:
            return {cell: 1}
        return {partner: tau_sign(len(s) - 1, len(t) - 1)}

    def _orbit_boundary(self, rep) -> dict:
        out: dict = {}
        for face, c in tensor_boundary(rep).items():
            for img, d in self.project_cell(face).items():
                out[img] = out.get(img, 0) + c * d
        return out

    @property
    def is_free(self) -> bool:
        return self.fixed_cells == 0


def borel_pair(X: SimplicialComplex, N: int, ring: Ring = Ring.Z2, relative: bool = True,
               A: Subcomplex | None = None, cap: int | None = None) -> BorelPairComplex:
    return BorelPairComplex(X, N, ring, relative, A, cap)


def borel_compare(X: SimplicialComplex, N: int, degrees, level: int = 0, A: Subcomplex | None = None,
                  cap: int | None = None) -> dict:
    """Z2 Betti numbers of the Borel pair and of the symmetric-square pair, per degree.

    Both sides are built on the level-``level`` subdivision.  The symmetric-square side
    is also computed one level finer to report stabilization.  Degrees above N - 1 lie
    outside the range where the finite sphere approximates the infinite one; they are
    still computed and flagged unreliable.
    """
    degrees = sorted({int(d) for d in degrees})
    if any(d < 0 for d in degrees):
        raise MalformedInputError("degrees must be non-negative")
    tower = Tower(X, A, Ring.Z2, cap)
    Xm, Am = tower.space(level)
    B = BorelPairComplex(Xm, N, Ring.Z2, True, Am, cap)
    borel = betti_numbers(B.complex, degrees)
    sys_here = betti_numbers(tower.level(level).quotient.complex, degrees)
    sys_finer = betti_numbers(tower.level(level + 1).quotient.complex, degrees)
    rows = []
    for d in degrees:
        rows.append({"degree": d, "borel": borel[d], "sys": sys_here[d], "sys_finer": sys_finer[d],
                     "equal": borel[d] == sys_here[d], "stable": sys_here[d] == sys_finer[d],
                     "reliable": d <= N - 1})
    return {
        "level": level, "sphere": N, "degrees": rows, "free": B.is_free,
        "borel_cells": B.complex.size(), "triple_cells": B.triple_cells,
        "result": all(r["equal"] for r in rows),
        "unreliable_degrees": [r["degree"] for r in rows if not r["reliable"]],
    }
