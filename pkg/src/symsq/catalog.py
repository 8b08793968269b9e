"""Small named complexes and maps used by the checks, the CLI and the tests."""
from __future__ import annotations

from itertools import combinations, product

from .complex import SimplicialComplex, SimplicialMap, build_complex


def point() -> SimplicialComplex:
    return build_complex([[0]], "point")


def s0() -> SimplicialComplex:
    return build_complex([[0], [1]], "S0")


def cycle(n: int, offset: int = 0, name: str = "") -> SimplicialComplex:
    return build_complex([[offset + i, offset + (i + 1) % n] for i in range(n)], name or f"C{n}")


def hexagon() -> SimplicialComplex:
    return cycle(6, name="hexagon")


def triangle() -> SimplicialComplex:
    """The hollow triangle (boundary of a 2-simplex)."""
    return cycle(3, name="triangle")


def two_hexagons() -> SimplicialComplex:
    return build_complex([[o + i, o + (i + 1) % 6] for o in (0, 6) for i in range(6)], "two-hexagons")


def solid_triangle() -> SimplicialComplex:
    return build_complex([[0, 1, 2]], "solid-triangle")


def octahedron() -> SimplicialComplex:
    """Boundary of the 3-dimensional cross-polytope; antipodal pairs (0,1), (2,3), (4,5)."""
    return build_complex([list(f) for f in product((0, 1), (2, 3), (4, 5))], "octahedron")


def rp2() -> SimplicialComplex:
    """The minimal 6-vertex triangulation of the real projective plane."""
    facets = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
              (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    return build_complex(facets, "RP2")


def simplex_boundary_complex(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex, a triangulated (n-1)-sphere."""
    return build_complex([list(f) for f in combinations(range(n + 1), n)], f"dSimplex{n}")


def cylinder() -> SimplicialComplex:
    """Hexagon x interval as a triangulated prism; bottom ring 0..5, top ring 6..11."""
    facets = []
    for i in range(6):
        j = (i + 1) % 6
        facets += [[i, j, i + 6], [j, i + 6, j + 6]]
    return build_complex(facets, "cylinder")


def wedge_of_triangles() -> SimplicialComplex:
    """Two solid triangles glued at one vertex."""
    return build_complex([[0, 1, 2], [0, 3, 4]], "bowtie")


def capped_octahedron(caps=(0, 7)) -> SimplicialComplex:
    """The octahedron with a tetrahedron glued onto each listed facet (still a 2-sphere up to homotopy)."""
    facets = [list(f) for f in octahedron().facets()]
    tets = []
    for n, i in enumerate(caps):
        tets.append(list(facets[i]) + [6 + n])
    return build_complex(facets + tets, "capped-octahedron")


def capped_hexagon(edges=(0, 1, 2)) -> SimplicialComplex:
    """The hexagon with a solid triangle over each listed edge, all sharing apex 6 (a circle up to homotopy)."""
    facets = [[i, (i + 1) % 6] for i in range(6)]
    facets += [[i, (i + 1) % 6, 6] for i in edges]
    return build_complex(facets, "capped-hexagon")


def rotation(K: SimplicialComplex | None = None, n: int = 6, step: int = 1) -> SimplicialMap:
    K = K or cycle(n)
    return SimplicialMap(K, K, {i: (i + step) % n for i in range(n)})


def double_wrap() -> SimplicialMap:
    """The hexagon wrapped twice around the hollow triangle."""
    return SimplicialMap(hexagon(), triangle(), {i: i % 3 for i in range(6)})


def constant_map(K: SimplicialComplex, target: SimplicialComplex, vertex: int = 0) -> SimplicialMap:
    return SimplicialMap(K, target, {v: vertex for v in K.vertices})


NAMED = {
    "point": point,
    "S0": s0,
    "hexagon": hexagon,
    "triangle": triangle,
    "two-hexagons": two_hexagons,
    "solid-triangle": solid_triangle,
    "octahedron": octahedron,
    "RP2": rp2,
    "cylinder": cylinder,
    "bowtie": wedge_of_triangles,
    "capped-octahedron": capped_octahedron,
    "capped-hexagon": capped_hexagon,
}
