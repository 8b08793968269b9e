"""Homology groups of finite chain complexes, with representatives and coordinates."""
from __future__ import annotations

from dataclasses import dataclass, field

from .chains import Chain, ChainComplex, Ring
from .errors import NotACycleError
from .snf import Elimination, invariant_factors


def _mod(C: ChainComplex):
    return 2 if C.ring is Ring.Z2 else None


@dataclass
class HomologyResult:
    """H_k of a chain complex.

    ``generators[i]`` is a cycle whose class has order ``orders[i]`` (0 = infinite).
    Free generators come first.  ``torsion`` is the normalised divisibility chain;
    ``orders`` is the (equivalent) decomposition the coordinates refer to.
    """

    complex: ChainComplex = field(repr=False)
    degree: int
    betti: int
    torsion: list[int]
    generators: list[Chain] = field(repr=False)
    orders: list[int] = field(repr=False)
    _cycles: Elimination | None = field(default=None, repr=False)
    _classes: Elimination | None = field(default=None, repr=False)
    _rows: list[int] = field(default_factory=list, repr=False)

    def coordinates(self, z: Chain) -> tuple[list[int], list[int]]:
        """(free coordinates, torsion coordinates reduced mod their orders) of a cycle."""
        C = self.complex
        b = C.boundary(z)
        if b:
            raise NotACycleError(f"chain is not a cycle in degree {self.degree}", b)
        if not self.generators:
            return [], []
        vec = self._cycles.apply_cols_inverse(C.to_vector(z)) if self._cycles else C.to_vector(z)
        y = self._classes.apply_rows(vec) if self._classes else vec
        free, tors = [], []
        for r, order in zip(self._rows, self.orders):
            c = y.get(r, 0)
            if order:
                tors.append(c % order)
            else:
                free.append(c % 2 if C.ring is Ring.Z2 else c)
        return free, tors

    def is_zero(self, z: Chain) -> bool:
        free, tors = self.coordinates(z)
        return not any(free) and not any(tors)


def homology(C: ChainComplex, k: int) -> HomologyResult:
    key = ("homology", k)
    if key in C.cache:
        return C.cache[key]
    mod = _mod(C)
    n_k = C.rank(k)
    if n_k == 0:
        res = HomologyResult(C, k, 0, [], [], [])
        C.cache[key] = res
        return res

    # Column-reduce the outgoing boundary; the incoming boundary follows as Q^-1 d_{k+1}.
    incoming = [dict() for _ in range(n_k)]
    for j, col in enumerate(C.boundary_columns(k + 1)):
        for i, v in col.items():
            incoming[i][j] = v
    cyc = Elimination(C.boundary_columns(k), C.rank(k - 1), mod, log_cols=True, partner=incoming).run()
    pivot_cols = {c for _, c, _ in cyc.pivots}
    cycle_rows = [i for i in range(n_k) if i not in pivot_cols]

    m_cols: list[dict[int, int]] = [dict() for _ in range(C.rank(k + 1))]
    for i in cycle_rows:
        for j, v in incoming[i].items():
            m_cols[j][i] = v
    cls = Elimination(m_cols, n_k, mod, log_rows=True).run()
    pivot_order = {r: abs(d) for r, _, d in cls.pivots}

    free_rows = [r for r in cycle_rows if r not in pivot_order]
    tors_rows = [r for r in cycle_rows if pivot_order.get(r, 1) > 1]
    rows = free_rows + tors_rows
    orders = [0] * len(free_rows) + [pivot_order[r] for r in tors_rows]
    gens = []
    for r in rows:
        vec = cyc.apply_cols(cls.apply_rows_inverse({r: 1}))
        gens.append(C.from_vector(k, vec))
    res = HomologyResult(C, k, len(free_rows), invariant_factors(orders[len(free_rows):]), gens, orders,
                         cyc, cls, rows)
    C.cache[key] = res
    return res


def rank(C: ChainComplex, k: int) -> int:
    """Rank of the boundary map out of degree k."""
    key = ("rank", k)
    if key not in C.cache:
        el = Elimination(C.boundary_columns(k), C.rank(k - 1), _mod(C)).run()
        C.cache[key] = el.rank
    return C.cache[key]


def betti_numbers(C: ChainComplex, degrees=None) -> dict[int, int]:
    """Betti numbers (over the complex's ring: ranks mod torsion for Z, dimensions for Z2)."""
    if degrees is None:
        degrees = range(C.top_degree + 1)
    return {k: C.rank(k) - rank(C, k) - rank(C, k + 1) for k in degrees}


def _boundary_solver(C: ChainComplex, k: int) -> Elimination:
    key = ("solver", k)
    if key not in C.cache:
        C.cache[key] = Elimination(C.boundary_columns(k + 1), C.rank(k), _mod(C), log_rows=True).run()
    return C.cache[key]


def is_boundary(C: ChainComplex, z: Chain) -> bool:
    """True iff z lies in the image of the boundary map into its degree."""
    z = C.restrict(z)
    if not z:
        return True
    k = z.degree
    el = _boundary_solver(C, k)
    y = el.apply_rows(C.to_vector(z))
    pivots = {r: d for r, _, d in el.pivots}
    for r, v in y.items():
        d = pivots.get(r)
        if d is None or v % d:
            return False
    return True


def _require_cycle(C: ChainComplex, z: Chain, what: str):
    b = C.boundary(z)
    if b:
        raise NotACycleError(f"{what} is not a cycle: its boundary has {len(b)} terms", b)


def classes_equal(C: ChainComplex, k: int, z1: Chain, z2: Chain) -> bool:
    """True iff z1 - z2 is a boundary in C (both must be degree-k cycles)."""
    for z in (z1, z2):
        if z.degree != k:
            raise NotACycleError(f"expected a degree-{k} chain, got degree {z.degree}")
    z1, z2 = C.restrict(z1), C.restrict(z2)
    _require_cycle(C, z1, "first chain")
    _require_cycle(C, z2, "second chain")
    return is_boundary(C, z1 - z2)


def classes_equal_up_to_sign(C: ChainComplex, k: int, z1: Chain, z2: Chain) -> bool:
    return classes_equal(C, k, z1, z2) or classes_equal(C, k, z1, -z2)
