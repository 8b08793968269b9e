"""Symmetric squaring of relative cycles and the checks of its homological properties.

For a relative cycle z = sum g_i s_i (simplices in canonical order) the symmetric
square is sum_{i<j} g_i g_j pr(s_i (x) s_j) in the quotient pair complex.  Over Z the
swap acts on s (x) t with sign (-1)^k for k-simplices, so only even k is allowed.

Every check returns a ``CheckReport``; it is truthy iff the check passed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .chains import Chain, Ring
from .complex import SimplicialComplex, SimplicialMap, Subcomplex, canonical_simplex, relative_complex
from .errors import MalformedInputError, NotACycleError, ParityError, StructureError
from .homology import HomologyResult, classes_equal, homology, is_boundary
from .manifolds import analyze, coherent_top_cycle, fundamental_cycle
from .product import QuotientPairComplex, Tower, cross_chain, quotient_map

SCHEMA = 1


@dataclass
class CheckReport:
    check: str
    level: int
    result: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.result)

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "check": self.check, "level": self.level,
                "result": bool(self.result), "details": self.details}


def check_parity(ring: Ring, k: int):
    if ring is Ring.Z and k % 2:
        raise ParityError(k)


def _merge(terms: Iterable[tuple[int, Sequence[int]]], ring: Ring) -> list[tuple[int, tuple]]:
    """Canonicalise ``[(coef, simplex)]`` keeping the order; repeats merge at their first position."""
    merged: dict = {}
    for c, s in terms:
        s = canonical_simplex(s)
        merged[s] = merged.get(s, 0) + c
    return [(ring.reduce(c), s) for s, c in merged.items() if ring.reduce(c)]


def _require_relative_cycle(Q: QuotientPairComplex, z: Chain):
    C = relative_complex(Q.X, Q.A, z.ring)
    b = C.boundary(z)
    if b:
        raise NotACycleError(f"chain is not a relative cycle: its boundary has {len(b)} terms outside A", b)


def sym_square_terms(terms: Sequence[tuple[int, Sequence[int]]], Q: QuotientPairComplex,
                     ring: Ring | None = None, degree: int | None = None) -> Chain:
    """The symmetric square of the cycle given by ``terms``, pairing them in the given order.

    ``degree`` is only needed to type an empty term list.
    """
    ring = ring or Q.ring
    if ring is not Q.ring:
        raise MalformedInputError(f"ring mismatch: chain over {ring.value}, quotient over {Q.ring.value}")
    terms = list(terms)
    degrees = {len(s) - 1 for _, s in terms} | ({degree} if degree is not None else set())
    if len(degrees) > 1:
        raise MalformedInputError(f"terms of mixed degrees {sorted(degrees)}")
    k = degrees.pop() if degrees else 0
    check_parity(ring, k)
    terms = _merge(terms, ring)
    if not terms:
        return Chain.zero(2 * k, ring)
    for _, s in terms:
        if s not in Q.X:
            raise MalformedInputError(f"{s} is not a simplex of {Q.X.name or 'the complex'}")
    z = Chain(k, {s: c for c, s in terms}, ring)
    _require_relative_cycle(Q, z)
    acc: dict = {}
    for i, (gi, si) in enumerate(terms):
        for gj, sj in terms[i + 1:]:
            for cell, d in Q.project_cell((si, sj)).items():
                acc[cell] = acc.get(cell, 0) + gi * gj * d
    out = Chain(2 * k, acc, ring)
    b = Q.complex.boundary(out)
    if b:
        raise NotACycleError(f"the symmetric square is not a cycle of the quotient ({len(b)} boundary terms)", b)
    return out


def sym_square_chain(z: Chain, Q: QuotientPairComplex) -> Chain:
    """sum_{i<j} g_i g_j pr(s_i (x) s_j) over the terms of z in canonical simplex order."""
    return sym_square_terms([(c, s) for s, c in z], Q, z.ring, z.degree)


@dataclass
class SymSquareClass:
    chain: Chain
    homology: HomologyResult = field(repr=False)

    @property
    def degree(self) -> int:
        return self.chain.degree

    def coordinates(self) -> tuple[list[int], list[int]]:
        return self.homology.coordinates(self.chain)

    def is_zero(self) -> bool:
        return self.homology.is_zero(self.chain)


def sym_square_class(z: Chain, Q: QuotientPairComplex) -> SymSquareClass:
    chain = sym_square_chain(z, Q)
    return SymSquareClass(chain, homology(Q.complex, 2 * z.degree))


def full_square(z: Chain, Q: QuotientPairComplex) -> Chain:
    """pr(z x z), the projected cross square."""
    return Q.project(cross_chain(z, z))


def half_square_check(z: Chain, Q: QuotientPairComplex) -> CheckReport:
    """Over Z: 2 sys(z) ~ pr(z x z).  Over Z2: pr(z x z) ~ 0."""
    s = sym_square_chain(z, Q)
    square = full_square(z, Q)
    k2 = 2 * z.degree
    C = Q.complex
    if z.ring is Ring.Z:
        ok = classes_equal(C, k2, s * 2, square)
        relation = "2*sys(z) ~ pr(z x z)"
    else:
        if C.boundary(square):
            raise NotACycleError("pr(z x z) is not a cycle of the quotient", C.boundary(square))
        ok = is_boundary(C, square)
        relation = "pr(z x z) ~ 0"
    return CheckReport("half-square", 0, ok, {
        "ring": z.ring.value, "degree": z.degree, "relation": relation,
        "sys_terms": len(s), "square_terms": len(square),
        "chain_level_equal": (s * 2 == square) if z.ring is Ring.Z else not square,
    })


def well_definedness_check(z: Chain, w: Chain, X: SimplicialComplex, A: Subcomplex | None = None,
                           levels: int = 1, tower: Tower | None = None) -> CheckReport:
    """Compare sys(z) and sys(z + dw) at tower levels 0..levels.

    The chains are pushed to finer levels by sd#.  ``stabilized_at`` is the first level
    from which the two classes agree at every computed level; at each level above 0 the
    report also records whether the comparison map carries the finer class of sys(z)
    onto the coarser one.
    """
    ring = z.ring
    if w.ring is not ring:
        raise MalformedInputError("z and w must share a ring")
    if w and w.degree != z.degree + 1:
        raise MalformedInputError(f"w must have degree {z.degree + 1}, got {w.degree}")
    check_parity(ring, z.degree)
    tower = tower or Tower(X, A, ring)
    z2 = z + relative_complex(X, A, ring).boundary(w) if w else z
    per_level = []
    previous = None
    for m in range(levels + 1):
        lvl = tower.level(m)
        zm, z2m = tower.lift(z, m), tower.lift(z2, m)
        s1, s2 = sym_square_chain(zm, lvl.quotient), sym_square_chain(z2m, lvl.quotient)
        C = lvl.quotient.complex
        entry = {"level": m, "equal": classes_equal(C, 2 * z.degree, s1, s2),
                 "chain_equal": s1 == s2, "quotient_cells": C.size()}
        if previous is not None:
            down = tower.comparison(m - 1)(s1)
            entry["compatible"] = classes_equal(tower.level(m - 1).quotient.complex, 2 * z.degree, down, previous)
        previous = s1
        per_level.append(entry)
    stabilized = None
    for m in range(levels, -1, -1):
        if not per_level[m]["equal"]:
            break
        stabilized = m
    ok = stabilized is not None and all(e.get("compatible", True) for e in per_level)
    return CheckReport("well-defined", levels, ok, {
        "ring": ring.value, "degree": z.degree, "levels": per_level, "stabilized_at": stabilized,
        "perturbation_terms": len(z2 - z),
    })


def _subdivided_map(f: SimplicialMap, source: Tower, target: Tower, m: int) -> SimplicialMap:
    g = f
    for i in range(m):
        g = source.subdivision(i).subdivide_map(g, target.subdivision(i))
    return g


def naturality_check(g: SimplicialMap, z: Chain, source_sub: Subcomplex | None = None,
                     target_sub: Subcomplex | None = None, level: int = 0) -> CheckReport:
    """sys(g# z) ~ (sys g)# sys(z) in the target quotient at the given tower level."""
    ring = z.ring
    check_parity(ring, z.degree)
    if not g.is_pair_map(source_sub, target_sub):
        raise MalformedInputError("map does not send the source subcomplex into the target subcomplex")
    src, tgt = Tower(g.domain, source_sub, ring), Tower(g.codomain, target_sub, ring)
    gm = _subdivided_map(g, src, tgt, level)
    Ls, Lt = src.level(level), tgt.level(level)
    zm = src.lift(z, level)
    pushed = relative_complex(Lt.X, Lt.A, ring).restrict(Chain(zm.degree, _apply(gm, zm), ring))
    left = sym_square_chain(pushed, Lt.quotient)
    right = quotient_map(gm, Ls.quotient, Lt.quotient)(sym_square_chain(zm, Ls.quotient))
    ok = classes_equal(Lt.quotient.complex, 2 * z.degree, left, right)
    return CheckReport("naturality", level, ok, {
        "ring": ring.value, "degree": z.degree, "left_terms": len(left), "right_terms": len(right),
        "chain_level_equal": left == right,
        "class_is_zero": homology(Lt.quotient.complex, 2 * z.degree).is_zero(left),
    })


def _apply(f: SimplicialMap, z: Chain) -> dict:
    acc: dict = {}
    for s, c in z:
        for t, d in f.on_simplex(s).items():
            acc[t] = acc.get(t, 0) + c * d
    return acc


@dataclass
class MuClass:
    chain: Chain
    homology: HomologyResult = field(repr=False)
    fundamental: Chain = field(repr=False)

    def coordinates(self) -> tuple[list[int], list[int]]:
        return self.homology.coordinates(self.chain)


def _source_pair(f: SimplicialMap, target_sub: Subcomplex | None):
    rep = analyze(f.domain)
    if not rep.is_pseudomanifold:
        raise StructureError(f"{f.domain.name or 'domain'} is not a pseudomanifold")
    boundary = rep.boundary if len(rep.boundary) else None
    if not f.is_pair_map(boundary, target_sub):
        raise MalformedInputError("map does not send the boundary into the target subcomplex")
    return boundary


def mu(f: SimplicialMap, ring: Ring = Ring.Z, target_sub: Subcomplex | None = None) -> MuClass:
    """f# of the (relative) fundamental cycle of the domain, as a class of H_n(X, A)."""
    boundary = _source_pair(f, target_sub)
    fc = fundamental_cycle(f.domain, ring, relative=boundary is not None)
    C = relative_complex(f.codomain, target_sub, ring)
    chain = C.restrict(Chain(fc.degree, _apply(f, fc), ring))
    return MuClass(chain, homology(C, fc.degree), fc)


def compat_check(f: SimplicialMap, ring: Ring = Ring.Z, target_sub: Subcomplex | None = None,
                 level: int = 0) -> CheckReport:
    """sys(mu(f)) ~ (sys f)# sys(fundamental cycle of the domain) at the given level."""
    boundary = _source_pair(f, target_sub)
    fc = fundamental_cycle(f.domain, ring, relative=boundary is not None)
    check_parity(ring, fc.degree)
    src, tgt = Tower(f.domain, boundary, ring), Tower(f.codomain, target_sub, ring)
    fm = _subdivided_map(f, src, tgt, level)
    Ls, Lt = src.level(level), tgt.level(level)
    fcm = src.lift(fc, level)
    image = relative_complex(Lt.X, Lt.A, ring).restrict(Chain(fc.degree, _apply(fm, fcm), ring))
    left = sym_square_chain(image, Lt.quotient)
    right = quotient_map(fm, Ls.quotient, Lt.quotient)(sym_square_chain(fcm, Ls.quotient))
    ok = classes_equal(Lt.quotient.complex, 2 * fc.degree, left, right)
    return CheckReport("compat", level, ok, {
        "ring": ring.value, "degree": fc.degree,
        "mu_coordinates": list(mu(f, ring, target_sub).coordinates()),
        "left_terms": len(left), "right_terms": len(right),
        "class_is_zero": homology(Lt.quotient.complex, 2 * fc.degree).is_zero(left),
    })


def fundamental_square_check(M: SimplicialComplex, ring: Ring = Ring.Z2, level: int = 0,
                             max_level: int = 2, tower: Tower | None = None) -> CheckReport:
    """sys(fundamental cycle of M) against the fundamental cycle of the quotient pair.

    The quotient at a level counts as a pseudomanifold with boundary when each of its
    codimension-one cells has exactly two cofaces and its top cells fall into
    c(c+1)/2 components for a c-component M.  Otherwise the check escalates one level,
    up to ``max_level``.  Over Z each quotient component is compared up to sign.
    """
    rep = analyze(M)
    if not rep.is_pseudomanifold or len(rep.boundary):
        raise StructureError(f"{M.name or 'complex'} is not a closed pseudomanifold")
    fc = fundamental_cycle(M, ring, relative=False)
    n = fc.degree
    check_parity(ring, n)
    c = len(rep.components)
    expected_components = c * (c + 1) // 2
    tower = tower or Tower(M, None, ring)
    escalations = []
    for m in range(level, max_level + 1):
        lvl = tower.level(m)
        C = lvl.quotient.complex
        reason = None
        if C.top_degree != 2 * n:
            reason = f"quotient has top degree {C.top_degree}, expected {2 * n}"
        else:
            try:
                qfc, comps = coherent_top_cycle(C, 2 * n)
                ncomp = len(comps)
            except StructureError as exc:
                reason = str(exc)
            else:
                if ncomp != expected_components:
                    reason = f"quotient has {ncomp} top components, expected {expected_components}"
        if reason is not None:
            escalations.append({"level": m, "reason": reason})
            continue
        s = sym_square_chain(tower.lift(fc, m), lvl.quotient)
        target = _align_components(s, qfc, comps) if ring is Ring.Z else qfc
        ok = classes_equal(C, 2 * n, s, target)
        H = homology(C, 2 * n)
        return CheckReport("fund-square", m, ok, {
            "ring": ring.value, "degree": n, "escalations": escalations, "components": ncomp,
            "quotient_cells": C.size(), "top_rank": H.betti, "top_torsion": H.torsion,
            "sys_coordinates": list(H.coordinates(s)), "up_to_sign": ring is Ring.Z,
        })
    return CheckReport("fund-square", max_level, False, {
        "ring": ring.value, "degree": n, "escalations": escalations,
        "reason": "no level up to the cap yields a pseudomanifold quotient",
    })


def _align_components(s: Chain, qfc: Chain, components) -> Chain:
    """Flip the coherent cycle on each top component to match the sign of s there."""
    terms = {}
    for comp in components:
        sign = 1
        for cell in comp:
            v = s.coefficient(cell)
            if v:
                sign = 1 if v * qfc.coefficient(cell) > 0 else -1
                break
        for cell in comp:
            terms[cell] = sign * qfc.coefficient(cell)
    return Chain(qfc.degree, terms, qfc.ring)
