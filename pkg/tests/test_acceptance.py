"""Acceptance criteria, one test each, timed against their budgets.

The terminal summary prints a PASS/FAIL line per criterion (see conftest.py).
"""
import random
import time
from contextlib import contextmanager

import pytest

from symsq.borel import borel_compare, borel_pair
from symsq.catalog import (capped_hexagon, capped_octahedron, double_wrap, hexagon, octahedron, point, rotation,
                           rp2, s0, solid_triangle)
from symsq.chains import Chain, Ring
from symsq.complex import SimplicialMap, build_complex, complex_of, relative_complex
from symsq.errors import ParityError
from symsq.homology import betti_numbers, classes_equal, homology
from symsq.manifolds import coherent_top_cycle, fundamental_cycle
from symsq.product import Tower, product_pair, swap, symmetric_quotient, tau_sign, tensor_boundary
from symsq.snf import smith_normal_form
from symsq.squaring import (compat_check, fundamental_square_check, half_square_check, naturality_check,
                            sym_square_chain, sym_square_class, sym_square_terms, well_definedness_check)

from oracles import betti_and_p_torsion, det, invariant_factors_from_minors


@contextmanager
def budget(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _random_matrix(rng, max_size):
    m, n = rng.randint(1, max_size), rng.randint(1, max_size)
    return [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]


@pytest.mark.criterion("1. substrate: d^2 = 0, SNF round trip, gcd-of-minors oracle (200 cases, < 5 s)")
def test_substrate_correctness():
    rng = random.Random(20240601)
    with budget(5):
        for _ in range(70):
            n = rng.randint(2, 7)
            facets = [rng.sample(range(n), rng.randint(1, min(n, 4))) for _ in range(rng.randint(1, 5))]
            K = build_complex(facets)
            for ring in Ring:
                C = complex_of(K, ring)
                for k in range(2, K.dim + 1):
                    for s in K.simplices(k):
                        assert not C.boundary(C.boundary(Chain(k, {s: 1}, ring)))
        for i in range(130):
            A = _random_matrix(rng, 8 if i < 70 else 4)
            res = smith_normal_form(A)
            assert _matmul(_matmul(res.U, res.S), res.V) == A
            assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
            d = [x for x in res.diagonal if x]
            assert all(x > 0 for x in d) and all(d[j + 1] % d[j] == 0 for j in range(len(d) - 1))
            if i >= 70:
                assert d == invariant_factors_from_minors(A)


@pytest.mark.criterion("2. homology table: hexagon, octahedron, RP2, solid triangle pair over Z and Z2 (< 1 s)")
def test_known_homology_table():
    cases = [(hexagon(), ()), (octahedron(), ()), (rp2(), ()), (solid_triangle(), [[0, 1], [1, 2], [0, 2]])]
    expected_z = {"hexagon": [(1, []), (1, [])], "octahedron": [(1, []), (0, []), (1, [])],
                  "RP2": [(1, []), (0, [2]), (0, [])], "solid-triangle": [(0, []), (0, []), (1, [])]}
    expected_z2 = {"hexagon": [1, 1], "octahedron": [1, 0, 1], "RP2": [1, 1, 1], "solid-triangle": [0, 0, 1]}
    oracle = {}
    for K, sub in cases:
        oracle[K.name] = [betti_and_p_torsion(K.facets(), k, skip_facets=sub) for k in range(K.dim + 1)]
    with budget(1):
        for K, sub in cases:
            A = K.subcomplex(sub) if sub else None
            CZ, C2 = relative_complex(K, A, Ring.Z), relative_complex(K, A, Ring.Z2)
            got_z = [(homology(CZ, k).betti, homology(CZ, k).torsion) for k in range(K.dim + 1)]
            got_2 = [homology(C2, k).betti for k in range(K.dim + 1)]
            assert got_z == expected_z[K.name]
            assert got_2 == expected_z2[K.name]
            for k, (bq, ptors, b2) in enumerate(oracle[K.name]):
                assert got_z[k][0] == bq and got_2[k] == b2
                assert {p: sum(1 for t in got_z[k][1] if t % p == 0) for p in ptors} == ptors


@pytest.mark.criterion("3. Koszul sign and parity; swap commutes with boundary on hexagon and octahedron (< 1 s)")
def test_koszul_and_parity():
    with budget(1):
        assert [tau_sign(k, k) for k in range(5)] == [1, -1, 1, -1, 1]
        for X in (hexagon(), octahedron()):
            for s in X.simplices():
                for t in X.simplices():
                    sign, swapped = swap((s, t))
                    lhs = {}
                    for face, c in tensor_boundary((s, t)).items():
                        sg, sw = swap(face)
                        lhs[sw] = lhs.get(sw, 0) + c * sg
                    rhs = {cell: sign * v for cell, v in tensor_boundary(swapped).items()}
                    assert {c: v for c, v in lhs.items() if v} == {c: v for c, v in rhs.items() if v}


@pytest.mark.criterion("4. half-square: octahedron over Z, hexagon over Z2 (< 60 s)")
def test_half_square_identity():
    with budget(60):
        O = octahedron()
        QO = symmetric_quotient(product_pair(O, None, Ring.Z))
        zo = fundamental_cycle(O, Ring.Z)
        report = half_square_check(zo, QO)
        assert report.result and report.details["relation"] == "2*sys(z) ~ pr(z x z)"
        assert classes_equal(QO.complex, 4, sym_square_chain(zo, QO) * 2, QO.project(
            Chain(4, {(s, t): a * b for s, a in zo for t, b in zo}, Ring.Z)))
        H = hexagon()
        QH = symmetric_quotient(product_pair(H, None, Ring.Z2))
        assert half_square_check(fundamental_cycle(H, Ring.Z2), QH).result


@pytest.mark.criterion("5. fundamental class: hexagon over Z2, octahedron over Z up to sign (< 5 min)")
def test_fundamental_class_theorem():
    with budget(300):
        H = hexagon()
        QH = symmetric_quotient(product_pair(H, None, Ring.Z2))
        cls = sym_square_class(fundamental_cycle(H, Ring.Z2), QH)
        assert cls.homology.betti == 1 and cls.homology.torsion == []
        assert cls.coordinates() == ([1], [])
        relative_fc, _ = coherent_top_cycle(QH.complex, 2)
        assert classes_equal(QH.complex, 2, cls.chain, relative_fc)
        assert fundamental_square_check(H, Ring.Z2).result

        report = fundamental_square_check(octahedron(), Ring.Z)
        assert report.result and report.details["up_to_sign"]
        assert report.details["top_rank"] == 1


@pytest.mark.criterion("6. well-definedness: 20 perturbations each on octahedron (Z) and hexagon (Z2), level <= 1 (< 10 min)")
def test_well_definedness():
    rng = random.Random(7)
    with budget(600):
        for X, M, ring, k in [(capped_octahedron(), octahedron(), Ring.Z, 2),
                              (capped_hexagon(), hexagon(), Ring.Z2, 1)]:
            z = fundamental_cycle(M, ring)
            tower = Tower(X, None, ring)
            nontrivial = 0
            for _ in range(20):
                w = Chain(k + 1, {s: rng.randint(-3, 3) for s in X.simplices(k + 1)}, ring)
                report = well_definedness_check(z, w, X, levels=1, tower=tower)
                levels = report.details["levels"]
                assert report.result
                assert report.details["stabilized_at"] is not None and report.details["stabilized_at"] <= 1
                assert [e["level"] for e in levels] == [0, 1]
                assert all(e["equal"] for e in levels[report.details["stabilized_at"]:])
                assert levels[1]["compatible"]
                nontrivial += not levels[0]["chain_equal"]
            assert nontrivial > 0


@pytest.mark.criterion("7. naturality: rotation and double wrap on the hexagon over Z2 (< 60 s)")
def test_naturality():
    z = fundamental_cycle(hexagon(), Ring.Z2)
    with budget(60):
        for level in (0, 1):
            assert naturality_check(rotation(), z, level=level).result
            assert naturality_check(double_wrap(), z, level=level).result


@pytest.mark.criterion("8. mu-compatibility: octahedron identity (Z), hexagon identity and double wrap (Z2) (< 2 min)")
def test_mu_compatibility():
    with budget(120):
        assert compat_check(SimplicialMap.identity(octahedron()), Ring.Z).result
        assert compat_check(SimplicialMap.identity(hexagon()), Ring.Z2).result
        for level in (0, 1):
            assert compat_check(double_wrap(), Ring.Z2, level=level).result


@pytest.mark.criterion("9. parity guard: Z with odd k rejected, Z2 never rejected, k <= 3")
def test_parity_guard():
    for k in range(4):
        X = build_complex([list(range(k + 2))])
        top = tuple(range(k + 2))
        for ring in Ring:
            z = complex_of(X, ring).boundary(Chain(k + 1, {top: 1}, ring))
            Q = symmetric_quotient(product_pair(X, None, ring))
            calls = [lambda: sym_square_chain(z, Q), lambda: sym_square_class(z, Q),
                     lambda: half_square_check(z, Q),
                     lambda: sym_square_chain(Chain.zero(k, ring), Q),
                     lambda: naturality_check(SimplicialMap.identity(X), z),
                     lambda: well_definedness_check(z, Chain.zero(k + 1, ring), X, levels=0)]
            for call in calls:
                if ring is Ring.Z and k % 2:
                    with pytest.raises(ParityError):
                        call()
                else:
                    call()


@pytest.mark.criterion("10. Borel comparison: point, S0 (N=2), hexagon (N=3), RP^N sanity (< 10 min)")
def test_borel_comparison():
    with budget(600):
        report = borel_compare(point(), 3, [0, 1, 2])
        assert report["result"] and all(r["borel"] == r["sys"] == 0 for r in report["degrees"])
        assert borel_compare(s0(), 2, [0, 1])["result"]
        report = borel_compare(hexagon(), 3, [0, 1, 2])
        assert report["result"] and [r["borel"] for r in report["degrees"]] == [0, 1, 1]
        assert [r["sys"] for r in report["degrees"]] == [0, 1, 1]
        for N in range(4):
            B = borel_pair(point(), N, relative=False)
            assert B.is_free
            assert betti_numbers(B.complex, range(N + 1)) == {k: 1 for k in range(N + 1)}


@pytest.mark.criterion("11. order independence under 10 random permutations, hexagon and octahedron (< 10 s)")
def test_order_independence():
    rng = random.Random(11)
    with budget(10):
        for X, ring in [(hexagon(), Ring.Z2), (octahedron(), Ring.Z)]:
            Q = symmetric_quotient(product_pair(X, None, ring))
            z = fundamental_cycle(X, ring)
            reference = sym_square_chain(z, Q)
            terms = [(c, s) for s, c in z]
            for _ in range(10):
                rng.shuffle(terms)
                out = sym_square_terms(terms, Q)
                assert out == reference
                assert sorted(out.terms.items()) == sorted(reference.terms.items())
