import random

import pytest
from hypothesis import given, settings, strategies as st

from symsq.catalog import cylinder, hexagon, octahedron, point, rp2, solid_triangle
from symsq.chains import Chain, ChainComplex, Ring
from symsq.complex import build_complex, complex_of, relative_complex
from symsq.errors import MalformedInputError, NotACycleError
from symsq.homology import betti_numbers, classes_equal, homology, is_boundary
from symsq.snf import invariant_factors, smith_normal_form

from oracles import betti_and_p_torsion, det, invariant_factors_from_minors


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def check_snf(A):
    res = smith_normal_form(A)
    m = len(A)
    n = len(A[0])
    U, S, V = res.U, res.S, res.V
    assert len(U) == m and len(V) == n
    assert matmul(matmul(U, S), V) == A
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    d = res.diagonal
    for i in range(m):
        for j in range(n):
            if i != j:
                assert S[i][j] == 0
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert d[:len(nz)] == nz
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    return res


matrices = st.integers(1, 8).flatmap(lambda m: st.integers(1, 8).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))
small_matrices = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


def test_snf_identity():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).S == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_snf_zero():
    assert smith_normal_form([[0, 0], [0, 0]]).S == [[0, 0], [0, 0]]


def test_snf_two_by_two():
    # gcd of entries is 2 and |det| = 8, so the factors are 2 and 4
    res = check_snf([[2, 4], [6, 8]])
    assert res.diagonal == [2, 4]


def test_snf_deterministic():
    A = [[3, -7, 2], [0, 4, 8], [5, 5, -1]]
    assert smith_normal_form(A) == smith_normal_form(A)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_round_trip(A):
    check_snf(A)


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_snf_matches_gcd_of_minors(A):
    res = check_snf(A)
    assert [d for d in res.diagonal if d] == invariant_factors_from_minors(A)


def test_invariant_factors_normalise():
    assert invariant_factors([4, 6]) == [2, 12]
    assert invariant_factors([0, 2, 3]) == [1, 6]


TABLE = [
    # complex, ring, {degree: (betti, torsion)}
    (hexagon, Ring.Z, {0: (1, []), 1: (1, [])}),
    (octahedron, Ring.Z, {0: (1, []), 1: (0, []), 2: (1, [])}),
    (octahedron, Ring.Z2, {0: (1, []), 1: (0, []), 2: (1, [])}),
    (rp2, Ring.Z, {0: (1, []), 1: (0, [2]), 2: (0, [])}),
    (rp2, Ring.Z2, {0: (1, []), 1: (1, []), 2: (1, [])}),
    (point, Ring.Z, {0: (1, []), 1: (0, [])}),
    (point, Ring.Z2, {0: (1, []), 1: (0, [])}),
    (cylinder, Ring.Z, {0: (1, []), 1: (1, []), 2: (0, [])}),
]


@pytest.mark.parametrize("make, ring, expected", TABLE, ids=lambda x: getattr(x, "__name__", str(x)))
def test_homology_table(make, ring, expected):
    C = complex_of(make(), ring)
    for k, (betti, torsion) in expected.items():
        H = homology(C, k)
        assert (H.betti, H.torsion) == (betti, torsion)


@pytest.mark.parametrize("make", [hexagon, octahedron, rp2, cylinder, solid_triangle])
def test_homology_matches_rank_oracle(make):
    K = make()
    for k in range(K.dim + 1):
        betti_q, p_torsion, betti_2 = betti_and_p_torsion(K.facets(), k)
        HZ = homology(complex_of(K, Ring.Z), k)
        H2 = homology(complex_of(K, Ring.Z2), k)
        assert HZ.betti == betti_q
        assert H2.betti == betti_2
        for p in (2, 3, 5, 7):
            assert sum(1 for t in HZ.torsion if t % p == 0) == p_torsion.get(p, 0)


@pytest.mark.parametrize("make", [hexagon, octahedron, rp2, cylinder])
def test_universal_coefficients(make):
    K = make()
    for k in range(K.dim + 1):
        HZ = homology(complex_of(K, Ring.Z), k)
        prev = homology(complex_of(K, Ring.Z), k - 1) if k else None
        even = sum(1 for t in HZ.torsion if t % 2 == 0) + (sum(1 for t in prev.torsion if t % 2 == 0) if prev else 0)
        assert homology(complex_of(K, Ring.Z2), k).betti == HZ.betti + even


@pytest.mark.parametrize("make", [hexagon, octahedron, rp2, cylinder, solid_triangle, point])
@pytest.mark.parametrize("ring", list(Ring))
def test_euler_characteristic(make, ring):
    C = complex_of(make(), ring)
    betti = betti_numbers(C)
    assert sum((-1) ** k * b for k, b in betti.items()) == C.euler_characteristic()


def test_edge_boundary_column():
    C = complex_of(build_complex([[0, 1]]))
    assert C.boundary_matrix(1) == [[-1], [1]]


def test_relative_interval():
    K = build_complex([[0, 1]])
    H = homology(relative_complex(K, K.subcomplex([[0], [1]])), 1)
    assert H.betti == 1


def test_relative_solid_triangle():
    K = solid_triangle()
    for ring in Ring:
        C = relative_complex(K, K.subcomplex([[0, 1], [1, 2], [0, 2]]), ring)
        assert homology(C, 2).betti == 1
        assert homology(C, 1).betti == 0


def test_pair_with_itself_is_trivial():
    K = octahedron()
    C = relative_complex(K, K.subcomplex(K.facets()))
    assert all(b == 0 for b in betti_numbers(C, range(4)).values())


def test_degree_outside_range_is_empty():
    H = homology(complex_of(hexagon()), 5)
    assert (H.betti, H.torsion) == (0, [])


def test_generators_are_cycles_and_coordinates_are_unit():
    for make, ring in [(octahedron, Ring.Z), (rp2, Ring.Z), (rp2, Ring.Z2), (cylinder, Ring.Z)]:
        C = complex_of(make(), ring)
        for k in C.degrees:
            H = homology(C, k)
            for i, g in enumerate(H.generators):
                assert C.is_cycle(g)
                free, tors = H.coordinates(g)
                assert free + tors == [int(i == j) for j in range(len(H.generators))]


def test_classes_equal_on_octahedron():
    C = complex_of(octahedron())
    H = homology(C, 2)
    z = H.generators[0]
    assert classes_equal(C, 2, z, z)
    assert not classes_equal(C, 2, z, z * 2)
    assert not classes_equal(C, 2, z, Chain.zero(2))


def test_classes_equal_modulo_boundaries():
    rng = random.Random(4)
    K = build_complex([[0, 1, 2, 3], [1, 2, 3, 4]])
    C = complex_of(K)
    z = C.boundary(Chain(3, {(0, 1, 2, 3): 1}))
    for _ in range(10):
        w = Chain(3, {s: rng.randint(-4, 4) for s in K.simplices(3)})
        assert classes_equal(C, 2, z, z + C.boundary(w))


def test_classes_equal_rejects_non_cycles():
    C = complex_of(solid_triangle())
    with pytest.raises(NotACycleError) as err:
        classes_equal(C, 1, Chain(1, {(0, 1): 1}), Chain(1, {(0, 1): 1}))
    assert err.value.boundary


def test_torsion_class_coordinates():
    C = complex_of(rp2())
    H = homology(C, 1)
    g = H.generators[0]
    assert H.coordinates(g * 2) == ([], [0])
    assert is_boundary(C, g * 2)
    assert not is_boundary(C, g)


def test_chain_ring_mismatch():
    with pytest.raises(MalformedInputError):
        Chain(1, {(0, 1): 1}, Ring.Z) + Chain(1, {(0, 1): 1}, Ring.Z2)


def test_z2_chains_reduce():
    assert not Chain(1, {(0, 1): 2}, Ring.Z2)


def test_custom_complex_square_zero():
    # a two-cell complex whose boundary has coefficient 2: homology Z/2 in degree 0
    C = ChainComplex({0: ["v"], 1: ["e"]}, lambda c: {"v": 2} if c == "e" else {})
    assert homology(C, 0).torsion == [2]
