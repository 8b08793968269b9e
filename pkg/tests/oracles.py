"""Independent reference computations, deliberately naive and sharing no code with the package."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def closure(facets) -> list[tuple]:
    out = set()
    for f in facets:
        f = tuple(sorted(f))
        for r in range(1, len(f) + 1):
            out.update(combinations(f, r))
    return sorted(out, key=lambda s: (len(s), s))


def boundary_matrix(simplices, k: int, skip=frozenset()) -> list[list[int]]:
    """Dense d_k with rows = (k-1)-simplices, columns = k-simplices, both outside ``skip``."""
    rows = [s for s in simplices if len(s) == k and s not in skip]
    cols = [s for s in simplices if len(s) == k + 1 and s not in skip]
    index = {s: i for i, s in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            if face in index:
                mat[index[face]][j] += (-1) ** i
    return mat


def rank_over(mat, p: int | None = None) -> int:
    """Rank over Q (p None) or over GF(p), by plain Gaussian elimination."""
    m = [[Fraction(x) if p is None else x % p for x in row] for row in mat]
    if not m or not m[0]:
        return 0
    rank, ncols = 0, len(m[0])
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][c] if p is None else pow(m[rank][c], -1, p)
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
                if p is not None:
                    m[r] = [a % p for a in m[r]]
        rank += 1
    return rank


def det(mat) -> int:
    m = [[Fraction(x) for x in row] for row in mat]
    n, sign, out = len(m), 1, Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return int(sign * out)


def determinantal_divisors(mat) -> list[int]:
    """gcd of all i x i minors for i = 1..min(m, n); stops at the first zero."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    out = []
    for i in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), i):
            for cols in combinations(range(n), i):
                g = gcd(g, det([[mat[r][c] for c in cols] for r in rows]))
        if g == 0:
            break
        out.append(g)
    return out


def invariant_factors_from_minors(mat) -> list[int]:
    d = determinantal_divisors(mat)
    return [d[0]] + [d[i] // d[i - 1] for i in range(1, len(d))] if d else []


def betti_and_p_torsion(facets, k: int, primes=(2, 3, 5, 7), skip_facets=()):
    """(Betti over Q, {p: number of Z-torsion summands of H_k divisible by p}, Betti over GF(2)).

    Torsion summands are detected through rank drops of d_{k+1} modulo p.
    """
    simplices = closure(facets)
    skip = set(closure(skip_facets)) if skip_facets else set()
    n_k = sum(1 for s in simplices if len(s) == k + 1 and s not in skip)
    d_k = boundary_matrix(simplices, k, skip) if k > 0 else []
    d_k1 = boundary_matrix(simplices, k + 1, skip)
    rq_k = rank_over(d_k) if d_k else 0
    rq_k1 = rank_over(d_k1)
    betti_q = n_k - rq_k - rq_k1
    torsion = {p: rq_k1 - rank_over(d_k1, p) for p in primes}
    r2_k = rank_over(d_k, 2) if d_k else 0
    betti_2 = n_k - r2_k - rank_over(d_k1, 2)
    return betti_q, {p: t for p, t in torsion.items() if t}, betti_2
