"""Smith normal form by sparse unimodular elimination.

The same elimination drives the dense ``smith_normal_form`` API and the homology
computations.  Entries are Python ints, so intermediate growth never overflows.
Pivoting: smallest nonzero absolute value, ties broken by lowest (row, column).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import gcd
from typing import Sequence


class Elimination:
    """Reduce a sparse matrix to a diagonal by elementary row and column additions.

    ``columns[j]`` is ``{row: value}``.  With ``mod=2`` all arithmetic is over Z/2.
    Row operations are logged as ``(dst, src, t)`` meaning ``row_dst += t * row_src``;
    column operations likewise.  A ``partner`` (rows of a matrix B whose rows are
    indexed by this matrix's columns) receives the inverse column operations, so it is
    kept equal to ``Q^-1 B`` where ``Q`` accumulates the column operations.
    """

    def __init__(self, columns: Sequence[dict], nrows: int, mod: int | None = None,
                 log_rows: bool = False, log_cols: bool = False, partner: list[dict] | None = None):
        self.nrows = nrows
        self.ncols = len(columns)
        self.mod = mod
        self.rows: list[dict[int, int]] = [dict() for _ in range(nrows)]
        self.cols: list[set[int]] = [set() for _ in range(self.ncols)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if mod:
                    v %= mod
                if v:
                    self.rows[i][j] = v
                    self.cols[j].add(i)
        self.row_log: list[tuple[int, int, int]] | None = [] if log_rows else None
        self.col_log: list[tuple[int, int, int]] | None = [] if log_cols else None
        self.partner = partner
        self.pivots: list[tuple[int, int, int]] = []
        self._heap: list[tuple[int, int, int]] = []

    def _set(self, r: int, c: int, v: int):
        if self.mod:
            v %= self.mod
        row = self.rows[r]
        if v:
            row[c] = v
            self.cols[c].add(r)
            heapq.heappush(self._heap, (abs(v), r, c))
        elif c in row:
            del row[c]
            self.cols[c].discard(r)

    def add_row(self, dst: int, src: int, t: int):
        row_dst = self.rows[dst]
        for c, v in list(self.rows[src].items()):
            self._set(dst, c, row_dst.get(c, 0) + t * v)
        if self.row_log is not None:
            self.row_log.append((dst, src, t))

    def add_col(self, dst: int, src: int, t: int):
        for r in list(self.cols[src]):
            row = self.rows[r]
            self._set(r, dst, row.get(dst, 0) + t * row[src])
        if self.col_log is not None:
            self.col_log.append((dst, src, t))
        if self.partner is not None:
            p_src, p_dst = self.partner[src], self.partner[dst]
            for j, v in p_dst.items():
                w = p_src.get(j, 0) - t * v
                if self.mod:
                    w %= self.mod
                if w:
                    p_src[j] = w
                else:
                    p_src.pop(j, None)

    def run(self) -> "Elimination":
        heap = [(abs(v), r, c) for r, row in enumerate(self.rows) for c, v in row.items()]
        heapq.heapify(heap)
        self._heap = heap
        done_r: set[int] = set()
        done_c: set[int] = set()
        while heap:
            a, r, c = heapq.heappop(heap)
            if r in done_r or c in done_c:
                continue
            p = self.rows[r].get(c)
            if p is None or abs(p) != a:
                continue
            for r2 in sorted(self.cols[c]):
                if r2 != r:
                    q = self.rows[r2][c] // p
                    if q:
                        self.add_row(r2, r, -q)
            for c2 in sorted(self.rows[r]):
                if c2 != c:
                    q = self.rows[r][c2] // p
                    if q:
                        self.add_col(c2, c, -q)
            if len(self.cols[c]) == 1 and len(self.rows[r]) == 1:
                done_r.add(r)
                done_c.add(c)
                self.pivots.append((r, c, p))
            else:
                heapq.heappush(heap, (a, r, c))
        return self

    @property
    def rank(self) -> int:
        return len(self.pivots)

    # Replaying the logs on sparse vectors ({index: value}).

    def _norm(self, vec: dict) -> dict:
        if self.mod:
            return {i: v % self.mod for i, v in vec.items() if v % self.mod}
        return {i: v for i, v in vec.items() if v}

    def apply_rows(self, vec: dict) -> dict:
        """P * vec."""
        vec = dict(vec)
        for dst, src, t in self.row_log:
            s = vec.get(src)
            if s:
                vec[dst] = vec.get(dst, 0) + t * s
        return self._norm(vec)

    def apply_rows_inverse(self, vec: dict) -> dict:
        """P^-1 * vec."""
        vec = dict(vec)
        for dst, src, t in reversed(self.row_log):
            s = vec.get(src)
            if s:
                vec[dst] = vec.get(dst, 0) - t * s
        return self._norm(vec)

    def apply_cols(self, vec: dict) -> dict:
        """Q * vec."""
        vec = dict(vec)
        for dst, src, t in reversed(self.col_log):
            d = vec.get(dst)
            if d:
                vec[src] = vec.get(src, 0) + t * d
        return self._norm(vec)

    def apply_cols_inverse(self, vec: dict) -> dict:
        """Q^-1 * vec."""
        vec = dict(vec)
        for dst, src, t in self.col_log:
            d = vec.get(dst)
            if d:
                vec[src] = vec.get(src, 0) - t * d
        return self._norm(vec)


@dataclass
class SNFResult:
    """``A = U * S * V`` with U, V unimodular and S diagonal, d1 | d2 | ... >= 0."""

    U: list[list[int]]
    S: list[list[int]]
    V: list[list[int]]

    @property
    def diagonal(self) -> list[int]:
        if not self.S:
            return []
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0])))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]) -> SNFResult:
    A = [list(map(int, row)) for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    columns = [{i: A[i][j] for i in range(m) if A[i][j]} for j in range(n)]
    el = Elimination(columns, m, log_rows=True, log_cols=True).run()

    # U = P^-1 and V = Q^-1 where S = P A Q; each logged op is inverted in place.
    U = _identity(m)
    for dst, src, t in el.row_log:
        for row in U:
            row[src] -= t * row[dst]
    V = _identity(n)
    for dst, src, t in el.col_log:
        V[src] = [a - t * b for a, b in zip(V[src], V[dst])]

    # Move pivot t to position (t, t).
    pr = [r for r, _, _ in el.pivots]
    pc = [c for _, c, _ in el.pivots]
    row_order = pr + [i for i in range(m) if i not in set(pr)]
    col_order = pc + [j for j in range(n) if j not in set(pc)]
    U = [[row[i] for i in row_order] for row in U]
    V = [V[j] for j in col_order]
    d = [p for _, _, p in el.pivots]

    for i, di in enumerate(d):
        if di < 0:
            d[i] = -di
            for row in U:
                row[i] = -row[i]

    # diag(a, b) -> diag(gcd, lcm) until the divisibility chain holds:
    # L diag(a, b) R = diag(g, ab/g) with L = [[x, y], [-b/g, a/g]], R = [[1, -yb/g], [1, xa/g]].
    r = len(d)
    for i in range(r):
        for j in range(i + 1, r):
            a, b = d[i], d[j]
            if b % a == 0:
                continue
            g, x, y = _xgcd(a, b)
            for row in U:  # U L^-1, L^-1 = [[a/g, -y], [b/g, x]]
                u, v = row[i], row[j]
                row[i], row[j] = (a // g) * u + (b // g) * v, -y * u + x * v
            Vi, Vj = V[i], V[j]  # R^-1 V, R^-1 = [[xa/g, yb/g], [-1, 1]]
            V[i] = [(x * a // g) * u + (y * b // g) * v for u, v in zip(Vi, Vj)]
            V[j] = [v - u for u, v in zip(Vi, Vj)]
            d[i], d[j] = g, a * b // g

    S = [[0] * n for _ in range(m)]
    for i, di in enumerate(d):
        S[i][i] = di
    return SNFResult(U, S, V)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def invariant_factors(diagonal: Sequence[int]) -> list[int]:
    """Normalise any nonzero diagonal into the divisibility chain of the same group."""
    d = [abs(x) for x in diagonal if x]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            if d[j] % d[i]:
                g = gcd(d[i], d[j])
                d[i], d[j] = g, d[i] * d[j] // g
    return d
