"""Exact integer linear algebra: Smith normal form with tracked transforms.

Entries are Python ints, so no overflow; the pivot rule picks a smallest
nonzero entry to limit coefficient growth during elimination.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return zeros(len(a), len(b[0]) if b else 0)
    rows, inner, cols = len(a), len(b), len(b[0])
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += aik * bk[j]
    return out


def mat_vec(a: Matrix, v: list[int]) -> list[int]:
    return [sum(row[j] * v[j] for j in range(len(v)) if v[j]) for row in a]


@dataclass
class SNFResult:
    """P @ original @ Q == diag(diagonal); Pinv, Qinv are exact inverses."""

    diagonal: list[int]
    rank: int
    rows: int
    cols: int
    P: Matrix
    Pinv: Matrix
    Q: Matrix
    Qinv: Matrix


def smith_normal_form(matrix: Matrix, cols: int | None = None) -> SNFResult:
    m = len(matrix)
    n = cols if cols is not None else (len(matrix[0]) if matrix else 0)
    a = [row[:] for row in matrix]
    p, pinv = identity(m), identity(m)
    q, qinv = identity(n), identity(n)

    def row_add(dst: int, src: int, c: int) -> None:
        if c == 0:
            return
        arow, srow = a[dst], a[src]
        for j in range(n):
            arow[j] += c * srow[j]
        prow, psrow = p[dst], p[src]
        for j in range(m):
            prow[j] += c * psrow[j]
        for i in range(m):
            pinv[i][src] -= c * pinv[i][dst]

    def col_add(dst: int, src: int, c: int) -> None:
        if c == 0:
            return
        for i in range(m):
            a[i][dst] += c * a[i][src]
        for i in range(n):
            q[i][dst] += c * q[i][src]
        qrow, qdrow = qinv[src], qinv[dst]
        for j in range(n):
            qrow[j] -= c * qdrow[j]

    def row_swap(i: int, j: int) -> None:
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        p[i], p[j] = p[j], p[i]
        for r in pinv:
            r[i], r[j] = r[j], r[i]

    def col_swap(i: int, j: int) -> None:
        if i == j:
            return
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in q:
            r[i], r[j] = r[j], r[i]
        qinv[i], qinv[j] = qinv[j], qinv[i]

    def row_negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        p[i] = [-x for x in p[i]]
        for r in pinv:
            r[i] = -r[i]

    def eliminate_at(t: int) -> None:
        # Clear the pivot column, then the pivot row; any nonzero remainder
        # has smaller absolute value than the pivot and is swapped in, so the
        # pivot strictly shrinks and the loop terminates.
        while True:
            for i in range(t + 1, m):
                if a[i][t]:
                    row_add(i, t, -(a[i][t] // a[t][t]))
            moved = False
            for i in range(t + 1, m):
                if a[i][t]:
                    row_swap(t, i)
                    moved = True
                    break
            if moved:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    col_add(j, t, -(a[t][j] // a[t][t]))
            moved = False
            for j in range(t + 1, n):
                if a[t][j]:
                    col_swap(t, j)
                    moved = True
                    break
            if not moved:
                return

    t = 0
    limit = min(m, n)
    while t < limit:
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])

        while True:
            eliminate_at(t)
            # Force the divisibility chain: a non-divisible leftover is pulled
            # into the pivot row, and re-elimination strictly shrinks |pivot|.
            d = a[t][t]
            fixed = False
            for i in range(t + 1, m):
                if fixed:
                    break
                for j in range(t + 1, n):
                    if a[i][j] % d:
                        row_add(t, i, 1)
                        fixed = True
                        break
            if not fixed:
                break
        if a[t][t] < 0:
            row_negate(t)
        t += 1

    diagonal = [a[i][i] for i in range(limit)]
    rank = sum(1 for d in diagonal if d)
    return SNFResult(diagonal, rank, m, n, p, pinv, q, qinv)
