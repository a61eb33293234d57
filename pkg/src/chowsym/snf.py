"""Smith normal form over the integers with unimodular transforms.

Everything is plain Python ints, so entries never overflow.

>>> res = smith_normal_form([[2, 0], [0, 3]])
>>> res.invariant_factors
[1, 6]
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["SmithResult", "smith_normal_form", "matmul", "identity", "det"]


def identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def matmul(a, b, inner: int | None = None) -> list[list[int]]:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def det(a) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in a]
    k = len(a)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for c in range(k - 1):
        if a[c][c] == 0:
            swap = next((r for r in range(c + 1, k) if a[r][c] != 0), None)
            if swap is None:
                return 0
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        for r in range(c + 1, k):
            for j in range(c + 1, k):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[k - 1][k - 1]


@dataclass
class SmithResult:
    """D = U @ M @ V with D diagonal, d1 | d2 | ..., U and V unimodular."""
    invariant_factors: list[int]
    D: list[list[int]]
    U: list[list[int]]
    V: list[list[int]]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M, ncols: int | None = None) -> SmithResult:
    """Smith normal form of an integer matrix given as a list of rows.

    `ncols` is only needed when `M` has no rows.  The returned invariant
    factors are the nonzero diagonal entries, all positive.
    """
    D = [[int(x) for x in row] for row in M]
    r = len(D)
    c = len(D[0]) if D else (ncols or 0)
    if any(len(row) != c for row in D):
        raise ValueError("ragged matrix")
    U, V = identity(r), identity(c)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for mat in (D, V):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row dst += f * row src
        for mat in (D, U):
            rs, rd = mat[src], mat[dst]
            for k in range(len(rd)):
                rd[k] += f * rs[k]

    def add_col(dst, src, f):
        for mat in (D, V):
            for row in mat:
                row[dst] += f * row[src]

    for t in range(min(r, c)):
        while True:
            pivot = None
            for i in range(t, r):
                for j in range(t, c):
                    if D[i][j] and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = D[t][t]
            for i in range(t + 1, r):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, c):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, r)) or any(D[t][j] for j in range(t + 1, c)):
                continue  # a smaller remainder now exists; re-pivot
            bad = next((i for i in range(t + 1, r)
                        if any(D[i][j] % p for j in range(t + 1, c))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            for mat in (D, U):
                mat[t] = [-x for x in mat[t]]

    factors = [D[k][k] for k in range(min(r, c)) if D[k][k]]
    return SmithResult(factors, D, U, V)
