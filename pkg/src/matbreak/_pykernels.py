"""Pure-Python kernels; the reference the compiled core must agree with.

Matrices are flat row-major lists of residues in ``[0, m)``.
"""

from __future__ import annotations

BACKEND = "python"


def matmul(a, b, n: int, m: int) -> list[int]:
    cols = [b[j::n] for j in range(n)]
    out = []
    for i in range(n):
        row = a[i * n:(i + 1) * n]
        for col in cols:
            out.append(sum(x * y for x, y in zip(row, col)) % m)
    return out


def rref(mat, rows: int, cols: int, p: int, ncoef: int | None = None) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over GF(p).

    Pivots are searched only in the first ``ncoef`` columns (default: all), so an
    augmented right-hand side never becomes a pivot column. Returns the reduced
    flat matrix and the list of pivot columns.
    """
    if ncoef is None:
        ncoef = cols
    a = [list(mat[r * cols:(r + 1) * cols]) for r in range(rows)]
    pivots = []
    r = 0
    for c in range(ncoef):
        if r == rows:
            break
        pr = r
        while pr < rows and a[pr][c] == 0:
            pr += 1
        if pr == rows:
            continue
        a[r], a[pr] = a[pr], a[r]
        prow = a[r]
        inv = pow(prow[c], -1, p)
        if inv != 1:
            prow = a[r] = [x * inv % p for x in prow]
        # columns left of c are already zero in the pivot row
        tail = prow[c:]
        for i in range(rows):
            if i != r:
                row = a[i]
                f = row[c]
                if f:
                    row[c:] = [(x - f * y) % p for x, y in zip(row[c:], tail)]
        pivots.append(c)
        r += 1
    return [x for row in a for x in row], pivots
