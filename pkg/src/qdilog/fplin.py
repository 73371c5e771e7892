"""Dense linear algebra over prime fields F_p.

Matrices are tuples of row tuples of ints in [0, p). Everything here is
exact and sized for the brute-force guards used elsewhere (dimensions
around a dozen), so plain Gaussian elimination is enough.
"""

from __future__ import annotations

from itertools import combinations, product


def mat_mul(a, b, p: int):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = []
    for i in range(rows):
        row = []
        ai = a[i]
        for j in range(cols):
            row.append(sum(ai[k] * b[k][j] for k in range(inner)) % p)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v, p: int):
    return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)


def rref(mat, p: int):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows[:r]), pivots


def rank(mat, p: int) -> int:
    if not mat or not mat[0]:
        return 0
    return len(rref(mat, p)[0])


def kernel_basis(mat, p: int):
    """Basis (as rows) of the right kernel of mat."""
    if not mat:
        return ()
    ncols = len(mat[0])
    red, pivots = rref(mat, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-red[r][fc]) % p
        basis.append(tuple(vec))
    return tuple(basis)


def in_row_span(rows, vec, p: int) -> bool:
    """Whether vec lies in the span of the given rref rows."""
    v = list(vec)
    ncols = len(v)
    for row in rows:
        lead = next((c for c in range(ncols) if row[c]), None)
        if lead is not None and v[lead]:
            f = v[lead]
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return not any(v)


def subspaces(dim: int, p: int):
    """All subspaces of F_p^dim, each as an rref tuple of basis rows.

    Enumerates reduced echelon bases directly: choose pivot columns, then
    fill the free entries (right of each pivot, outside pivot columns).
    """
    yield ()
    for r in range(1, dim + 1):
        for pivots in combinations(range(dim), r):
            free_cells = []
            for i, pc in enumerate(pivots):
                for c in range(pc + 1, dim):
                    if c not in pivots:
                        free_cells.append((i, c))
            for values in product(range(p), repeat=len(free_cells)):
                rows = [[0] * dim for _ in range(r)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, c), val in zip(free_cells, values):
                    rows[i][c] = val
                yield tuple(tuple(row) for row in rows)


def identity(dim: int):
    return tuple(
        tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)
    )


def is_invertible(mat, p: int) -> bool:
    n = len(mat)
    if any(len(r) != n for r in mat):
        return False
    return rank(mat, p) == n
