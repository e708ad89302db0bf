"""Exact linear algebra over ZZ and QQ.

Dense row-major matrices are plain lists of lists.  Determinants use
fraction-free (Bareiss) elimination; Hermite and Smith normal forms use
integer row/column reduction with smallest-pivot selection to keep entry
growth in check.  All results are exact.
"""

from fractions import Fraction
from math import gcd, lcm

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


def _copy_int(m) -> IntMatrix:
    rows = [[int(x) for x in row] for row in m]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix must be rectangular and non-empty")
    return rows


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    """Matrix product; works for int or Fraction entries."""
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def det_int(m) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = _copy_int(m)
    n = len(a)
    if len(a[0]) != n:
        raise ValueError("determinant requires a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det(m) -> Fraction:
    """Exact determinant of a square matrix with Fraction/int entries.

    Denominators are cleared row by row, then the integer determinant is
    computed fraction-free.
    """
    rows = [[Fraction(x) for x in row] for row in m]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("determinant requires a square matrix")
    scale = 1
    cleared = []
    for row in rows:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        scale *= mult
        cleared.append([int(x * mult) for x in row])
    return Fraction(det_int(cleared), scale)


def _row_addmul(m, dst: int, src: int, q: int) -> None:
    if q:
        row_d, row_s = m[dst], m[src]
        for j in range(len(row_d)):
            row_d[j] += q * row_s[j]


def _col_addmul(m, dst: int, src: int, q: int) -> None:
    if q:
        for row in m:
            row[dst] += q * row[src]


def hnf(m) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular and U*m == H.  Pivots are positive,
    entries above each pivot are reduced into [0, pivot), pivot columns
    strictly increase down the rows, and zero rows sink to the bottom.
    """
    H = _copy_int(m)
    nrows, ncols = len(H), len(H[0])
    U = identity(nrows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # gcd-reduce rows r.. in column c until a single nonzero remains
        while True:
            piv, best = -1, None
            for i in range(r, nrows):
                v = abs(H[i][c])
                if v and (best is None or v < best):
                    piv, best = i, v
            if piv < 0:
                break
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, nrows):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    _row_addmul(H, i, r, -q)
                    _row_addmul(U, i, r, -q)
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            _row_addmul(H, i, r, -q)
            _row_addmul(U, i, r, -q)
        r += 1
    return H, U


def hnf_pivots(m) -> list[int]:
    """Pivot values of the row Hermite normal form, top row first."""
    H, _ = hnf(m)
    out = []
    for row in H:
        for x in row:
            if x:
                out.append(x)
                break
    return out


def snf_with_transforms(m) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (S, U, V), S == U*m*V.

    S is diagonal with non-negative entries d_1 | d_2 | ...; U and V are
    unimodular.
    """
    A = _copy_int(m)
    nrows, ncols = len(A), len(A[0])
    U = identity(nrows)
    V = identity(ncols)
    for k in range(min(nrows, ncols)):
        while True:
            piv, best = None, None
            for i in range(k, nrows):
                for j in range(k, ncols):
                    v = abs(A[i][j])
                    if v and (best is None or v < best):
                        piv, best = (i, j), v
            if piv is None:
                break
            i0, j0 = piv
            if i0 != k:
                A[k], A[i0] = A[i0], A[k]
                U[k], U[i0] = U[i0], U[k]
            if j0 != k:
                for row in A:
                    row[k], row[j0] = row[j0], row[k]
                for row in V:
                    row[k], row[j0] = row[j0], row[k]
            if A[k][k] < 0:
                A[k] = [-x for x in A[k]]
                U[k] = [-x for x in U[k]]
            dirty = False
            for i in range(k + 1, nrows):
                if A[i][k]:
                    q = A[i][k] // A[k][k]
                    _row_addmul(A, i, k, -q)
                    _row_addmul(U, i, k, -q)
                    if A[i][k]:
                        dirty = True
            for j in range(k + 1, ncols):
                if A[k][j]:
                    q = A[k][j] // A[k][k]
                    _col_addmul(A, j, k, -q)
                    _col_addmul(V, j, k, -q)
                    if A[k][j]:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the remaining submatrix
            p = A[k][k]
            offender = None
            for i in range(k + 1, nrows):
                for j in range(k + 1, ncols):
                    if A[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            _row_addmul(A, k, offender, 1)
            _row_addmul(U, k, offender, 1)
    return A, U, V


def smith_invariants(m) -> list[int]:
    """Nonzero Smith invariants d_1 | d_2 | ... (units included)."""
    S, _, _ = snf_with_transforms(m)
    return [S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i] != 0]


def snf(m) -> list[int]:
    """Smith invariants with unit entries (d_i == 1) suppressed.

    >>> snf([[2, 0], [0, 3]])
    [6]
    """
    return [d for d in smith_invariants(m) if d != 1]


def _balanced(x: int, D: int) -> int:
    x %= D
    return x - D if 2 * x > D else x


def smith_invariants_bounded(m, annihilator: int) -> list[int]:
    """Smith invariants of Z^n / rowspace(m) when `annihilator` kills the
    quotient (equivalently D*Z^n is contained in the row space).

    Entries are kept in balanced residues mod D throughout, so nothing ever
    grows beyond D/2; this is what makes large levels tractable.  Returns
    one invariant per column (units included), divisibility chain ascending.
    """
    D = int(annihilator)
    if D < 1:
        raise ValueError("annihilator must be a positive integer")
    A = [[_balanced(int(x), D) for x in row] for row in m]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    if any(len(r) != ncols for r in A):
        raise ValueError("matrix must be rectangular")
    out: list[int] = []
    for k in range(ncols):
        exhausted = False
        while True:
            piv, best = None, None
            for i in range(k, nrows):
                row = A[i]
                for j in range(k, ncols):
                    v = abs(row[j])
                    if v and (best is None or v < best):
                        piv, best = (i, j), v
            if piv is None:
                exhausted = True  # only the implicit D rows remain
                break
            i0, j0 = piv
            if i0 != k:
                A[k], A[i0] = A[i0], A[k]
            if j0 != k:
                for row in A:
                    row[k], row[j0] = row[j0], row[k]
            if A[k][k] < 0:
                A[k] = [-x for x in A[k]]
            pivot = A[k][k]
            dirty = False
            for i in range(k + 1, nrows):
                if A[i][k]:
                    q = A[i][k] // pivot
                    if q:
                        row_i, row_k = A[i], A[k]
                        for j in range(k, ncols):
                            row_i[j] = _balanced(row_i[j] - q * row_k[j], D)
                    if A[i][k]:
                        dirty = True
            for j in range(k + 1, ncols):
                if A[k][j]:
                    q = A[k][j] // pivot
                    if q:
                        for row in A:
                            row[j] = _balanced(row[j] - q * row[k], D)
                    if A[k][j]:
                        dirty = True
            if dirty:
                continue
            g = gcd(pivot, D)
            offender = None
            for i in range(k + 1, nrows):
                row = A[i]
                for j in range(k + 1, ncols):
                    if row[j] % g:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                A[k][k] = g
                break
            row_k, row_o = A[k], A[offender]
            for j in range(k, ncols):
                row_k[j] = _balanced(row_k[j] + row_o[j], D)
        if exhausted:
            out.extend([D] * (ncols - k))
            break
        out.append(A[k][k])
    return out


def lattice_index(rows, size: int | None = None) -> int:
    """Index of the sublattice spanned by `rows` in the degree-0 lattice.

    `rows` must be n-1 integer vectors of length n, each of coordinate sum
    0 (the lattice spanned by difference vectors e_i - e_{i+1}).  A
    supplementary row (1, 0, ..., 0) of nonzero coordinate sum is appended
    and the absolute determinant of the resulting square matrix is the
    index; 0 signals dependent rows.
    """
    rows = [list(r) for r in rows]
    if rows:
        n = len(rows[0])
    elif size is not None:
        n = size
    else:
        raise ValueError("lattice_index needs `size` when no rows are given")
    if len(rows) != n - 1:
        raise ValueError(f"expected {n - 1} rows of length {n}, got {len(rows)}")
    for row in rows:
        if len(row) != n:
            raise ValueError("rows must all have the same length")
        if sum(row) != 0:
            raise ValueError(f"row {row} has nonzero coordinate sum")
    supplement = [1] + [0] * (n - 1)
    return abs(det_int(rows + [supplement]))
