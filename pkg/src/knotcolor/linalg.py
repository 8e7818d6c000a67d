"""Exact linear algebra over Z, Z_p and Z[T, T^-1].

Matrices are plain lists of rows.  Integer entries are Python ints, so
there is no overflow anywhere.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt
from typing import Sequence

from .errors import IndexOutOfRange, NonSquare, NotPrime
from .laurent import LaurentPoly

IntMatrix = list[list[int]]
PolyMatrix = list[list[LaurentPoly]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def _check_square(M: Sequence[Sequence]) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise NonSquare(f"expected a square matrix, got {n} rows of lengths {sorted({len(r) for r in M})}")
    return n


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def evaluate(M: Sequence[Sequence[LaurentPoly]], t: int) -> IntMatrix:
    """Substitute the integer ``t`` for ``T`` entrywise."""
    return [[entry(t) for entry in row] for row in M]


def minor(M: Sequence[Sequence], drop_row: int, drop_col: int) -> list[list]:
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if not (0 <= drop_row < rows and 0 <= drop_col < cols):
        raise IndexOutOfRange(f"({drop_row}, {drop_col}) outside a {rows}x{cols} matrix")
    return [
        [x for j, x in enumerate(row) if j != drop_col]
        for i, row in enumerate(M)
        if i != drop_row
    ]


def drop_column(M: Sequence[Sequence], j: int) -> list[list]:
    cols = len(M[0]) if M else 0
    if not 0 <= j < cols:
        raise IndexOutOfRange(f"column {j} outside {cols} columns")
    return [[x for k, x in enumerate(row) if k != j] for row in M]


# determinants


def det_int(M: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = _check_square(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        pivot = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * A[n - 1][n - 1]


def det_poly(M: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant over Z[T, T^-1] by cofactor expansion memoised on column sets."""
    n = _check_square(M)
    rows = [tuple(row) for row in M]

    @lru_cache(maxsize=None)
    def expand(row: int, cols: int) -> LaurentPoly:
        # ``cols`` is a bitmask of the columns still available
        if row == n:
            return LaurentPoly.constant(1)
        total = LaurentPoly()
        sign = 1
        for j in range(n):
            if not cols >> j & 1:
                continue
            entry = rows[row][j]
            if not entry.is_zero():
                sub = expand(row + 1, cols & ~(1 << j))
                if not sub.is_zero():
                    term = entry * sub
                    total = total + term if sign > 0 else total - term
            sign = -sign
        return total

    return expand(0, (1 << n) - 1)


def det_cofactor(M: Sequence[Sequence[int]]) -> int:
    """Naive Laplace expansion along the first row; used as a test oracle."""
    n = _check_square(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum(
        (-1) ** j * M[0][j] * det_cofactor(minor(M, 0, j)) for j in range(n) if M[0][j]
    )


# Smith normal form


def smith_normal_form(M: Sequence[Sequence[int]], transforms: bool = False):
    """Invariant factors of an integer matrix.

    Returns the diagonal ``d_1 | d_2 | ... | d_k`` (``k = min(rows, cols)``,
    nonnegative, zeros last).  With ``transforms=True`` returns
    ``(diagonal, U, V)`` with ``U`` and ``V`` unimodular and ``U M V`` diagonal.
    """
    A = [list(map(int, row)) for row in M]
    r = len(A)
    c = len(A[0]) if r else 0
    U = identity(r) if transforms else None
    V = identity(c) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in A:
            row[dst] += k * row[src]
        if V is not None:
            for row in V:
                row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            pivot = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // pivot))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // pivot))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if A[i][j] % pivot),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
    diag = [A[i][i] for i in range(min(r, c))]
    if transforms:
        return diag, U, V
    return diag


def invariant_factors_by_minors(M: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors from gcds of k-minors; brute force, tests only."""
    from itertools import combinations
    from math import gcd

    r = len(M)
    c = len(M[0]) if r else 0
    out = []
    prev = 1
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = gcd(g, det_cofactor([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            out.extend([0] * (min(r, c) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def kernel_basis_int(M: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the integer kernel {v in Z^cols : M v = 0}, via Smith form."""
    cols = len(M[0]) if M else 0
    if not M:
        return [[int(i == j) for j in range(cols)] for i in range(cols)]
    diag, _, V = smith_normal_form(M, transforms=True)
    diag = diag + [0] * (cols - len(diag))
    return [[V[i][j] for i in range(cols)] for j in range(cols) if diag[j] == 0]


# modular elimination


def rref_mod_p(M: Sequence[Sequence[int]], p: int) -> tuple[IntMatrix, list[int]]:
    """Reduced row echelon form over Z_p and the list of pivot columns."""
    _require_prime(p)
    A = [[x % p for x in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for j in range(cols):
        piv = next((i for i in range(r, rows) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][j], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][j]:
                f = A[i][j]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod_p(M, p)[1])


def nullspace_mod_p(M: Sequence[Sequence[int]], p: int, cols: int | None = None) -> list[list[int]]:
    """Echelon basis of {v : M v = 0 mod p}, one vector per free column."""
    if cols is None:
        cols = len(M[0]) if M else 0
    R, pivots = rref_mod_p(M, p) if M else ([], [])
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        v = [0] * cols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f] % p
        basis.append(v)
    return basis


def rank_int(M: Sequence[Sequence[int]]) -> int:
    return sum(1 for d in smith_normal_form(M) if d)
