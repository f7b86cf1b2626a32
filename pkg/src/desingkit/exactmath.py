"""Exact integer and rational linear algebra.

Python ints are arbitrary precision and ``fractions.Fraction`` keeps every
rational in lowest terms with a positive denominator, so those two types
serve as the big-integer and rational carriers throughout the package.
Vectors are tuples of ints; matrices are lists of row lists.

All routines here are pure: inputs are never mutated.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

Vector = tuple
Matrix = list


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy_matrix(A: Sequence[Sequence]) -> Matrix:
    return [list(row) for row in A]


def shape(A: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    for row in A:
        if len(row) != cols:
            raise DomainError("ragged matrix")
    return rows, cols


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    if not A:
        return []
    if len(A[0]) != len(B):
        raise DomainError(f"shape mismatch {len(A[0])} vs {len(B)}")
    if not B:
        return [[] for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_gcd(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries."""
    g = vec_gcd(v)
    if g == 0:
        raise DomainError("zero vector has no primitive representative")
    return tuple(int(x) // g for x in v)


def integral_primitive(v: Sequence[Fraction]) -> Vector:
    """Scale a nonzero rational vector to a primitive integer vector (same direction)."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def det(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n, m = shape(A)
    if n != m:
        raise DomainError(f"determinant of non-square {n}x{m} matrix")
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def hnf(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ A``, ``U`` unimodular, ``H`` in row
    echelon form with positive pivots and entries above each pivot reduced
    into ``[0, pivot)``. Zero rows sit at the bottom.
    """
    m, n = shape(A)
    H = [[int(x) for x in row] for row in A]
    U = identity(m)
    row = 0
    for col in range(n):
        if row == m:
            break
        while True:
            live = [i for i in range(row, m) if H[i][col] != 0]
            if not live:
                break
            p = min(live, key=lambda i: (abs(H[i][col]), i))
            H[row], H[p] = H[p], H[row]
            U[row], U[p] = U[p], U[row]
            done = True
            for i in range(row + 1, m):
                if H[i][col]:
                    q = H[i][col] // H[row][col]
                    H[i] = [a - q * b for a, b in zip(H[i], H[row])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[row])]
                    if H[i][col]:
                        done = False
            if done:
                break
        if H[row][col] == 0:
            continue
        if H[row][col] < 0:
            H[row] = [-a for a in H[row]]
            U[row] = [-a for a in U[row]]
        piv = H[row][col]
        for i in range(row):
            q = H[i][col] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[row])]
                U[i] = [a - q * b for a, b in zip(U[i], U[row])]
        row += 1
    return H, U


def snf(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``S = U @ A @ V``.

    ``S`` is diagonal with nonnegative entries forming a divisibility chain;
    ``U`` and ``V`` are unimodular. The pivot at every stage is an entry of
    smallest nonzero absolute value in the remaining block.
    """
    m, n = shape(A)
    S = [[int(x) for x in row] for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        S[dst] = [a - q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in S:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = S[t][t]
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, S[i][t] // piv)
                    clean = clean and S[i][t] == 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, S[t][j] // piv)
                    clean = clean and S[t][j] == 0
            if not clean:
                continue
            # divisibility: fold an offending row into row t and retry
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return S, U, V


def elementary_divisors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    S, _, _ = snf(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i]]


def _rref(A: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    M = [[Fraction(x) for x in row] for row in A]
    rows, cols = shape(M)
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A or not A[0]:
        return 0
    return len(_rref(A)[1])


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A particular rational solution of ``A x = b`` (free variables set to 0).

    Returns ``None`` when the system is inconsistent.
    """
    rows, cols = shape(A)
    if rows != len(b):
        raise DomainError(f"{rows} equations but right-hand side of length {len(b)}")
    if rows == 0:
        return [Fraction(0)] * cols
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = _rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = R[i][cols]
    return x


def nullspace(A: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Primitive integer basis vectors of the rational kernel of ``A``."""
    if not A:
        n = ncols or 0
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    R, pivots = _rref(A)
    cols = len(R[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(integral_primitive(v))
    return basis


def saturate(rows: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """Canonical basis of ``span(rows) ∩ Z^n`` (rows of its Hermite form)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    S, _, V = snf(rows)
    d = sum(1 for i in range(min(len(S), n)) if S[i][i])
    W = inverse_unimodular(V)
    H, _ = hnf(W[:d])
    return [tuple(r) for r in H if any(r)]


def inverse_unimodular(V: Sequence[Sequence[int]]) -> Matrix:
    n = len(V)
    aug = [list(V[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise DomainError("matrix is singular")
    inv = [row[n:] for row in R]
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise DomainError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def to_fraction(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string."""
    if isinstance(x, bool) or isinstance(x, float):
        raise DomainError(f"not an exact rational: {x!r}")
    return Fraction(x)
