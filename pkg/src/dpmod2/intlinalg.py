"""Exact integer linear algebra: Hermite normal form, kernels, determinants.

Everything here runs on Python integers, so there is no overflow and no
floating-point rounding anywhere in the lattice constructions.
"""

from __future__ import annotations

from fractions import Fraction


def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows as tuples: row echelon with positive pivots and
    entries above each pivot reduced into [0, pivot).  Canonical for the row
    lattice, i.e. two matrices with the same integer row span give the same
    result.
    """
    A = [list(map(int, r)) for r in rows]
    if not A:
        return []
    m, ncols = len(A), len(A[0])
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            while A[i][c]:
                q = A[r][c] // A[i][c]
                A[r] = [a - q * b for a, b in zip(A[r], A[i])]
                A[r], A[i] = A[i], A[r]
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return [tuple(row) for row in A[:r]]


def kernel_basis(coeffs):
    """Canonical basis of the integer kernel of v -> sum(coeffs[i] * v[i]).

    The functional must be nonzero.  Returns HNF rows of the kernel lattice,
    sorted lexicographically, so the basis is identical across runs and
    platforms.
    """
    n = len(coeffs)
    if not any(coeffs):
        raise ValueError("zero functional has no canonical kernel basis")
    # Row-reduce [coeffs_i | e_i]; unimodular row operations keep the row span
    # equal to {(f(a), a) : a in Z^n}, so rows whose first entry reaches 0
    # carry a basis of the kernel in their tail.
    aug = [[int(coeffs[i])] + [1 if j == i else 0 for j in range(n)]
           for i in range(n)]
    tails = [row[1:] for row in hermite_normal_form(aug) if row[0] == 0]
    return sorted(hermite_normal_form(tails))


def det(mat):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    A = [list(map(int, row)) for row in mat]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def is_positive_definite(gram):
    """Sylvester's criterion on a symmetric integer matrix, exactly."""
    n = len(gram)
    return all(det([row[: k + 1] for row in gram[: k + 1]]) > 0
               for k in range(n))


def solve_rational(rows, target):
    """Solve x * rows == target over the rationals.

    `rows` must be linearly independent vectors of equal width.  Returns a
    tuple of Fractions, or None if the target is outside the span.
    """
    m, w = len(rows), len(rows[0])
    if len(target) != w:
        raise ValueError("width mismatch")
    # Augmented system rows^T | target, eliminated over Fraction.
    M = [[Fraction(rows[i][j]) for i in range(m)] + [Fraction(target[j])]
         for j in range(w)]
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, w) if M[i][c]), None)
        if piv is None:
            raise ValueError("rows are linearly dependent")
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(w):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    if any(M[i][m] for i in range(r, w)):
        return None
    return tuple(M[c][m] for c in range(m))


def solve_integer(rows, target):
    """Integer solution x of x * rows == target, or None."""
    sol = solve_rational(rows, target)
    if sol is None or any(f.denominator != 1 for f in sol):
        return None
    return tuple(int(f) for f in sol)
