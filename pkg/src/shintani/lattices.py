"""Integer matrix utilities for rank <= 2 lattices: Hermite and Smith normal
forms with transformation matrices, and coset enumeration for finite
quotients."""

from __future__ import annotations

import math
from itertools import product


def hnf_rows(rows):
    """Row Hermite normal form of an integer matrix with g columns (g = 1, 2).

    Returns a list of g pivot rows in upper-triangular form
    [[a, b], [0, c]] with a, c > 0 and 0 <= b < c (g = 2), or [[a]] (g = 1).
    The input rows must span a finite-index sublattice of Z^g.
    """
    g = len(rows[0])
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        raise ValueError("zero lattice")
    if g == 1:
        a = 0
        for r in rows:
            a = math.gcd(a, r[0])
        return [[a]]
    # column 0 pivot via gcd of all first entries
    work = [r[:] for r in rows]
    while True:
        nz = [r for r in work if r[0] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda r: abs(r[0]))
        pivot = nz[0]
        for r in nz[1:]:
            q = r[0] // pivot[0]
            r[0] -= q * pivot[0]
            r[1] -= q * pivot[1]
        work = [r for r in work if any(r)]
    first = [r for r in work if r[0] != 0]
    others = [r for r in work if r[0] == 0]
    if not first or not others:
        raise ValueError("rows do not span a rank-2 lattice")
    a, b = first[0]
    c = 0
    for r in others:
        c = math.gcd(c, r[1])
    if a < 0:
        a, b = -a, -b
    if c < 0:
        c = -c
    b %= c
    return [[a, b], [0, c]]


def det2(m):
    if len(m) == 1:
        return m[0][0]
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_inv_unimodular(a):
    """Inverse of a 1x1 or 2x2 integer matrix with det +-1."""
    d = det2(a)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    if len(a) == 1:
        return [[d]]
    return [[a[1][1] * d, -a[0][1] * d], [-a[1][0] * d, a[0][0] * d]]


def smith_form(a):
    """Smith normal form of a nonsingular integer matrix (g = 1, 2).

    Returns (U, D, V) with U * a * V = D = diag(d1, ..., dg), di > 0,
    d1 | d2, and U, V unimodular.
    """
    g = len(a)
    if g == 1:
        d = a[0][0]
        s = 1 if d >= 0 else -1
        return [[s]], [[abs(d)]], [[1]]
    A = [row[:] for row in a]
    U = [[1, 0], [0, 1]]
    V = [[1, 0], [0, 1]]

    def row_op(i, j, q):  # row_i -= q * row_j
        A[i][0] -= q * A[j][0]
        A[i][1] -= q * A[j][1]
        U[i][0] -= q * U[j][0]
        U[i][1] -= q * U[j][1]

    def col_op(i, j, q):  # col_i -= q * col_j
        A[0][i] -= q * A[0][j]
        A[1][i] -= q * A[1][j]
        V[0][i] -= q * V[0][j]
        V[1][i] -= q * V[1][j]

    def swap_rows():
        A[0], A[1] = A[1], A[0]
        U[0], U[1] = U[1], U[0]

    def swap_cols():
        A[0][0], A[0][1] = A[0][1], A[0][0]
        A[1][0], A[1][1] = A[1][1], A[1][0]
        V[0][0], V[0][1] = V[0][1], V[0][0]
        V[1][0], V[1][1] = V[1][1], V[1][0]

    for _ in range(500):
        # move a nonzero entry of minimal absolute value to (0, 0)
        entries = [(abs(A[i][j]), i, j) for i in range(2) for j in range(2) if A[i][j]]
        _, pi, pj = min(entries)
        if pi == 1:
            swap_rows()
        if pj == 1:
            swap_cols()
        if A[1][0] != 0:
            row_op(1, 0, A[1][0] // A[0][0])
            continue
        if A[0][1] != 0:
            col_op(1, 0, A[0][1] // A[0][0])
            continue
        if A[1][1] % A[0][0] != 0:
            col_op(0, 1, -1)  # reintroduce a residue to shrink the gcd
            continue
        break
    else:
        raise RuntimeError("smith_form did not converge")
    if A[0][0] < 0:
        A[0][0] = -A[0][0]
        U[0][0], U[0][1] = -U[0][0], -U[0][1]
    if A[1][1] < 0:
        A[1][1] = -A[1][1]
        U[1][0], U[1][1] = -U[1][0], -U[1][1]
    check = mat_mul(mat_mul(U, [row[:] for row in a]), V)
    assert check == A and A[0][1] == A[1][0] == 0 and A[1][1] % A[0][0] == 0
    return U, A, V


def quotient_data(sub_rows):
    """Data for Z^g / rowspan(sub_rows), sub_rows nonsingular integer.

    Returns (divisors, V, Vinv) where z in rowspan iff (z @ V)_i = 0 mod d_i,
    coset representatives are r @ Vinv for r in prod(range(d_i)).
    """
    U, D, V = smith_form(sub_rows)
    divisors = [D[i][i] for i in range(len(D))]
    Vinv = mat_inv_unimodular(V)
    return divisors, V, Vinv


def coset_reps(sub_rows):
    divisors, V, Vinv = quotient_data(sub_rows)
    reps = []
    for r in product(*(range(d) for d in divisors)):
        vec = [sum(r[t] * Vinv[t][j] for t in range(len(r))) for j in range(len(r))]
        reps.append(tuple(vec))
    return reps


def reduce_mod(sub_rows_qdata, z):
    """Canonical representative of z modulo the sublattice (qdata from
    quotient_data)."""
    divisors, V, Vinv = sub_rows_qdata
    g = len(divisors)
    zv = [sum(z[t] * V[t][j] for t in range(g)) % divisors[j] for j in range(g)]
    return tuple(sum(zv[t] * Vinv[t][j] for t in range(g)) for j in range(g))


def solve_integer_2x2(a, rhs):
    """Solve x @ a = rhs over the integers; None if no integral solution."""
    d = det2(a)
    if d == 0:
        raise ValueError("singular matrix")
    if len(a) == 1:
        q, r = divmod(rhs[0], a[0][0])
        return None if r else (q,)
    x0 = rhs[0] * a[1][1] - rhs[1] * a[1][0]
    x1 = -rhs[0] * a[0][1] + rhs[1] * a[0][0]
    if x0 % d or x1 % d:
        return None
    return (x0 // d, x1 // d)
