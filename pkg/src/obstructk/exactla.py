"""Exact linear algebra: integer Smith normal form and rational elimination.

Matrices are lists of lists (row major) of Python ints or Fractions. No
floating point anywhere; everything downstream decides class vanishing
through these routines, so exactness is a hard requirement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def copy_matrix(a):
    return [row[:] for row in a]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    if not a or not b:
        return [[] for _ in a] if a else []
    n = len(b)
    p = len(b[0])
    out = []
    for row in a:
        acc = [0] * p
        for k, x in enumerate(row):
            if x == 0:
                continue
            brow = b[k]
            for j in range(p):
                acc[j] += x * brow[j]
        out.append(acc)
    return out


def mat_vec(a, v):
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x != 0 and y != 0:
                s += x * y
        out.append(s)
    return out


@dataclass
class SNFResult:
    """U @ A @ V == D with U, V unimodular and D diagonal, d1 | d2 | ...

    Uinv and Vinv are tracked during the reduction so no matrix inversion
    is ever needed afterwards.
    """

    u: list
    d: list
    v: list
    uinv: list
    vinv: list
    rank: int
    divisors: list  # the nonzero diagonal entries, in order

    @property
    def nrows(self):
        return len(self.u)

    @property
    def ncols(self):
        return len(self.v)


def smith_normal_form(a):
    """Public triple (U, D, V) with U @ A @ V = D. Empty matrices allowed."""
    res = snf(a)
    return res.u, res.d, res.v


def snf(a, ncols=None):
    m = len(a)
    n = len(a[0]) if m else (0 if ncols is None else ncols)
    d = [list(map(int, row)) for row in a]
    u, uinv = identity(m), identity(m)
    v, vinv = identity(n), identity(n)

    def row_add(i, j, c):
        # row_i += c * row_j
        di, dj = d[i], d[j]
        for k in range(n):
            di[k] += c * dj[k]
        ui, uj = u[i], u[j]
        for k in range(m):
            ui[k] += c * uj[k]
        for r in range(m):
            uinv[r][j] -= c * uinv[r][i]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for r in range(m):
            uinv[r][i], uinv[r][j] = uinv[r][j], uinv[r][i]

    def row_negate(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in range(m):
            uinv[r][i] = -uinv[r][i]

    def col_add(j, i, c):
        # col_j += c * col_i
        for r in range(m):
            d[r][j] += c * d[r][i]
        for r in range(n):
            v[r][j] += c * v[r][i]
        vi, vj = vinv[i], vinv[j]
        for k in range(n):
            vi[k] -= c * vj[k]

    def col_swap(i, j):
        for r in range(m):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(n):
            v[r][i], v[r][j] = v[r][j], v[r][i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    t = 0
    while t < min(m, n):
        # move a nonzero entry of least magnitude into the pivot slot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])

        while True:
            # clear column t below the pivot
            for i in range(t + 1, m):
                while d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    if q != 0:
                        row_add(i, t, -q)
                    if d[i][t] != 0:
                        row_swap(t, i)
            # clear row t right of the pivot (may dirty the column again)
            dirty = False
            for j in range(t + 1, n):
                while d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    if q != 0:
                        col_add(j, t, -q)
                    if d[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if dirty or any(d[i][t] != 0 for i in range(t + 1, m)):
                continue
            # enforce d_t | d[i][j] on the remaining block
            p = d[t][t]
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if d[t][t] < 0:
            row_negate(t)
        t += 1

    rank = sum(1 for i in range(min(m, n)) if d[i][i] != 0)
    divisors = [d[i][i] for i in range(rank)]
    return SNFResult(u=u, d=d, v=v, uinv=uinv, vinv=vinv, rank=rank, divisors=divisors)


def rref(a):
    """Reduced row echelon form over Fractions. Returns (R, pivot columns)."""
    m = len(a)
    n = len(a[0]) if m else 0
    r = [[Fraction(x) for x in row] for row in a]
    pivots = []
    row = 0
    for col in range(n):
        pivot = next((i for i in range(row, m) if r[i][col] != 0), None)
        if pivot is None:
            continue
        r[row], r[pivot] = r[pivot], r[row]
        inv = 1 / r[row][col]
        r[row] = [x * inv for x in r[row]]
        for i in range(m):
            if i != row and r[i][col] != 0:
                c = r[i][col]
                r[i] = [x - c * y for x, y in zip(r[i], r[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return r, pivots


def nullspace(a):
    """Basis of the right kernel over the rationals (list of Fraction vectors)."""
    m = len(a)
    n = len(a[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    r, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for row_idx, p in enumerate(pivots):
            vec[p] = -r[row_idx][free]
        basis.append(vec)
    return basis


def solve(a, b):
    """One rational solution of A x = b, or None when inconsistent."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    r, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row_idx, p in enumerate(pivots):
        x[p] = r[row_idx][n]
    return x


def left_nullspace(a):
    """Basis of {u : u A = 0} over the rationals."""
    return nullspace(transpose(a))
