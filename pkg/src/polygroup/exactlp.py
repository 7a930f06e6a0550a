"""Exact rational linear programming (dense simplex, Bland's rule).

Used for extreme-point filtering of lattice point sets and for bounding
feasible translation regions. Sizes here are small, so a plain tableau
with Fractions is both simple and fast enough.
"""

from __future__ import annotations

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _pivot(tab, basis, row, col):
    pr = tab[row]
    pv = pr[col]
    tab[row] = [x / pv for x in pr]
    for i, r in enumerate(tab):
        if i != row and r[col] != 0:
            f = r[col]
            tab[i] = [x - f * y for x, y in zip(r, tab[row])]
    basis[row] = col


def _simplex_core(tab, basis, ncols):
    """Minimize the objective in tab[-1] (reduced costs). Bland's rule."""
    while True:
        obj = tab[-1]
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return OPTIMAL
        best_row = None
        best_ratio = None
        for i in range(len(tab) - 1):
            if tab[i][col] > 0:
                ratio = tab[i][-1] / tab[i][col]
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[best_row])):
                    best_ratio = ratio
                    best_row = i
        if best_row is None:
            return UNBOUNDED
        _pivot(tab, basis, best_row, col)


def simplex_min(c, a_eq, b_eq):
    """min c.x  s.t.  A x = b, x >= 0.

    Returns (status, value, x). value and x are None unless status is
    OPTIMAL.
    """
    m = len(a_eq)
    n = len(a_eq[0]) if m else len(c)
    a = [[Fraction(x) for x in row] for row in a_eq]
    b = [Fraction(x) for x in b_eq]
    for i in range(m):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]

    # phase 1: artificial variables
    tab = []
    for i in range(m):
        tab.append(a[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]])
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            obj[j] -= tab[i][j]
    for i in range(m):
        obj[n + i] = Fraction(0)
    tab.append(obj)
    basis = [n + i for i in range(m)]
    _simplex_core(tab, basis, n + m)
    if tab[-1][-1] < 0:
        return INFEASIBLE, None, None

    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, i, col)
    keep_rows = [i for i in range(m) if basis[i] < n]
    tab = [[tab[i][j] for j in range(n)] + [tab[i][-1]] for i in keep_rows]
    basis = [basis[i] for i in keep_rows]

    # phase 2
    cf = [Fraction(x) for x in c] + [Fraction(0)]
    obj = list(cf)
    for i, bi in enumerate(basis):
        if obj[bi] != 0:
            f = obj[bi]
            obj = [x - f * y for x, y in zip(obj, tab[i])]
    tab.append(obj)
    status = _simplex_core(tab, basis, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        x[bi] = tab[i][-1]
    value = sum(f * xi for f, xi in zip(cf[:-1], x))
    return OPTIMAL, value, x


def feasible_nonneg(a_eq, b_eq) -> bool:
    """Is {x >= 0 : A x = b} non-empty?"""
    n = len(a_eq[0]) if a_eq else 0
    status, _, _ = simplex_min([0] * n, a_eq, b_eq)
    return status == OPTIMAL


def point_in_hull(point, points) -> bool:
    """Exact test: is `point` in the convex hull of `points`?"""
    pts = list(points)
    if not pts:
        return False
    n = len(point)
    a = [[1] * len(pts)]
    b = [1]
    for coord in range(n):
        a.append([p[coord] for p in pts])
        b.append(point[coord])
    return feasible_nonneg(a, b)


def optimize_free(c, a_ub, b_ub, a_eq=(), b_eq=(), maximize=False):
    """Optimize c.t over {t free : A_ub t <= b_ub, A_eq t = b_eq}.

    Returns (status, value, t) with t rational. Free variables are split
    into differences of nonnegative variables.
    """
    nv = len(c)
    rows = []
    rhs = []
    nslack = len(a_ub)
    for idx, (row, bv) in enumerate(zip(a_ub, b_ub)):
        r = []
        for j in range(nv):
            r.extend([row[j], -row[j]])
        r.extend([1 if s == idx else 0 for s in range(nslack)])
        rows.append(r)
        rhs.append(bv)
    for row, bv in zip(a_eq, b_eq):
        r = []
        for j in range(nv):
            r.extend([row[j], -row[j]])
        r.extend([0] * nslack)
        rows.append(r)
        rhs.append(bv)
    cc = []
    for j in range(nv):
        cj = -c[j] if maximize else c[j]
        cc.extend([cj, -cj])
    cc.extend([0] * nslack)
    status, value, x = simplex_min(cc, rows, rhs)
    if status != OPTIMAL:
        return status, None, None
    t = [x[2 * j] - x[2 * j + 1] for j in range(nv)]
    return OPTIMAL, (-value if maximize else value), t
