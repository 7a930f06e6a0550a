"""Exact integer matrix utilities.

Everything here works with plain Python ints (arbitrary precision) or
``fractions.Fraction``; no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

IntMatrix = list[list[int]]


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    if a and len(a[0]) != inner:
        raise ValueError("shape mismatch in mat_mul")
    return [[sum(a[i][l] * b[l][j] for l in range(inner)) for j in range(cols)]
            for i in range(rows)]


def mat_vec(a, v):
    if a and len(a[0]) != len(v):
        raise ValueError("shape mismatch in mat_vec")
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_det(a) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination, exact."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def int_det(a) -> int:
    d = mat_det(a)
    assert d.denominator == 1
    return d.numerator


def adjugate_inverse_unimodular(a: IntMatrix) -> IntMatrix:
    """Inverse of a unimodular integer matrix, again integral."""
    n = len(a)
    d = int_det(a)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pc = aug[col][col]
        aug[col] = [x / pc for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    out = []
    for row in inv:
        irow = []
        for x in row:
            assert x.denominator == 1
            irow.append(x.numerator)
        out.append(irow)
    return out


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}."""

    U: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        d = self.D
        return tuple(d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)))


def snf(m_in) -> SmithDecomposition:
    """Smith normal form of an integer matrix, with transformation matrices."""
    rows = len(m_in)
    cols = len(m_in[0]) if rows else 0
    m = [list(map(int, row)) for row in m_in]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in m:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # locate a pivot: smallest nonzero absolute value in the remaining block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best = abs(m[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            cleared = True
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    add_row(i, t, -q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        cleared = False
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    add_col(j, t, -q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        cleared = False
            if cleared:
                break
        # enforce divisibility d_t | m[i][j]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if m[t][t] < 0:
            negate_row(t)
        t += 1

    freeze = lambda mat: tuple(tuple(row) for row in mat)
    return SmithDecomposition(freeze(u), freeze(m), freeze(v))


def int_kernel(m) -> list[list[int]]:
    """Basis of the saturated integer kernel {v : M v = 0}."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return identity_matrix(cols)
    dec = snf(m)
    diag = dec.diagonal
    basis = []
    for j in range(cols):
        if j >= len(diag) or diag[j] == 0:
            basis.append([dec.V[i][j] for i in range(cols)])
    return basis


def saturation_basis(vectors: list[list[int]], rank: int) -> list[list[int]]:
    """Basis of (span(vectors) over Q) intersected with Z^rank."""
    if not vectors:
        return []
    ker = int_kernel(vectors)  # covectors vanishing on all vectors
    if not ker:
        return identity_matrix(rank)
    return int_kernel(ker)


def solve_rational(a, b) -> list[Fraction] | None:
    """One solution of A x = b over Q, or None. A need not be square."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(a[i][j]) for j in range(cols)] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pc = m[r][c]
        m[r] = [x / pc for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return x


def solve_diophantine(a, b):
    """Integer solutions of A t = b.

    Returns (t0, basis) where the full solution set is t0 + Z-span(basis),
    or None if no integer solution exists.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [0] * cols, identity_matrix(cols)
    dec = snf(a)
    ub = mat_vec([list(r) for r in dec.U], list(b))
    diag = dec.diagonal
    z = [0] * cols
    for i in range(rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            if i < cols:
                z[i] = ub[i] // d
    v = [list(r) for r in dec.V]
    t0 = mat_vec(v, z)
    basis = []
    for j in range(cols):
        d = diag[j] if j < len(diag) else 0
        if d == 0:
            basis.append([v[i][j] for i in range(cols)])
    return t0, basis


def solve_integer_exact(a, b) -> list[int] | None:
    """An integer solution of A x = b, or None."""
    res = solve_diophantine(a, b)
    if res is None:
        return None
    return res[0]
