"""Exact convex geometry over the integer lattice.

Polytopes are stored by their canonical vertex set: lexicographically
sorted extreme points, arbitrary-precision integers throughout. Values
are immutable; every operation is pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from . import exactlp
from .intlinalg import (
    int_kernel,
    mat_vec,
    saturation_basis,
    snf,
    solve_integer_exact,
)

Point = tuple[int, ...]
Covector = tuple[int, ...]


class GeometryError(ValueError):
    pass


def primitive(cov) -> Covector:
    """Divide a covector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in cov:
        g = gcd(g, abs(x))
    if g <= 1:
        return tuple(cov)
    return tuple(x // g for x in cov)


def dot(cov, point) -> int:
    return sum(c * p for c, p in zip(cov, point))


@dataclass(frozen=True)
class IntegralPolytope:
    rank: int
    vertices: tuple[Point, ...]

    def __post_init__(self):
        if not self.vertices:
            raise GeometryError("empty point set")

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    def lexmin(self) -> Point:
        return self.vertices[0]

    def dim(self) -> int:
        dirs = self.direction_vectors()
        if not dirs:
            return 0
        dec = snf(dirs)
        return sum(1 for d in dec.diagonal if d != 0)

    def direction_vectors(self) -> list[list[int]]:
        v0 = self.vertices[0]
        return [[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]]

    def translate(self, t) -> "IntegralPolytope":
        verts = tuple(sorted(tuple(a + b for a, b in zip(v, t)) for v in self.vertices))
        return IntegralPolytope(self.rank, verts)

    def __str__(self):
        return f"IntegralPolytope(rank={self.rank}, vertices={list(self.vertices)})"


@dataclass(frozen=True)
class AffineLatticeMap:
    matrix: tuple[tuple[int, ...], ...]
    offset: Point

    @property
    def source_rank(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_rank(self) -> int:
        return len(self.matrix)

    def apply(self, point) -> Point:
        if len(point) != self.source_rank:
            raise GeometryError("rank mismatch in affine map application")
        img = mat_vec([list(r) for r in self.matrix], list(point))
        return tuple(x + o for x, o in zip(img, self.offset))

    def compose(self, other: "AffineLatticeMap") -> "AffineLatticeMap":
        """self after other."""
        if self.source_rank != other.target_rank:
            raise GeometryError("rank mismatch in composition")
        mat = tuple(
            tuple(sum(self.matrix[i][l] * other.matrix[l][j] for l in range(self.source_rank))
                  for j in range(other.source_rank))
            for i in range(self.target_rank))
        off = tuple(x + o for x, o in
                    zip(mat_vec([list(r) for r in self.matrix], list(other.offset)), self.offset))
        return AffineLatticeMap(mat, off)

    @staticmethod
    def identity(n: int) -> "AffineLatticeMap":
        return AffineLatticeMap(tuple(tuple(1 if i == j else 0 for j in range(n))
                                      for i in range(n)), (0,) * n)


def _check_ranks(points):
    ranks = {len(p) for p in points}
    if len(ranks) != 1:
        raise GeometryError("mixed ranks in point set")
    return ranks.pop()


def _hull_rank2(points):
    """Monotone chain; returns the extreme points only."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull_pts = set(lower) | set(upper)
    return sorted(hull_pts)


def _extreme_filter(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not exactlp.point_in_hull(p, others):
            out.append(p)
    return out


def hull(points) -> IntegralPolytope:
    """Convex hull with canonical (sorted, extreme-only) vertex set."""
    pts = [tuple(int(c) for c in p) for p in points]
    if not pts:
        raise GeometryError("empty point set")
    rank = _check_ranks(pts)
    if rank == 0:
        return IntegralPolytope(0, ((),))
    if rank == 1:
        xs = [p[0] for p in pts]
        lo, hi = min(xs), max(xs)
        verts = ((lo,),) if lo == hi else ((lo,), (hi,))
        return IntegralPolytope(1, verts)
    if rank == 2:
        return IntegralPolytope(2, tuple(_hull_rank2(pts)))
    return IntegralPolytope(rank, tuple(_extreme_filter(pts)))


def minkowski_sum(p: IntegralPolytope, q: IntegralPolytope) -> IntegralPolytope:
    if p.rank != q.rank:
        raise GeometryError("rank mismatch in Minkowski sum")
    sums = {tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices}
    return hull(sums)


def face(p: IntegralPolytope, cov) -> IntegralPolytope:
    if len(cov) != p.rank:
        raise GeometryError("rank mismatch in face")
    values = [dot(cov, v) for v in p.vertices]
    m = max(values)
    verts = tuple(v for v, val in zip(p.vertices, values) if val == m)
    return IntegralPolytope(p.rank, verts)


def support(p: IntegralPolytope, cov) -> int:
    if len(cov) != p.rank:
        raise GeometryError("rank mismatch in support")
    return max(dot(cov, v) for v in p.vertices)


def seminorm(p: IntegralPolytope, cov) -> int:
    return support(p, cov) + support(p, tuple(-c for c in cov))


def reflect(p: IntegralPolytope) -> IntegralPolytope:
    verts = tuple(sorted(tuple(-c for c in v) for v in p.vertices))
    return IntegralPolytope(p.rank, verts)


def pushforward(f: AffineLatticeMap, p: IntegralPolytope) -> IntegralPolytope:
    if f.source_rank != p.rank:
        raise GeometryError("rank mismatch in pushforward")
    return hull([f.apply(v) for v in p.vertices])


def _cofactor_normal(rows):
    """Primitive integer kernel vector of a (d-1) x d integer matrix."""
    d = len(rows) + 1
    normal = []
    for j in range(d):
        minor = [[row[c] for c in range(d) if c != j] for row in rows]
        det = 1
        # small exact determinant via fraction-free expansion
        from .intlinalg import int_det
        det = int_det(minor) if minor else 1
        normal.append(det if j % 2 == 0 else -det)
    if all(x == 0 for x in normal):
        return None
    return primitive(normal)


def _facets_fulldim(vertices, d):
    """Facets of a full-dimensional polytope in Z^d given by its vertices.

    Returns a sorted list of (primitive outer normal, constant).
    """
    verts = list(vertices)
    if d == 1:
        xs = [v[0] for v in verts]
        return [((-1,), -min(xs)), ((1,), max(xs))]
    found = {}
    for combo in itertools.combinations(verts, d):
        base = combo[0]
        rows = [[a - b for a, b in zip(v, base)] for v in combo[1:]]
        normal = _cofactor_normal(rows)
        if normal is None:
            continue
        vals = [dot(normal, v) for v in verts]
        c0 = dot(normal, base)
        if all(v <= c0 for v in vals):
            found[normal] = c0
        elif all(v >= c0 for v in vals):
            neg = tuple(-x for x in normal)
            found[neg] = -c0
    return sorted(found.items())


def _pullback_covector(basis_cols, psi):
    """Covector phi on Z^n with phi . B = psi for a saturated basis B (n x d)."""
    n = len(basis_cols)
    d = len(basis_cols[0]) if basis_cols else 0
    # Solve B^T phi^T = psi^T over the integers.
    bt = [[basis_cols[i][j] for i in range(n)] for j in range(d)]
    phi = solve_integer_exact(bt, list(psi))
    if phi is None:
        raise GeometryError("saturated basis pullback failed")
    return tuple(phi)


def facet_description(p: IntegralPolytope):
    """Exact H-description of a (possibly lower-dimensional) polytope.

    Returns (equalities, inequalities): lists of (covector, c) meaning
    phi(x) == c resp. phi(x) <= c, whose simultaneous solution set is
    exactly P.
    """
    n = p.rank
    v0 = p.vertices[0]
    if n == 0:
        return [], []
    dirs = p.direction_vectors()
    if not dirs:
        eqs = [(tuple(1 if j == i else 0 for j in range(n)), v0[i]) for i in range(n)]
        return eqs, []
    kernel = int_kernel(dirs) if dirs else []
    equalities = [(tuple(k), dot(k, v0)) for k in kernel]
    d = n - len(kernel)
    if d == n:
        return equalities, _facets_fulldim(p.vertices, n)
    basis = saturation_basis(dirs, n)  # d vectors of length n
    basis_cols = [[basis[j][i] for j in range(d)] for i in range(n)]  # n x d
    # coordinates of each vertex in the basis
    bmat = [[basis[j][i] for j in range(d)] for i in range(n)]
    coords = []
    for v in p.vertices:
        diff = [a - b for a, b in zip(v, v0)]
        z = solve_integer_exact(bmat, diff)
        if z is None:
            raise GeometryError("vertex outside saturated direction lattice")
        coords.append(tuple(z))
    ineqs = []
    for psi, c in _facets_fulldim(coords, d):
        phi = _pullback_covector(basis_cols, psi)
        ineqs.append((phi, c + dot(phi, v0)))
    return equalities, sorted(ineqs)


def facet_normals(p: IntegralPolytope):
    """Primitive outer facet normals with constants.

    For lower-dimensional polytopes these describe P only within its
    affine hull; combine with the equalities from facet_description for
    the exact solution set. A single point yields the empty list.
    """
    return facet_description(p)[1]


def contains_point(p: IntegralPolytope, point) -> bool:
    eqs, ineqs = facet_description(p)
    return (all(dot(phi, point) == c for phi, c in eqs)
            and all(dot(phi, point) <= c for phi, c in ineqs))


def subset(p: IntegralPolytope, q: IntegralPolytope) -> bool:
    """Is P contained in Q? Exact, via Q's facet inequalities."""
    if p.rank != q.rank:
        raise GeometryError("rank mismatch in subset")
    eqs, ineqs = facet_description(q)
    for v in p.vertices:
        if not all(dot(phi, v) == c for phi, c in eqs):
            return False
        if not all(dot(phi, v) <= c for phi, c in ineqs):
            return False
    return True


def polytope_coords(p: IntegralPolytope):
    """Full-dimensional model of P: (coords polytope in Z^d, basis, base point).

    coords are taken relative to a saturated basis of P's direction
    lattice, so hull(coords) is full-dimensional in Z^d. For a point,
    d = 0.
    """
    n = p.rank
    v0 = p.vertices[0]
    dirs = p.direction_vectors()
    if not dirs:
        return IntegralPolytope(0, ((),)), [], v0
    basis = saturation_basis(dirs, n)
    d = len(basis)
    bmat = [[basis[j][i] for j in range(d)] for i in range(n)]
    coords = []
    for v in p.vertices:
        z = solve_integer_exact(bmat, [a - b for a, b in zip(v, v0)])
        if z is None:
            raise GeometryError("vertex outside saturated direction lattice")
        coords.append(tuple(z))
    return IntegralPolytope(d, tuple(sorted(coords))), basis, v0
