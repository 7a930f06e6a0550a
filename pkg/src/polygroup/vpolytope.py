"""The integral polytope group and its translation quotient.

Elements are formal differences pos - neg of integral polytopes. The
representation is not unique, so all predicates here are defined through
Minkowski sums of representatives, never through the raw parts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd
from typing import Optional

from . import exactlp
from .intlinalg import solve_diophantine
from .lattice import (
    AffineLatticeMap,
    GeometryError,
    IntegralPolytope,
    dot,
    face,
    facet_description,
    hull,
    minkowski_sum,
    polytope_coords,
    primitive,
    pushforward,
    reflect,
    seminorm,
    subset,
    support,
)

ZERO_BUDGET_DEFAULT = 200000


def origin_polytope(rank: int) -> IntegralPolytope:
    return IntegralPolytope(rank, ((0,) * rank,))


@dataclass(frozen=True)
class VirtualPolytope:
    pos: IntegralPolytope
    neg: IntegralPolytope

    def __post_init__(self):
        if self.pos.rank != self.neg.rank:
            raise GeometryError("rank mismatch between pos and neg parts")

    @property
    def rank(self) -> int:
        return self.pos.rank

    @staticmethod
    def zero(rank: int) -> "VirtualPolytope":
        z = origin_polytope(rank)
        return VirtualPolytope(z, z)

    @staticmethod
    def from_polytope(p: IntegralPolytope) -> "VirtualPolytope":
        return VirtualPolytope(p, origin_polytope(p.rank))


def vp_add(x: VirtualPolytope, y: VirtualPolytope) -> VirtualPolytope:
    if x.rank != y.rank:
        raise GeometryError("rank mismatch in vp_add")
    return VirtualPolytope(minkowski_sum(x.pos, y.pos), minkowski_sum(x.neg, y.neg))


def vp_neg(x: VirtualPolytope) -> VirtualPolytope:
    return VirtualPolytope(x.neg, x.pos)


def vp_sub(x: VirtualPolytope, y: VirtualPolytope) -> VirtualPolytope:
    return vp_add(x, vp_neg(y))


def involution(x: VirtualPolytope) -> VirtualPolytope:
    return VirtualPolytope(reflect(x.pos), reflect(x.neg))


def vp_equal(x: VirtualPolytope, y: VirtualPolytope) -> bool:
    if x.rank != y.rank:
        raise GeometryError("rank mismatch in vp_equal")
    return minkowski_sum(x.pos, y.neg) == minkowski_sum(y.pos, x.neg)


def _normalize_to_origin(p: IntegralPolytope) -> IntegralPolytope:
    m = p.lexmin()
    return p.translate(tuple(-c for c in m))


def pt_equal(x: VirtualPolytope, y: VirtualPolytope) -> bool:
    """Equality in the translation quotient."""
    if x.rank != y.rank:
        raise GeometryError("rank mismatch in pt_equal")
    a = minkowski_sum(x.pos, y.neg)
    b = minkowski_sum(y.pos, x.neg)
    return _normalize_to_origin(a) == _normalize_to_origin(b)


def pt_is_zero(x: VirtualPolytope) -> bool:
    return pt_equal(x, VirtualPolytope.zero(x.rank))


@dataclass(frozen=True)
class TranslationClass:
    """A virtual polytope up to integral translation, stored normalized."""

    vp: VirtualPolytope

    @staticmethod
    def of(x: VirtualPolytope) -> "TranslationClass":
        return TranslationClass(VirtualPolytope(_normalize_to_origin(x.pos),
                                                _normalize_to_origin(x.neg)))

    @property
    def rank(self) -> int:
        return self.vp.rank

    def __eq__(self, other):
        if not isinstance(other, TranslationClass):
            return NotImplemented
        return pt_equal(self.vp, other.vp)

    def __hash__(self):  # classes have non-unique reps; sums make them unique
        a = minkowski_sum(self.vp.pos, reflect(self.vp.neg))
        return hash(_normalize_to_origin(a).vertices)

    def add(self, other: "TranslationClass") -> "TranslationClass":
        return TranslationClass.of(vp_add(self.vp, other.vp))

    def neg(self) -> "TranslationClass":
        return TranslationClass.of(vp_neg(self.vp))

    def sub(self, other: "TranslationClass") -> "TranslationClass":
        return self.add(other.neg())

    def is_zero(self) -> bool:
        return pt_is_zero(self.vp)


def find_translation_into(a: IntegralPolytope, b: IntegralPolytope):
    """An integral t with a + t contained in b, or None.

    The feasible translations form the rational erosion of b by a; we
    intersect it with the lattice by enumerating the integer points of
    its bounding box.
    """
    n = a.rank
    eqs, ineqs = facet_description(b)
    eq_rows, eq_rhs = [], []
    for phi, c in eqs:
        if seminorm(a, phi) != 0:
            return None
        eq_rows.append(list(phi))
        eq_rhs.append(c - dot(phi, a.vertices[0]))
    ub_rows, ub_rhs = [], []
    for phi, c in ineqs:
        ub_rows.append(list(phi))
        ub_rhs.append(c - support(a, phi))

    if eq_rows:
        sol = solve_diophantine(eq_rows, eq_rhs)
        if sol is None:
            return None
        t0, basis = sol
    else:
        t0, basis = [0] * n, [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    if not basis:
        t = tuple(t0)
        return t if all(dot(r, t) <= c for r, c in zip(ub_rows, ub_rhs)) else None
    if not ub_rows:
        return tuple(t0)

    # rewrite inequalities in the free parameters s: t = t0 + N s
    p = len(basis)
    f_rows, f_rhs = [], []
    for row, c in zip(ub_rows, ub_rhs):
        f_rows.append([dot(row, [basis[j][i] for i in range(n)]) for j in range(p)])
        f_rhs.append(c - dot(row, t0))
    bounds = []
    for j in range(p):
        cvec = [1 if i == j else 0 for i in range(p)]
        st, lo, _ = exactlp.optimize_free(cvec, f_rows, f_rhs)
        if st != exactlp.OPTIMAL:
            return None
        st, hi, _ = exactlp.optimize_free(cvec, f_rows, f_rhs, maximize=True)
        if st != exactlp.OPTIMAL:
            return None
        import math
        bounds.append(range(math.ceil(lo), math.floor(hi) + 1))
    for s in itertools.product(*bounds):
        if all(dot(r, s) <= c for r, c in zip(f_rows, f_rhs)):
            return tuple(x0 + sum(basis[j][i] * s[j] for j in range(p)) for i, x0 in enumerate(t0))
    return None


def leq(x: VirtualPolytope, y: VirtualPolytope) -> bool:
    """Partial order on translation classes: x <= y."""
    if x.rank != y.rank:
        raise GeometryError("rank mismatch in leq")
    a = minkowski_sum(x.pos, y.neg)
    b = minkowski_sum(y.pos, x.neg)
    return find_translation_into(a, b) is not None


def face_map(x: VirtualPolytope, cov) -> VirtualPolytope:
    return VirtualPolytope(face(x.pos, cov), face(x.neg, cov))


def seminorm_map(x: VirtualPolytope, cov) -> int:
    return seminorm(x.pos, cov) - seminorm(x.neg, cov)


# ---------------------------------------------------------------------------
# Detection of genuine polytopes (constructive face recursion)
# ---------------------------------------------------------------------------

def _direction_membership(q: IntegralPolytope, p: IntegralPolytope) -> bool:
    """Do all edge directions of Q lie in the direction span of P?"""
    dirs_p = p.direction_vectors()
    dirs_q = q.direction_vectors()
    if not dirs_q:
        return True
    if not dirs_p:
        return False
    from .intlinalg import int_kernel
    for cov in int_kernel(dirs_p):
        if any(dot(cov, d) != 0 for d in dirs_q):
            return False
    return True


def _segment_data(p: IntegralPolytope):
    """(anchor, primitive direction, length) for a point or segment."""
    if p.is_point:
        return p.vertices[0], None, 0
    a, b = p.vertices[0], p.vertices[-1]
    diff = tuple(y - x for x, y in zip(a, b))
    d = primitive(diff)
    length = next(diff[i] // d[i] for i in range(len(d)) if d[i] != 0)
    return a, d, length


def _solve_difference(p: IntegralPolytope, q: IntegralPolytope):
    """Find S with P = Q + S exactly, else None."""
    if p.dim() <= 1:
        pa, pd, pl = _segment_data(p)
        if q.dim() > 1:
            return None
        qa, qd, ql = _segment_data(q)
        if qd is not None and (pd is None or qd not in (pd, tuple(-c for c in pd))):
            return None
        if ql > pl:
            return None
        if pd is None:
            return hull([tuple(a - b for a, b in zip(pa, qa))])
        # align q's direction with p's
        qlo = face(q, tuple(-c for c in pd)).vertices[0]
        plo = face(p, tuple(-c for c in pd)).vertices[0]
        base = tuple(a - b for a, b in zip(plo, qlo))
        tip = tuple(b + (pl - ql) * d for b, d in zip(base, pd))
        cand = hull([base, tip])
        return cand if minkowski_sum(q, cand) == p else None

    if not _direction_membership(q, p):
        return None

    pc, basis, pv0 = polytope_coords(p)
    n, d = p.rank, pc.rank
    bmat = [[basis[j][i] for j in range(d)] for i in range(n)]
    qv0 = q.vertices[0]
    qcoords = []
    from .intlinalg import solve_integer_exact
    for v in q.vertices:
        z = solve_integer_exact(bmat, [a - b for a, b in zip(v, qv0)])
        if z is None:
            return None
        qcoords.append(tuple(z))
    qc = IntegralPolytope(d, tuple(sorted(qcoords)))

    sc = _solve_fulldim(pc, qc)
    if sc is None:
        return None
    offset = tuple(a - b for a, b in zip(pv0, qv0))
    pts = []
    for z in sc.vertices:
        amb = [sum(basis[j][i] * z[j] for j in range(d)) for i in range(n)]
        pts.append(tuple(a + o for a, o in zip(amb, offset)))
    return hull(pts)


def _solve_fulldim(p: IntegralPolytope, q: IntegralPolytope):
    """Full-dimensional case of the face recursion."""
    if p.dim() <= 1:
        return _solve_difference(p, q)
    pieces = []
    for psi, _ in facet_description(p)[1]:
        sub = _solve_difference(face(p, psi), face(q, psi))
        if sub is None:
            return None
        pieces.extend(sub.vertices)
    cand = hull(pieces)
    return cand if minkowski_sum(q, cand) == p else None


def is_polytope(x: VirtualPolytope) -> Optional[IntegralPolytope]:
    """The unique S with x = S - {0} in P(H), if it exists."""
    return _solve_difference(x.pos, x.neg)


def _candidate_directions(x: VirtualPolytope):
    seen = []
    total = minkowski_sum(x.pos, x.neg)
    eqs, ineqs = facet_description(total)
    for phi, _ in ineqs + eqs:
        for cov in (phi, tuple(-c for c in phi)):
            if cov not in seen:
                seen.append(cov)
    for a, b in itertools.combinations(list(seen), 2):
        s = primitive(tuple(u + v for u, v in zip(a, b)))
        if any(c != 0 for c in s) and s not in seen:
            seen.append(s)
    return seen


def is_polytope_certified(x: VirtualPolytope, max_directions: int | None = None):
    """(S, None) on success; (None, certificate direction) on failure.

    The certificate names a covector whose face difference is itself not
    a polytope. The zero covector is always a valid (trivial)
    certificate, and is used when no proper direction is found among the
    sampled candidates. max_directions caps the certificate search.
    """
    s = _solve_difference(x.pos, x.neg)
    if s is not None:
        return s, None
    candidates = _candidate_directions(x)
    if max_directions is not None:
        candidates = candidates[:max_directions]
    for cov in candidates:
        fx = face_map(x, cov)
        shrinks = fx.pos != x.pos or fx.neg != x.neg
        if shrinks and _solve_difference(fx.pos, fx.neg) is None:
            return None, cov
    return None, (0,) * x.rank


# ---------------------------------------------------------------------------
# Polygon edge-decomposition oracle (rank 2)
# ---------------------------------------------------------------------------

def polygon_edges(p: IntegralPolytope) -> dict:
    """Counterclockwise primitive edge directions with lengths.

    Segments contribute both orientations; points contribute nothing.
    """
    if p.rank != 2:
        raise GeometryError("polygon_edges needs rank 2")
    if p.is_point:
        return {}
    verts = list(p.vertices)
    if len(verts) == 2 or p.dim() == 1:
        a, d, l = _segment_data(p)
        return {d: l, tuple(-c for c in d): l}
    # order vertices counterclockwise around the centroid (exact: use angles
    # via atan2-free sorting by half-plane + cross product)
    cx = sum(v[0] for v in verts)
    cy = sum(v[1] for v in verts)
    m = len(verts)

    import functools

    def cmp(u, v):
        ux, uy = u[0] * m - cx, u[1] * m - cy
        vx, vy = v[0] * m - cx, v[1] * m - cy
        hu = 0 if (uy > 0 or (uy == 0 and ux > 0)) else 1
        hv = 0 if (vy > 0 or (vy == 0 and vx > 0)) else 1
        if hu != hv:
            return hu - hv
        cr = ux * vy - uy * vx
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    ordered = sorted(verts, key=functools.cmp_to_key(cmp))
    edges = {}
    for i in range(len(ordered)):
        a = ordered[i]
        b = ordered[(i + 1) % len(ordered)]
        diff = (b[0] - a[0], b[1] - a[1])
        d = primitive(diff)
        length = max(abs(diff[0]), abs(diff[1])) // max(abs(d[0]), abs(d[1]))
        edges[d] = edges.get(d, 0) + length
    return edges


def polygon_from_edges(edges: dict, rank: int = 2) -> IntegralPolytope:
    """Rebuild a polygon (anchored at the origin) from CCW edge data."""
    items = [(d, l) for d, l in edges.items() if l > 0]
    if not items:
        return origin_polytope(rank)

    import functools

    def cmp(u, v):
        hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
        hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
        if hu != hv:
            return hu - hv
        cr = u[0] * v[1] - u[1] * v[0]
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    items.sort(key=functools.cmp_to_key(lambda a, b: cmp(a[0], b[0])))
    pts = [(0, 0)]
    for d, l in items:
        last = pts[-1]
        pts.append((last[0] + l * d[0], last[1] + l * d[1]))
    closure = pts[-1]
    if closure != (0, 0):
        raise GeometryError("edge data does not close up")
    return hull(pts)


def summand_rank2(p: IntegralPolytope, q: IntegralPolytope):
    """Edge-decomposition oracle: S with P = Q + S up to translation."""
    ep = polygon_edges(p)
    eq = polygon_edges(q)
    residual = dict(ep)
    for d, l in eq.items():
        if residual.get(d, 0) < l:
            return None
        residual[d] = residual[d] - l
    try:
        s = polygon_from_edges(residual)
    except GeometryError:
        return None
    if _normalize_to_origin(minkowski_sum(q, s)) != _normalize_to_origin(p):
        return None
    return s


# ---------------------------------------------------------------------------
# Antisymmetric decomposition: realizing kernel elements of id+* as Y - *Y
# ---------------------------------------------------------------------------

class DecompositionError(ValueError):
    pass


def _halve_polytope(z: IntegralPolytope):
    """Y with Y + Y = Z up to integral translation, or None."""
    n = z.rank
    v0 = z.vertices[0]
    par = tuple(c % 2 for c in v0)
    if any(tuple(c % 2 for c in v) != par for v in z.vertices):
        return None
    half = hull([tuple((c - o) // 2 for c, o in zip(v, v0)) for v in z.vertices])
    check = z.translate(tuple(-c for c in v0))
    if minkowski_sum(half, half) != check:
        return None
    return half


def decompose_antisymmetric(x: VirtualPolytope) -> IntegralPolytope:
    """A polytope Y with x = (Y - {0}) - (*Y - {0}) in the quotient.

    Requires x to lie in the kernel of id + *.
    """
    if not pt_is_zero(vp_add(x, involution(x))):
        raise DecompositionError("not in kernel of id+*")
    z = minkowski_sum(x.pos, reflect(x.neg))
    y = _halve_polytope(z)
    if y is None and x.rank == 2:
        w = polygon_edges(x.pos)
        for d, l in polygon_edges(x.neg).items():
            w[tuple(-c for c in d)] = w.get(tuple(-c for c in d), 0) + l
        res = {}
        for d, l in list(w.items()):
            rev = tuple(-c for c in d)
            m = l - w.get(rev, 0)
            if m > 0:
                res[d] = m
        y = polygon_from_edges(res)
    if y is None:
        # symmetric padding: try small centrally symmetric correctors
        n = x.rank
        segs = [hull([tuple(0 for _ in range(n)),
                      tuple(1 if j == i else 0 for j in range(n))]) for i in range(n)]
        for r in range(1, n + 1):
            for combo in itertools.combinations(range(n), r):
                m = origin_polytope(n)
                for i in combo:
                    m = minkowski_sum(m, minkowski_sum(segs[i], reflect(segs[i])))
                y = _halve_polytope(minkowski_sum(z, m))
                if y is not None:
                    break
            if y is not None:
                break
    if y is None:
        raise DecompositionError("no integral antisymmetric witness found")
    wit = vp_sub(VirtualPolytope.from_polytope(y),
                 VirtualPolytope.from_polytope(reflect(y)))
    if not pt_equal(x, wit):
        raise DecompositionError("witness verification failed")
    return y


# ---------------------------------------------------------------------------
# Relative monoid explorer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubLattice:
    basis: tuple[tuple[int, ...], ...]  # columns are generators, n x r

    @property
    def ambient_rank(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis[0]) if self.basis else 0

    def embed(self, coords) -> tuple:
        return tuple(sum(self.basis[i][j] * coords[j] for j in range(self.rank))
                     for i in range(self.ambient_rank))


@dataclass(frozen=True)
class RelativeMonoidResult:
    status: str  # "yes" | "no_within_bound" | "inconclusive"
    p_witness: Optional[IntegralPolytope] = None
    q_witness: Optional[IntegralPolytope] = None


def in_relative_monoid(x: VirtualPolytope, g: SubLattice, bound: int,
                       budget: int = ZERO_BUDGET_DEFAULT) -> RelativeMonoidResult:
    """Bounded search for x = P - Q with Q supported on the sublattice G."""
    if g.ambient_rank != x.rank:
        raise GeometryError("sublattice rank mismatch")
    r = g.rank
    box = list(itertools.product(range(-bound, bound + 1), repeat=r))
    work = 0
    seen = set()
    for size in range(1, len(box) + 1):
        for combo in itertools.combinations(box, size):
            work += 1
            if work > budget:
                return RelativeMonoidResult("inconclusive")
            pts = [g.embed(c) for c in combo]
            q = hull(pts)
            key = _normalize_to_origin(q).vertices
            if key in seen:
                continue
            seen.add(key)
            cand = vp_add(x, VirtualPolytope.from_polytope(q))
            s = is_polytope(cand)
            if s is not None:
                return RelativeMonoidResult("yes", p_witness=s, q_witness=q)
    return RelativeMonoidResult("no_within_bound")


# ---------------------------------------------------------------------------
# Random instance generators (fixed-seed, part of the public test API)
# ---------------------------------------------------------------------------

def random_polytope(rng: random.Random, rank: int, npoints: int = 5,
                    box: int = 4) -> IntegralPolytope:
    pts = [tuple(rng.randint(-box, box) for _ in range(rank)) for _ in range(npoints)]
    return hull(pts)


def random_virtual(rng: random.Random, rank: int, npoints: int = 5,
                   box: int = 4) -> VirtualPolytope:
    return VirtualPolytope(random_polytope(rng, rank, npoints, box),
                           random_polytope(rng, rank, npoints, box))


def random_genuine_pair(rng: random.Random, rank: int = 2):
    """(x, S) with x = (Q+S) - Q built from its own answer."""
    q = random_polytope(rng, rank, rng.randint(2, 5), 3)
    s = random_polytope(rng, rank, rng.randint(2, 5), 3)
    return VirtualPolytope(minkowski_sum(q, s), q), s
