import random

from gen import (
    HEISENBERG,
    SOL,
    commutative_det,
    invertible_product,
    rand_element,
    random_matrix,
)
from polygroup.grouprings import (
    GroupRingElement,
    TwistedGroup,
    element_polytope,
    gr_mul,
)
from polygroup.skewlaurent import (
    SkewField,
    SkewLaurentPoly,
    common_right_multiple,
    dieudonne_det,
    gcrd,
    matrix_polytope,
    rank_over_skew_field,
    skew_divmod,
)


def to_skew(a, g):
    return SkewLaurentPoly.from_group_ring(a, g)


def rand_skew(g, rng, maxterms=3):
    return to_skew(rand_element(g, rng, maxterms), g)


def test_group_ring_roundtrip():
    rng = random.Random(0)
    g = TwistedGroup.make(2, HEISENBERG)
    for _ in range(20):
        a = rand_element(g, rng, 3)
        p = to_skew(a, g)
        num, den = p.to_group_ring_pair()
        # num * den^{-1} recovers a: num == a * den
        assert num == gr_mul(a, den, g)


def test_skew_ring_multiplication_is_associative():
    rng = random.Random(1)
    g = TwistedGroup.make(2, HEISENBERG)
    for _ in range(15):
        a, b, c = (rand_skew(g, rng, 2) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_skew_mul_respects_group_ring():
    rng = random.Random(2)
    for twist in (HEISENBERG, SOL):
        g = TwistedGroup.make(2, twist)
        for _ in range(10):
            a = rand_element(g, rng, 2)
            b = rand_element(g, rng, 2)
            assert to_skew(a, g) * to_skew(b, g) == to_skew(gr_mul(a, b, g), g)


def test_skew_divmod_identities():
    rng = random.Random(3)
    g = TwistedGroup.make(2, HEISENBERG)
    for _ in range(25):
        a = rand_skew(g, rng, 3)
        b = rand_skew(g, rng, 2)
        if b.is_zero:
            continue
        q, r = skew_divmod(a, b)
        assert q * b + r == a
        assert r.is_zero or r.span() < b.span()
        q2, r2 = skew_divmod(a, b, right=True)
        assert b * q2 + r2 == a
        assert r2.is_zero or r2.span() < b.span()


def test_gcrd_divides_both():
    rng = random.Random(4)
    g = TwistedGroup.make(2, HEISENBERG)
    for _ in range(15):
        a = rand_skew(g, rng, 2)
        b = rand_skew(g, rng, 2)
        if a.is_zero or b.is_zero:
            continue
        d = gcrd(a, b)
        _, ra = skew_divmod(a, d)
        _, rb = skew_divmod(b, d)
        assert ra.is_zero and rb.is_zero


def test_gcrd_detects_common_factor():
    rng = random.Random(5)
    g = TwistedGroup.make(2, HEISENBERG)
    for _ in range(10):
        c = rand_skew(g, rng, 2)
        if c.is_zero or c.is_unit:
            continue
        a = rand_skew(g, rng, 2) * c
        b = rand_skew(g, rng, 2) * c
        if a.is_zero or b.is_zero:
            continue
        d = gcrd(a, b)
        _, r = skew_divmod(d, c)
        # c is a right divisor of the gcrd
        assert r.is_zero


def test_common_right_multiple():
    rng = random.Random(6)
    g = TwistedGroup.make(2, HEISENBERG)
    for _ in range(15):
        a = rand_skew(g, rng, 2)
        b = rand_skew(g, rng, 2)
        if a.is_zero or b.is_zero:
            continue
        s, t = common_right_multiple(a, b)
        assert not s.is_zero and not t.is_zero
        assert a * s == b * t


def test_skew_field_axioms():
    rng = random.Random(7)
    g = TwistedGroup.make(2, HEISENBERG)
    one = SkewField.one(g)
    zero = SkewField.zero(g)
    for _ in range(10):
        a = SkewField.make(rand_skew(g, rng, 2), rand_skew(g, rng, 1))
        b = SkewField.make(rand_skew(g, rng, 2), rand_skew(g, rng, 1))
        c = SkewField.make(rand_skew(g, rng, 1), rand_skew(g, rng, 1))
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a + zero == a
        assert a * one == a and one * a == a
        assert (a - a).is_zero
        if not a.is_zero:
            assert a * a.inverse() == one
            assert a.inverse() * a == one


def test_dieudonne_det_triangular_and_swap():
    g = TwistedGroup.make(2, HEISENBERG)
    one = GroupRingElement.one(2)
    zero = GroupRingElement.zero(2)
    a = rand_element(g, random.Random(8), 2)
    b = rand_element(g, random.Random(9), 2)
    det = dieudonne_det([[a, one], [zero, b]], g)
    assert det is not None
    want = element_polytope(a, g).add(element_polytope(b, g))
    assert det.polytope(g) == want
    # a row swap only flips the sign
    det2 = dieudonne_det([[zero, b], [a, one]], g)
    assert det2.sign == -det.sign
    assert det2.polytope(g) == want


def test_dieudonne_det_singular():
    g = TwistedGroup.make(2, HEISENBERG)
    a = rand_element(g, random.Random(10), 2)
    assert dieudonne_det([[a, a], [a, a]], g) is None


def test_dieudonne_matches_commutative_oracle():
    rng = random.Random(11)
    g = TwistedGroup.make(2, [[1, 0], [0, 1]])
    checked = 0
    for _ in range(15):
        m = random_matrix(g, rng, 2)
        cdet = commutative_det(m, g)
        det = dieudonne_det(m, g)
        if cdet.is_zero:
            assert det is None
            continue
        assert det is not None
        assert det.polytope(g) == element_polytope(cdet, g)
        checked += 1
    assert checked >= 5


def test_det_multiplicative_on_polytope_level():
    rng = random.Random(12)
    g = TwistedGroup.make(2, HEISENBERG)
    from gen import gr_mat_mul
    for _ in range(5):
        a = invertible_product(g, rng, 2, 3)
        b = invertible_product(g, rng, 2, 3)
        pa = matrix_polytope(a, g)
        pb = matrix_polytope(b, g)
        pab = matrix_polytope(gr_mat_mul(a, b, g), g)
        assert pab == pa.add(pb)


def test_rank_over_skew_field():
    rng = random.Random(13)
    g = TwistedGroup.make(2, HEISENBERG)
    a = rand_element(g, rng, 2)
    b = rand_element(g, rng, 2)
    zero = GroupRingElement.zero(2)
    assert rank_over_skew_field([[a, zero], [zero, b]], g) == 2
    assert rank_over_skew_field([[a, b]], g) == 1
    # duplicated row collapses
    assert rank_over_skew_field([[a, b], [a, b]], g) == 1
    # left multiple of a row collapses
    c = rand_element(g, rng, 2)
    row2 = [gr_mul(c, a, g), gr_mul(c, b, g)]
    assert rank_over_skew_field([[a, b], row2], g) == 1


def test_rank_matches_commutative_oracle_untwisted():
    import sympy
    rng = random.Random(14)
    g = TwistedGroup.make(2, [[1, 0], [0, 1]])
    x, y, u = sympy.symbols("x y u")
    for _ in range(8):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        mat = [[rand_element(g, rng, 2) if rng.random() < 0.8
                else GroupRingElement.zero(2) for _ in range(m)]
               for _ in range(n)]
        sm = sympy.Matrix(
            [[sum(sympy.Rational(str(c)) * x**v[0] * y**v[1] * u**e
                  for (v, e), c in a.terms) for a in row] for row in mat])
        assert rank_over_skew_field(mat, g) == sm.rank()
