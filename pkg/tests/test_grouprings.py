import random
from fractions import Fraction

import pytest

from gen import HEISENBERG, SOL, rand_element
from polygroup.grouprings import (
    GroupRingElement,
    GroupRingError,
    TwistedGroup,
    element_polytope,
    gr_mul,
    h1_projection,
    h1_rank,
    newton_polytope,
    snf,
)
from polygroup.intlinalg import mat_mul
from polygroup.lattice import hull
from polygroup.vpolytope import TranslationClass, VirtualPolytope


def test_snf_decomposition_properties():
    rng = random.Random(1)
    for _ in range(25):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        a = [[rng.randint(-5, 5) for _ in range(m)] for _ in range(n)]
        dec = snf(a)
        lhs = mat_mul(mat_mul(dec.U, a), dec.V)
        for i in range(n):
            for j in range(m):
                want = dec.diagonal[i] if i == j and i < len(dec.diagonal) else 0
                assert lhs[i][j] == want
        # divisibility chain
        d = [x for x in dec.diagonal if x != 0]
        for i in range(len(d) - 1):
            assert d[i + 1] % d[i] == 0


def test_twisted_group_validation():
    with pytest.raises(GroupRingError):
        TwistedGroup.make(2, [[2, 0], [0, 1]])
    with pytest.raises(GroupRingError):
        TwistedGroup.make(2, [[1, 0]])
    g = TwistedGroup.make(2, HEISENBERG)
    assert g.act(1, (0, 1)) == (1, 1)
    assert g.act(-1, g.act(1, (3, 4))) == (3, 4)
    assert g.act(2, (0, 1)) == (2, 1)


def test_h1_ranks():
    assert h1_rank(TwistedGroup.make(0, [])) == 1           # Z
    assert h1_rank(TwistedGroup.make(1, [[1]])) == 2        # Z^2
    assert h1_rank(TwistedGroup.make(2, [[1, 0], [0, 1]])) == 3  # Z^3
    assert h1_rank(TwistedGroup.make(2, HEISENBERG)) == 2
    assert h1_rank(TwistedGroup.make(2, SOL)) == 1


def test_h1_projection_kills_commutator_directions():
    # for the projection to be well defined on H1, (A - I) v must map to 0
    for twist in (HEISENBERG, SOL, [[1, 0], [0, 1]]):
        g = TwistedGroup.make(2, twist)
        proj = h1_projection(g)
        for v in ((1, 0), (0, 1), (2, -3)):
            av = g.act(1, v)
            diff = tuple(a - b for a, b in zip(av, v)) + (0,)
            assert proj.apply(diff) == (0,) * proj.target_rank


def test_group_ring_is_a_ring():
    rng = random.Random(2)
    g = TwistedGroup.make(2, HEISENBERG)
    one = GroupRingElement.one(2)
    for _ in range(25):
        a = rand_element(g, rng)
        b = rand_element(g, rng)
        c = rand_element(g, rng)
        assert gr_mul(gr_mul(a, b, g), c, g) == gr_mul(a, gr_mul(b, c, g), g)
        assert gr_mul(a, b + c, g) == gr_mul(a, b, g) + gr_mul(a, c, g)
        assert gr_mul(b + c, a, g) == gr_mul(b, a, g) + gr_mul(c, a, g)
        assert gr_mul(a, one, g) == a
        assert gr_mul(one, a, g) == a


def test_twist_relation():
    g = TwistedGroup.make(2, HEISENBERG)
    u = GroupRingElement.monomial(2, (0, 0), 1)
    x2 = GroupRingElement.monomial(2, (0, 1), 0)
    # u x2 = x^{A e_2} u = x1 x2 u
    lhs = gr_mul(u, x2, g)
    assert lhs == GroupRingElement.monomial(2, (1, 1), 1)
    # the group ring is genuinely noncommutative
    assert gr_mul(x2, u, g) != lhs


def test_newton_polytope():
    a = GroupRingElement.from_dict(
        1, {((0,), 0): 1, ((2,), 1): -3, ((1,), -1): Fraction(1, 2)})
    assert newton_polytope(a) == hull([(0, 0), (2, 1), (1, -1)])
    with pytest.raises(GroupRingError):
        newton_polytope(GroupRingElement.zero(1))


def test_element_polytope_multiplicative():
    rng = random.Random(3)
    for twist in (HEISENBERG, SOL):
        g = TwistedGroup.make(2, twist)
        for _ in range(10):
            a = rand_element(g, rng)
            b = rand_element(g, rng)
            ab = gr_mul(a, b, g)
            if ab.is_zero:
                continue
            assert element_polytope(ab, g) == \
                element_polytope(a, g).add(element_polytope(b, g))


def test_element_polytope_of_monomial_is_zero():
    g = TwistedGroup.make(2, HEISENBERG)
    m = GroupRingElement.monomial(2, (3, -1), 2, -5)
    cls = element_polytope(m, g)
    assert cls.is_zero()
