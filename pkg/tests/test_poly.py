import random
from fractions import Fraction

from hypothesis import given, strategies as st

from gelfandkit.poly import Polynomial, QQi
from conftest import random_polynomial


def _rand_poly(seed, nv=2, nw=1):
    return random_polynomial(random.Random(seed), nv, nw, (2, 2))


@given(st.integers(0, 10_000), st.integers(0, 10_000), st.integers(0, 10_000))
def test_ring_axioms(a, b, c):
    p, q, r = _rand_poly(a), _rand_poly(b), _rand_poly(c)
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(st.integers(0, 10_000), st.integers(0, 2))
def test_partial_is_a_derivation(seed, index):
    p, q = _rand_poly(seed), _rand_poly(seed + 1)
    lhs = (p * q).partial(index)
    rhs = p.partial(index) * q + p * q.partial(index)
    assert lhs == rhs


@given(st.integers(0, 10_000))
def test_evaluate_is_a_homomorphism(seed):
    rng = random.Random(seed)
    p, q = _rand_poly(seed), _rand_poly(seed + 1)
    pt = tuple(Fraction(rng.randint(-3, 3), 2) for _ in range(3))
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(st.integers(0, 10_000))
def test_substitute_identity_and_composition(seed):
    p = _rand_poly(seed)
    identity = [Polynomial.variable(2, 1, i) for i in range(3)]
    assert p.substitute(identity) == p
    # substitute then evaluate equals evaluate at images
    rng = random.Random(seed + 7)
    images = [_rand_poly(seed + 2 + i, 2, 1) for i in range(3)]
    pt = tuple(Fraction(rng.randint(-2, 2)) for _ in range(3))
    lhs = p.substitute(images).evaluate(pt)
    rhs = p.evaluate(tuple(im.evaluate(pt) for im in images))
    assert lhs == rhs


def test_bidegree_bookkeeping():
    p = Polynomial.v_var(2, 1, 0) ** 2 * Polynomial.w_var(2, 1, 0)
    assert p.bidegree() == (2, 1)
    assert p.v_degree() == 2 and p.w_degree() == 1
    assert p.degree() == 3


def test_conjugate_involution():
    p = Polynomial(2, 1, {(1, 0, 0): QQi(1, 2), (0, 0, 1): QQi(0, -1)})
    assert p.conjugate().conjugate() == p


@given(st.integers(0, 10_000))
def test_json_round_trip(seed):
    p = _rand_poly(seed)
    assert Polynomial.from_json(2, 1, p.to_json()) == p
