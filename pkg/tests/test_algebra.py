import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gelfandkit.algebra import (
    GroupElement,
    bch_multiply,
    central_reduction,
    dilate,
    direct_product,
    group_inverse,
    validate_algebra,
)
from gelfandkit.catalog import load_all, load_pair


def _rand_element(alg, seed):
    rng = random.Random(seed)
    v = tuple(Fraction(rng.randint(-3, 3), 2) for _ in range(alg.dim_v))
    w = tuple(Fraction(rng.randint(-3, 3), 2) for _ in range(alg.dim_w))
    return GroupElement.make(v, w)


@pytest.fixture(scope="module", params=["H1-U1", "H2-U2", "line2-n2", "line1-n4"])
def alg(request):
    return load_pair(request.param).algebra


@given(seed=st.integers(0, 10_000))
def test_group_law(alg, seed):
    x = _rand_element(alg, seed)
    y = _rand_element(alg, seed + 1)
    z = _rand_element(alg, seed + 2)
    lhs = bch_multiply(alg, bch_multiply(alg, x, y), z)
    rhs = bch_multiply(alg, x, bch_multiply(alg, y, z))
    assert tuple(lhs) == tuple(rhs)
    e = alg.zero()
    assert tuple(bch_multiply(alg, x, e)) == tuple(x)
    inv = group_inverse(alg, x)
    assert tuple(bch_multiply(alg, x, inv)) == tuple(e)


@given(seed=st.integers(0, 10_000))
def test_dilation_is_an_automorphism(alg, seed):
    x = _rand_element(alg, seed)
    y = _rand_element(alg, seed + 1)
    delta = Fraction(9, 4)  # rational square so the exact path applies
    lhs = dilate(alg, delta, bch_multiply(alg, x, y))
    rhs = bch_multiply(alg, dilate(alg, delta, x), dilate(alg, delta, y))
    assert tuple(lhs) == tuple(rhs)


def test_all_catalog_algebras_validate():
    for pair in load_all():
        name = pair.name
        report = validate_algebra(pair.algebra)
        assert report.passed, (name, report.failures())


def test_direct_product_brackets():
    a = load_pair("H1-U1").algebra
    prod = direct_product(a, a)
    assert prod.dim_v == 4 and prod.dim_w == 2
    # cross brackets vanish, block brackets match the factors
    assert prod.bracket((1, 0, 0, 0), (0, 0, 1, 0)) == (Fraction(0),) * 2
    assert prod.bracket((1, 0, 0, 0), (0, 1, 0, 0))[0] == a.bracket(
        (1, 0), (0, 1)
    )[0]


def test_central_reduction_h1():
    alg = load_pair("H1-U1").algebra
    red = central_reduction(alg, [[Fraction(1)]])
    assert red.algebra.dim_v == 2 and red.algebra.dim_w == 0
    with pytest.raises(ValueError):
        central_reduction(alg, [[Fraction(0)]])
