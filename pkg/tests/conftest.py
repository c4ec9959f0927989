import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from gelfandkit.catalog import load_pair
from gelfandkit.poly import Polynomial
from gelfandkit.invariants import bidegree_monomials

settings.register_profile(
    "ci",
    deadline=None,
    max_examples=30,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def h1():
    return load_pair("H1-U1")


@pytest.fixture(scope="session")
def h2():
    return load_pair("H2-U2")


@pytest.fixture(scope="session")
def line2n2():
    return load_pair("line2-n2")


@pytest.fixture(scope="session")
def line1n4():
    return load_pair("line1-n4")


def random_bihomogeneous(rng: random.Random, nv, nw, r, s, density=0.6):
    """Random bi-homogeneous polynomial with small rational coefficients."""
    p = Polynomial.zero(nv, nw)
    monos = bidegree_monomials(nv, nw, r, s)
    picked = False
    for m in monos:
        if rng.random() < density:
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            if c:
                p = p + Polynomial(nv, nw, {m: c})
                picked = True
    if not picked:
        p = p + Polynomial(nv, nw, {monos[0]: Fraction(1)})
    return p


def random_polynomial(rng: random.Random, nv, nw, max_bidegree, density=0.5):
    """Random inhomogeneous polynomial up to the given bi-degree."""
    r_max, s_max = max_bidegree
    p = Polynomial.zero(nv, nw)
    for r in range(r_max + 1):
        for s in range(s_max + 1):
            if rng.random() < 0.7:
                p = p + random_bihomogeneous(rng, nv, nw, r, s, density)
    return p
