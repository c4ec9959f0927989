import numpy as np
import pytest
from fractions import Fraction

from gelfandkit.catalog import load_pair
from gelfandkit.numerics import NumericFunction, apply_operator_fd
from gelfandkit.numerics.decomposition import (
    dyadic_partition,
    moment,
    product_decomposition,
    s0_membership,
)
from gelfandkit.numerics.functions import finite_difference, integrate
from gelfandkit.numerics.spherical import (
    bessel_spherical,
    fan_eigenvalue,
    fan_residual,
    laguerre_closed_form,
    spherical_heisenberg,
)
from gelfandkit.numerics.transforms import (
    group_convolution,
    k_average,
    radon_pushforward,
    spherical_transform,
)
from gelfandkit.operators import symmetrize
from gelfandkit.poly import Polynomial


def test_finite_difference_matches_exact_derivatives():
    f = NumericFunction(2, lambda p: p[:, 0] ** 3 * p[:, 1] ** 2)
    pts = np.array([[1.0, 2.0], [-0.5, 1.5]])
    d = finite_difference(f, pts, (2, 1))
    exact = 6 * pts[:, 0] * 2 * pts[:, 1]
    assert np.max(np.abs(d - exact)) < 1e-6


def test_apply_operator_fd_matches_symbolic(h1):
    p = Polynomial.v_var(2, 1, 0) ** 2 + Polynomial.v_var(2, 1, 1) ** 2
    d = symmetrize(h1.algebra, p)
    f = NumericFunction(3, lambda q: np.exp(-np.sum(q**2, axis=1)))
    pts = np.array([[0.2, -0.3, 0.1], [1.0, 0.5, -0.2]])
    got = apply_operator_fd(d, f, pts)
    # compare against the same operator applied to the polynomial part
    # of a quadratic expansion: sanity by symmetric difference instead
    lap = sum(
        finite_difference(f, pts, tuple(o)) for o in ([2, 0, 0], [0, 2, 0])
    )
    mixed1 = finite_difference(f, pts, (0, 1, 1)) * pts[:, 0]
    mixed2 = finite_difference(f, pts, (1, 0, 1)) * pts[:, 1]
    quarter = finite_difference(f, pts, (0, 0, 2)) * (
        pts[:, 0] ** 2 + pts[:, 1] ** 2
    )
    expected = -(lap + mixed1 - mixed2 + quarter / 4.0)
    assert np.max(np.abs(got - expected)) < 1e-5


def test_gaussian_integral():
    f = NumericFunction.gaussian(2, scale=1.0)
    val = integrate(f, 2, 9.0, nodes=48)
    assert abs(val - 2 * np.pi) < 1e-9


def test_spherical_identity_at_origin():
    for n in (1, 2):
        phi = spherical_heisenberg(n, 1.3, 2)
        assert phi(np.zeros(2 * n + 1)) == pytest.approx(1.0, abs=1e-12)


def test_schrodinger_entries_match_laguerre():
    rng = np.random.default_rng(0)
    for n, lam, k in [(1, 1.0, 0), (1, -2.3, 4), (2, 0.7, 2)]:
        pts = rng.standard_normal((20, 2 * n + 1))
        a = spherical_heisenberg(n, lam, k)(pts)
        b = laguerre_closed_form(n, lam, k)(pts)
        assert np.max(np.abs(a - b)) < 1e-12


def test_bessel_eigenvalue():
    # sphere averages are -Laplacian eigenfunctions with eigenvalue w^2
    for dim in (2, 3):
        phi = bessel_spherical(dim, 1.5)
        pts = 0.4 * np.random.default_rng(1).standard_normal((5, dim))
        lap = sum(
            finite_difference(phi, pts, tuple(o))
            for o in np.eye(dim, dtype=int) * 2
        )
        assert np.max(np.abs(-lap - 1.5**2 * phi(pts))) < 1e-6


def test_fan_eigenvalue_oracle():
    assert fan_eigenvalue(1, 2.5, 3) == pytest.approx(17.5, abs=1e-6)
    assert fan_residual(1, 1.0, 1) < 1e-6


def test_transform_of_k_invariant_gaussian(h1):
    F = NumericFunction.gaussian(3, scale=0.6)
    phi = spherical_heisenberg(1, 1.3, 0)
    v48, _ = spherical_transform(F, phi, nodes=48, radius=4.5)
    v64, _ = spherical_transform(F, phi, nodes=64, radius=4.5)
    assert abs(v48 - v64) < 1e-8


def test_convolution_commutes_for_invariant_functions(h1):
    F = NumericFunction.gaussian(3, scale=0.6)
    G = NumericFunction.gaussian(
        3, scale=0.6, poly=lambda p: 1.0 + 0.3 * (p[:, 0] ** 2 + p[:, 1] ** 2)
    )
    FG = group_convolution(F, G, h1.algebra, nodes=32, radius=4.5)
    GF = group_convolution(G, F, h1.algebra, nodes=32, radius=4.5)
    pts = 1.2 * np.random.default_rng(1).standard_normal((20, 3))
    assert np.max(np.abs(FG(pts) - GF(pts))) < 1e-6


def test_radon_gaussian_closed_form(h1):
    F = NumericFunction.gaussian(3, scale=0.8)
    RF = radon_pushforward(F, [[Fraction(1)]], h1.algebra, nodes=48)
    pts = np.array([[0.3, -0.4], [1.0, 0.2]])
    expected = (
        np.sqrt(2 * np.pi) * 0.8 * np.exp(-np.sum(pts**2, axis=1) / (2 * 0.64))
    )
    assert np.max(np.abs(RF(pts) - expected)) < 1e-10


def test_k_average_produces_invariance(h1):
    H = NumericFunction.gaussian(3, scale=0.8, poly=lambda p: p[:, 0])
    Ha = k_average(H, h1.action, nodes=128)
    theta = 0.7
    R = np.array(
        [
            [np.cos(theta), -np.sin(theta), 0],
            [np.sin(theta), np.cos(theta), 0],
            [0, 0, 1],
        ]
    )
    pts = np.random.default_rng(2).standard_normal((15, 3))
    assert np.max(np.abs(Ha(pts) - Ha(pts @ R.T))) < 1e-12


def test_product_decomposition_reconstructs():
    F = NumericFunction.gaussian(1, scale=1.0)
    dec = product_decomposition(F, radius=6.0, m_max=32)
    pts = np.linspace(-5, 5, 101)[:, None]
    assert np.max(np.abs(dec.reconstruction(pts) - F(pts))) < 1e-9


def test_product_decomposition_improves_with_m_max():
    F = NumericFunction.gaussian(1, scale=0.7)
    errs = []
    pts = np.linspace(-4, 4, 81)[:, None]
    for m_max in (8, 16, 32):
        dec = product_decomposition(F, radius=5.0, m_max=m_max)
        errs.append(float(np.max(np.abs(dec.reconstruction(pts) - F(pts)))))
    assert errs[2] < errs[1] < errs[0]


def test_dyadic_partition_properties():
    eta = dyadic_partition(2.0)
    s = np.geomspace(1e-3, 1e3, 500)
    total = sum(eta(j, s) for j in range(-15, 16))
    assert np.max(np.abs(total - 1.0)) < 1e-12
    # scaling property
    assert np.max(np.abs(eta(3, s) - eta(0, s / 2.0**6))) < 1e-12
    # support in the dyadic annulus
    assert np.all(eta(0, np.array([0.5, 1.0, 16.0, 50.0])) == 0.0)
    # nonnegativity and boundedness
    vals = eta(0, s)
    assert np.all(vals >= 0.0) and np.all(vals <= 1.0)


def test_moment_quadrature():
    F = NumericFunction.gaussian(2, scale=1.0)
    m0 = moment(F, (0,), [1])
    pts = np.array([[0.0], [1.0]])
    expected = np.sqrt(2 * np.pi) * np.exp(-pts[:, 0] ** 2 / 2)
    assert np.max(np.abs(m0(pts) - expected)) < 1e-10


def test_s0_membership_criteria_agree():
    odd = NumericFunction.gaussian(2, scale=1.0, poly=lambda p: p[:, 1])
    rep = s0_membership(odd, 0, [1])
    assert rep["member"]
    assert all(e["criteria_agree"] for e in rep["entries"])
    even = NumericFunction.gaussian(2, scale=1.0)
    rep = s0_membership(even, 0, [1])
    assert not rep["member"]
    assert all(e["criteria_agree"] for e in rep["entries"])
