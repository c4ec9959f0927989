"""Spherical function evaluators for Heisenberg-type and abelian pairs.

Heisenberg spherical functions are built from diagonal matrix entries of
the Schrodinger representation on Hermite functions, computed by
Gauss-Hermite quadrature; the closed Laguerre form is used only as a
cross-check in tests.  Abelian spherical functions are sphere averages
of characters.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np


class SphericalEvaluator:
    """Vectorized spherical function with parameter provenance."""

    def __init__(self, dim, func, params, name=""):
        self.dim = dim
        self.func = func
        self.params = dict(params)
        self.name = name

    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            return complex(np.asarray(self.func(pts[None, :])).reshape(-1)[0])
        return np.asarray(self.func(pts))

    @property
    def radius(self):
        return 12.0


@lru_cache(maxsize=None)
def _hermite_nodes(n):
    return np.polynomial.hermite.hermgauss(n)


@lru_cache(maxsize=None)
def _log_hermite_norm(k):
    # log of sqrt(2^k k! sqrt(pi))
    from math import lgamma, log, pi

    return 0.5 * (k * log(2.0) + lgamma(k + 1) + 0.5 * log(pi))


def _hermite_poly_values(k, x):
    """Physicists' Hermite polynomials H_0..H_k at x, last row returned."""
    h_prev = np.ones_like(x)
    if k == 0:
        return h_prev
    h = 2.0 * x
    for m in range(1, k):
        h_prev, h = h, 2.0 * x * h - 2.0 * m * h_prev
    return h


def _entry_1d(k, c, s, nodes=64):
    """Diagonal entry integral e^{-c^2} int e^{isx} h_k(x+c) h_k(x-c) dx.

    Hermite functions h_k; the Gaussian weight e^{-x^2} of the product
    is absorbed by the quadrature, the e^{-c^2} factor is kept outside
    so large offsets stay stable.
    """
    x, w = _hermite_nodes(nodes)
    c = np.asarray(c, dtype=float)[..., None]
    s = np.asarray(s, dtype=float)[..., None]
    hp = _hermite_poly_values(k, x + c)
    hm = _hermite_poly_values(k, x - c)
    phase = np.exp(1j * s * x)
    integral = np.sum(w * hp * hm * phase, axis=-1)
    norm = np.exp(-c[..., 0] ** 2 - 2.0 * _log_hermite_norm(k))
    return integral * norm


def spherical_heisenberg(n, lam, k, nodes=64):
    """Spherical function of the rank-n Heisenberg pair.

    Averages the diagonal Schrodinger-representation entries over the
    k-th energy level; for n = 1 the single entry is already circle
    invariant.  Coordinates: (v_1, ..., v_2n, t) with z_j = (v_2j-1,
    v_2j).
    """
    if lam == 0:
        raise ValueError("lambda must be nonzero; use bessel_spherical")
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    root = np.sqrt(abs(lam))
    sign = 1.0 if lam > 0 else -1.0
    level = [
        tuple(alpha)
        for alpha in _compositions(k, n)
    ]
    dim_level = comb(k + n - 1, n - 1)

    def f(pts):
        pts = np.asarray(pts, dtype=float)
        t = pts[:, 2 * n]
        out = np.zeros(len(pts), dtype=complex)
        # per-coordinate entry values for each needed Hermite index
        needed = sorted({a for alpha in level for a in alpha})
        per = {}
        for j in range(n):
            c = root * pts[:, 2 * j] / 2.0
            s = sign * root * pts[:, 2 * j + 1]
            per[j] = {m: _entry_1d(m, c, s, nodes) for m in needed}
        for alpha in level:
            prod = np.ones(len(pts), dtype=complex)
            for j, m in enumerate(alpha):
                prod = prod * per[j][m]
            out += prod
        return np.exp(1j * lam * t) * out / dim_level

    return SphericalEvaluator(
        2 * n + 1,
        f,
        {"type": "heisenberg", "n": n, "lambda": lam, "k": k},
        name=f"phi_H{n}(lambda={lam},k={k})",
    )


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def laguerre_closed_form(n, lam, k):
    """Closed Laguerre form of the same spherical function (cross-check)."""
    from scipy.special import eval_genlaguerre

    def f(pts):
        pts = np.asarray(pts, dtype=float)
        r2 = np.sum(pts[:, : 2 * n] ** 2, axis=1)
        t = pts[:, 2 * n]
        x = abs(lam) * r2 / 2.0
        return (
            np.exp(1j * lam * t)
            * np.exp(-x / 2.0)
            * eval_genlaguerre(k, n - 1, x)
            / comb(k + n - 1, n - 1)
        )

    return SphericalEvaluator(
        2 * n + 1, f, {"type": "laguerre", "n": n, "lambda": lam, "k": k}
    )


def bessel_spherical(dim, omega, nodes=256):
    """Sphere average of the character with frequency omega (dim <= 3)."""
    if omega < 0:
        raise ValueError("omega must be nonnegative")
    if dim == 1:

        def f(pts):
            return np.cos(omega * np.asarray(pts, float)[:, 0]).astype(complex)

    elif dim == 2:
        theta = np.linspace(0.0, 2.0 * np.pi, nodes, endpoint=False)
        ct, st = np.cos(theta), np.sin(theta)

        def f(pts):
            pts = np.asarray(pts, dtype=float)
            phase = omega * (
                pts[:, 0:1] * ct[None, :] + pts[:, 1:2] * st[None, :]
            )
            return np.mean(np.exp(1j * phase), axis=1)

    elif dim == 3:
        x, w = np.polynomial.legendre.leggauss(64)

        def f(pts):
            pts = np.asarray(pts, dtype=float)
            r = np.linalg.norm(pts, axis=1)
            vals = np.sum(
                w[None, :] * np.exp(1j * omega * r[:, None] * x[None, :]),
                axis=1,
            ) / 2.0
            return vals

    else:
        raise ValueError("only dimensions 1 to 3 are supported")
    return SphericalEvaluator(
        dim, f, {"type": "bessel", "dim": dim, "omega": omega}
    )


def fan_eigenvalue(n, lam, k, h=1e-3, sample=None):
    """Numeric eigenvalue of the symmetrized v-norm-squared symbol.

    Applies the operator to the spherical function by finite differences
    at a few generic points and averages the Rayleigh ratios.
    """
    from ..catalog import load_pair
    from ..operators import symmetrize
    from ..poly import Polynomial
    from .functions import apply_operator_fd

    pair = load_pair(f"H{n}-U{n}")
    alg = pair.algebra
    nv = alg.dim_v
    p = Polynomial.zero(nv, 1)
    for j in range(nv):
        p = p + Polynomial.v_var(nv, 1, j) ** 2
    D = symmetrize(alg, p)
    phi = spherical_heisenberg(n, lam, k)
    if sample is None:
        rng = np.random.default_rng(20)
        sample = 0.3 * rng.standard_normal((6, 2 * n + 1))
    dphi = apply_operator_fd(D, phi, sample, h=h)
    base = phi(sample)
    ratios = (dphi / base).real
    return float(np.mean(ratios))


def fan_residual(n, lam, k, h=1e-3, grid_radius=1.5, grid_points=5):
    """Sup-norm eigen-residual of the fan relation on a coarse grid."""
    from ..catalog import load_pair
    from ..operators import symmetrize
    from ..poly import Polynomial
    from .functions import apply_operator_fd

    pair = load_pair(f"H{n}-U{n}")
    alg = pair.algebra
    nv = alg.dim_v
    p = Polynomial.zero(nv, 1)
    for j in range(nv):
        p = p + Polynomial.v_var(nv, 1, j) ** 2
    D = symmetrize(alg, p)
    phi = spherical_heisenberg(n, lam, k)
    axes = [np.linspace(-grid_radius, grid_radius, grid_points)] * (
        2 * n + 1
    )
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.reshape(-1) for g in grids], axis=1)
    xi = abs(lam) * (2 * k + n)
    dphi = apply_operator_fd(D, phi, pts, h=h)
    resid = np.abs(dphi - xi * phi(pts))
    return float(np.max(resid) / np.max(np.abs(phi(pts))))
