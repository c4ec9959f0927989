"""Numeric test functions and finite-difference operator application.

A NumericFunction is a vectorized callable on R^dim plus truncation
metadata (an effective radius outside which the function is negligible).
Grid-sampled data is wrapped in an interpolating callable, closed-form
families (Gaussian times polynomial) keep their structure for oracles.
"""

from __future__ import annotations

import numpy as np


class NumericFunction:
    def __init__(self, dim, func, radius=8.0, name="", closed_form=None):
        self.dim = dim
        self.func = func
        self.radius = float(radius)
        self.name = name
        self.closed_form = closed_form  # optional structured description

    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            return complex(np.asarray(self.func(pts[None, :])).reshape(-1)[0])
        return np.asarray(self.func(pts))

    @classmethod
    def gaussian(cls, dim, scale=1.0, center=None, poly=None, amplitude=1.0):
        """amplitude * poly(x) * exp(-|x-center|^2 / (2 scale^2))."""
        c = np.zeros(dim) if center is None else np.asarray(center, float)
        s2 = 2.0 * float(scale) ** 2

        def f(pts):
            d = pts - c
            vals = amplitude * np.exp(-np.sum(d * d, axis=1) / s2)
            if poly is not None:
                vals = vals * poly(pts)
            return vals

        radius = float(np.max(np.abs(c)) if dim else 0.0) + 9.0 * float(scale)
        return cls(
            dim,
            f,
            radius=radius,
            name="gaussian",
            closed_form={"type": "gaussian", "scale": scale, "center": c},
        )

    @classmethod
    def from_grid(cls, axes, values, radius=None):
        from scipy.interpolate import RegularGridInterpolator

        axes = [np.asarray(a, float) for a in axes]
        for a in axes:
            if np.any(np.diff(a) <= 0):
                raise ValueError("grid axes must be strictly increasing")
        vals = np.asarray(values)
        if not np.all(np.isfinite(vals.real)) or not np.all(
            np.isfinite(vals.imag)
        ):
            raise ValueError("grid values must be finite")
        interp = RegularGridInterpolator(
            axes, vals, bounds_error=False, fill_value=0.0
        )
        if radius is None:
            radius = max(float(max(abs(a[0]), abs(a[-1]))) for a in axes)
        return cls(len(axes), lambda p: interp(p), radius=radius, name="grid")

    def scale_by(self, c):
        return NumericFunction(
            self.dim, lambda p: c * self.func(p), self.radius, self.name
        )


# fourth-order central difference stencils, offsets in units of h
_D1 = ((-2, 1.0 / 12), (-1, -8.0 / 12), (1, 8.0 / 12), (2, -1.0 / 12))
_D2 = (
    (-2, -1.0 / 12),
    (-1, 16.0 / 12),
    (0, -30.0 / 12),
    (1, 16.0 / 12),
    (2, -1.0 / 12),
)


def _diff_stencil(order):
    """Offset/weight table for a single-axis derivative of given order."""
    if order == 0:
        return ((0, 1.0),)
    if order == 1:
        return _D1
    if order == 2:
        return _D2
    # compose a first derivative with the lower-order stencil
    inner = _diff_stencil(order - 1)
    table = {}
    for o1, w1 in _D1:
        for o2, w2 in inner:
            key = o1 + o2
            table[key] = table.get(key, 0.0) + w1 * w2
    return tuple(sorted(table.items()))


def _mixed_stencil(orders):
    """Tensor stencil for a mixed partial; yields (offset tuple, weight)."""
    combos = [((), 1.0)]
    for order in orders:
        axis = _diff_stencil(order)
        combos = [
            (off + (o,), w * wa) for off, w in combos for o, wa in axis
        ]
    return combos


def finite_difference(f, points, orders, h=1e-3):
    """Mixed partial derivative of f at points by 4th-order stencils."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    total = np.zeros(len(pts), dtype=complex)
    scale = 1.0
    for o in orders:
        scale *= h**o
    for offsets, weight in _mixed_stencil(tuple(orders)):
        if weight == 0.0:
            continue
        shifted = pts + h * np.asarray(offsets, dtype=float)
        total += weight * np.asarray(f(shifted), dtype=complex)
    return total / scale


def apply_operator_fd(operator, f, points, h=1e-3):
    """Apply an InvariantOperator to a numeric function at given points.

    Polynomial coefficients are evaluated exactly; derivatives use the
    finite-difference stencils above.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    total = np.zeros(len(pts), dtype=complex)
    for (alpha, beta), coef in operator.terms.items():
        dvals = finite_difference(f, pts, tuple(alpha) + tuple(beta), h=h)
        cvals = np.array(
            [coef.evaluate(tuple(p)) for p in pts], dtype=complex
        )
        total += cvals * dvals
    return total


def gauss_legendre_grid(dim, radius, nodes):
    """Tensor Gauss-Legendre nodes/weights on [-radius, radius]^dim."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    x = x * radius
    w = w * radius
    grids = np.meshgrid(*([x] * dim), indexing="ij")
    pts = np.stack([g.reshape(-1) for g in grids], axis=1)
    wts = np.ones(len(pts))
    for axis in range(dim):
        wts *= np.meshgrid(*([w] * dim), indexing="ij")[axis].reshape(-1)
    return pts, wts


def integrate(f, dim, radius, nodes=48):
    pts, wts = gauss_legendre_grid(dim, radius, nodes)
    return complex(np.sum(wts * np.asarray(f(pts), dtype=complex)))
