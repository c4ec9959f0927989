"""Quadrature-based transforms on step-2 groups.

The spherical transform, group convolution, the fiber integration onto
a central quotient, and K-averaging over circle factors.  Everything is
tensor Gauss-Legendre on truncated boxes, with the truncation radius
taken from the function's decay metadata.
"""

from __future__ import annotations

import numpy as np

from .functions import NumericFunction, gauss_legendre_grid


def _structure_tensor(alg):
    nv, nw = alg.dim_v, alg.dim_w
    c = np.zeros((nv, nv, nw))
    for i in range(nv):
        for j in range(nv):
            for k in range(nw):
                c[i, j, k] = float(alg.c[i][j][k])
    return c


def _bch_inverse_times(c, nv, y, x):
    """Vectorized y^-1 x on a step-2 group with bracket tensor c."""
    v = x[..., :nv] - y[..., :nv]
    w = x[..., nv:] - y[..., nv:]
    # bracket of (-y_v) with x_v, halved
    corr = 0.5 * np.einsum("...i,...j,ijk->...k", -y[..., :nv], x[..., :nv], c)
    return np.concatenate([v, w + corr], axis=-1)


def spherical_transform(
    F: NumericFunction, phi, alg=None, nodes=48, radius=None, estimate=True
):
    """Integral of F against the spherical function at inverse points.

    Returns (value, error_estimate); the estimate compares two node
    counts and can be skipped when F is expensive to evaluate.  A
    tighter truncation radius than the function's own can be passed
    when the decay is known to be fast.
    """
    if radius is None:
        radius = F.radius

    def run(n_nodes):
        pts, wts = gauss_legendre_grid(F.dim, radius, n_nodes)
        vals = np.asarray(F(pts), dtype=complex) * np.asarray(
            phi(-pts), dtype=complex
        )
        return complex(np.sum(wts * vals))

    value = run(nodes)
    if not estimate:
        return value, float("nan")
    coarse = run(max(8, (3 * nodes) // 4))
    return value, abs(value - coarse)


def spherical_transform_many(F: NumericFunction, phis, nodes=48, radius=None):
    """Transforms of one function against many spherical functions.

    Evaluates F on the quadrature grid once, which matters when F is
    itself a quadrature (a numeric convolution).
    """
    if radius is None:
        radius = F.radius
    pts, wts = gauss_legendre_grid(F.dim, radius, nodes)
    base = np.asarray(F(pts), dtype=complex) * wts
    return [complex(np.sum(base * np.asarray(phi(-pts)))) for phi in phis]


def group_convolution(
    F: NumericFunction, G: NumericFunction, alg, nodes=32, radius=None
) -> NumericFunction:
    """(F * G)(x) = integral of F(y) G(y^-1 x) over the group.

    The y quadrature is truncated at F's radius (or the given override);
    the returned function carries the sum of the two radii as its own
    truncation radius.
    """
    if F.dim != G.dim:
        raise ValueError("convolution needs functions on the same group")
    dim = F.dim
    nv = alg.dim_v
    if dim != alg.dim_v + alg.dim_w:
        raise ValueError("function dimension does not match the algebra")
    c = _structure_tensor(alg)
    ypts, ywts = gauss_legendre_grid(
        dim, F.radius if radius is None else radius, nodes
    )
    fy = np.asarray(F(ypts), dtype=complex) * ywts

    def conv(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        out = np.empty(len(pts), dtype=complex)
        chunk = max(1, 1_000_000 // max(1, len(ypts)))
        for start in range(0, len(pts), chunk):
            xs = pts[start : start + chunk]
            args = _bch_inverse_times(
                c, nv, ypts[None, :, :], xs[:, None, :]
            )
            gv = np.asarray(
                G(args.reshape(-1, dim)), dtype=complex
            ).reshape(len(xs), len(ypts))
            out[start : start + chunk] = gv @ fy
        return out

    return NumericFunction(
        dim,
        conv,
        radius=F.radius + G.radius,
        name=f"({F.name}*{G.name})",
    )


def radon_pushforward(
    F: NumericFunction, s_basis, alg, nodes=48
) -> NumericFunction:
    """Fiber integration of F over a central subspace s of w.

    The result lives on v + (orthogonal complement of s); coordinates
    on the quotient come from the exact complement basis of the central
    reduction.
    """
    from ..algebra import central_reduction

    nv, nw = alg.dim_v, alg.dim_w
    if F.dim != nv + nw:
        raise ValueError("function dimension does not match the algebra")
    red = central_reduction(alg, s_basis)
    comp = np.array(
        [[float(x) for x in row] for row in red.complement_basis]
    ).reshape(len(red.complement_basis), nw)
    s_mat = np.array([[float(x) for x in row] for row in s_basis])
    x1, w1 = np.polynomial.legendre.leggauss(nodes)
    x1 = x1 * F.radius
    w1 = w1 * F.radius
    ns = len(s_mat)
    grids = np.meshgrid(*([x1] * ns), indexing="ij")
    spts = np.stack([g.reshape(-1) for g in grids], axis=1)
    swts = np.ones(len(spts))
    for axis in range(ns):
        swts *= np.meshgrid(*([w1] * ns), indexing="ij")[axis].reshape(-1)
    s_dirs = spts @ s_mat  # points of s embedded in w

    def g(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        v = pts[:, :nv]
        wq = pts[:, nv:]
        w_emb = wq @ comp
        out = np.empty(len(pts), dtype=complex)
        chunk = max(1, 2_000_000 // max(1, len(s_dirs)))
        for start in range(0, len(pts), chunk):
            vv = v[start : start + chunk]
            ww = w_emb[start : start + chunk]
            full_w = ww[:, None, :] + s_dirs[None, :, :]
            full = np.concatenate(
                [
                    np.broadcast_to(
                        vv[:, None, :], (len(vv), len(s_dirs), nv)
                    ),
                    full_w,
                ],
                axis=2,
            )
            vals = np.asarray(
                F(full.reshape(-1, nv + nw)), dtype=complex
            ).reshape(len(vv), len(s_dirs))
            out[start : start + chunk] = vals @ swts
        return out

    return NumericFunction(
        nv + nw - ns, g, radius=F.radius, name=f"radon({F.name})"
    )


def _one_parameter_matrices(generator, thetas):
    from scipy.linalg import expm

    a = np.array([[float(x) for x in row] for row in generator])
    return [expm(t * a) for t in thetas]


def k_average(
    H: NumericFunction, action, generator_index=0, nodes=256
) -> NumericFunction:
    """Average over the circle generated by one action generator.

    Trapezoid quadrature on the circle; the generator must have
    2 pi periodic flow (circle factors of the group).
    """
    av, aw = action.k_generators[generator_index]
    nv = action.algebra.dim_v
    nw = action.algebra.dim_w
    if H.dim != nv + nw:
        raise ValueError("function dimension does not match the action")
    thetas = np.linspace(0.0, 2.0 * np.pi, nodes, endpoint=False)
    mv = _one_parameter_matrices(av, thetas) if av else None
    mw = _one_parameter_matrices(aw, thetas) if aw and nw else None

    def f(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        total = np.zeros(len(pts), dtype=complex)
        for idx in range(nodes):
            rotated = pts.copy()
            if mv is not None:
                rotated[:, :nv] = pts[:, :nv] @ mv[idx].T
            if mw is not None:
                rotated[:, nv:] = pts[:, nv:] @ mw[idx].T
            total += np.asarray(H(rotated), dtype=complex)
        return total / nodes

    return NumericFunction(H.dim, f, radius=H.radius, name=f"avg({H.name})")
