"""Cube decompositions, dyadic partitions, moments.

The product decomposition splits a Schwartz-type function into smooth
cube-localized pieces expanded in Fourier series.  The partition of
unity uses error-function transitions: translates sum to one exactly
(telescoping), the pieces are analytic, and the tails die off so fast
that each piece is numerically supported inside its period cube.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import NumericFunction

# cube lattice step and transition width; pieces live on [-pi, pi] cubes
_STEP = np.pi / 2.0
_SIGMA = np.pi / 12.0


def _bump_1d(x):
    """Smooth 1-D partition bump: translates by _STEP sum to one."""
    from scipy.special import erf

    return 0.5 * (
        erf((x + _STEP / 2.0) / _SIGMA) - erf((x - _STEP / 2.0) / _SIGMA)
    )


@dataclass
class ProductDecomposition:
    coefficients: dict  # (l tuple, m tuple) -> complex
    reconstruction: NumericFunction
    decay_report: dict
    m_max: int
    radius: float

    def coefficient_bound(self, power):
        """max |c_{l,m}| (1+|l|+|m|)^power over all coefficients."""
        best = 0.0
        for (l, m), c in self.coefficients.items():
            s = sum(abs(x) for x in l) + sum(abs(x) for x in m)
            best = max(best, abs(c) * (1.0 + s) ** power)
        return best


def product_decomposition(
    F: NumericFunction, radius=8.0, m_max=32, grid=None, threshold=1e-14
) -> ProductDecomposition:
    """Cube-localized Fourier decomposition of F on R^dim.

    F is split by the smooth partition into pieces supported (to
    roundoff) in period-2pi cubes around lattice centers, each piece is
    expanded by FFT, and coefficients below the threshold are dropped.
    The reconstruction sums the truncated series times the partition
    localizers.
    """
    dim = F.dim
    if grid is None:
        grid = 128
    nl = int(math.ceil(radius / _STEP))
    centers_1d = np.arange(-nl, nl + 1)
    # FFT sample points on the period cube
    y = -np.pi + 2.0 * np.pi * np.arange(grid) / grid
    freqs = np.fft.fftfreq(grid, d=1.0 / grid).astype(int)
    keep = np.abs(freqs) <= m_max

    coefficients = {}
    mesh = np.meshgrid(*([y] * dim), indexing="ij")
    base_pts = np.stack([g.reshape(-1) for g in mesh], axis=1)
    for l_tuple in np.ndindex(*([len(centers_1d)] * dim)):
        l = tuple(int(centers_1d[i]) for i in l_tuple)
        center = np.array(l, dtype=float) * _STEP
        if np.linalg.norm(center) > radius + 2.0 * np.pi:
            continue
        pts = base_pts + center
        vals = np.asarray(F(pts), dtype=complex)
        for axis in range(dim):
            vals = vals * _bump_1d(base_pts[:, axis])
        vals = vals.reshape(*([grid] * dim))
        if np.max(np.abs(vals)) < threshold:
            continue
        spec = np.fft.fftn(vals) / grid**dim
        # keep low frequencies only
        idx = np.ix_(*([np.where(keep)[0]] * dim))
        sub = spec[idx]
        kept_freqs = freqs[keep]
        for m_tuple in np.ndindex(*sub.shape):
            c = sub[m_tuple]
            if abs(c) >= threshold:
                m = tuple(int(kept_freqs[i]) for i in m_tuple)
                # samples start at -pi, so shift the phase reference to 0
                phase = -1.0 if sum(m) % 2 else 1.0
                coefficients[(l, m)] = complex(c) * phase

    by_l = {}
    for (l, m), c in coefficients.items():
        by_l.setdefault(l, []).append((np.array(m, float), c))

    def recon(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        out = np.zeros(len(pts), dtype=complex)
        for l, terms in by_l.items():
            center = np.array(l, dtype=float) * _STEP
            local = pts - center
            inside = np.all(np.abs(local) <= np.pi, axis=1)
            if not np.any(inside):
                continue
            sel = local[inside]
            acc = np.zeros(len(sel), dtype=complex)
            mats = np.stack([m for m, _ in terms])  # (nterms, dim)
            cs = np.array([c for _, c in terms])
            phases = np.exp(1j * (sel @ mats.T))
            acc = phases @ cs
            # undo the partition localization by the cube indicator:
            # summing the pieces reproduces F because bumps sum to one
            out[inside] += acc
        return out

    reconstruction = NumericFunction(
        dim, recon, radius=radius, name=f"recon({F.name})"
    )
    decay_report = {}
    for power in (2, 4, 6):
        decay_report[f"sup_weighted_{power}"] = _decay_profile(
            coefficients, power
        )
    return ProductDecomposition(
        coefficients, reconstruction, decay_report, m_max, radius
    )


def _decay_profile(coefficients, power):
    best = 0.0
    for (l, m), c in coefficients.items():
        s = sum(abs(x) for x in l) + sum(abs(x) for x in m)
        best = max(best, abs(c) * (1.0 + s) ** power)
    return best


def dyadic_partition(r=2.0, transition=None):
    """Dyadic partition of unity in the invariant radial variable.

    Returns eta(j, s): smooth functions of s = squared norm of the w0
    component with sum over j equal to 1 for s > 0, the exact scaling
    eta_j(s) = eta_0(r^(-2j) s), and support in the annulus
    (r^(2j), r^(2j+4)).
    """
    if r <= 1:
        raise ValueError("dyadic ratio must exceed 1")
    if transition is None:
        def transition(t):
            # smooth monotone 1 -> 0 on [0, 1], flat at both ends
            t = np.clip(t, 0.0, 1.0)
            with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                a = np.where(t > 0, np.exp(-1.0 / np.maximum(t, 1e-300)), 0.0)
                b = np.where(
                    t < 1, np.exp(-1.0 / np.maximum(1.0 - t, 1e-300)), 0.0
                )
            return b / (a + b)

    lr2 = 2.0 * math.log(r)

    def psi(s):
        """1 for s <= 1, 0 for s >= r^2, smooth in between (log scale)."""
        s = np.asarray(s, dtype=float)
        out = np.ones_like(s)
        pos = s > 0
        t = np.zeros_like(s)
        t[pos] = np.log(s[pos]) / lr2
        return np.where(
            s <= 0, 1.0, transition(t)
        )

    def eta(j, s):
        s = np.asarray(s, dtype=float)
        scaled = s * float(r) ** (-2 * j)
        return psi(scaled / r**2) - psi(scaled)

    return eta


def moment(F: NumericFunction, beta, w0_indices, nodes=48):
    """Moment of F in the w0 coordinates: a function of the others."""
    w0_indices = list(w0_indices)
    if len(beta) != len(w0_indices):
        raise ValueError("one exponent per w0 coordinate")
    keep = [i for i in range(F.dim) if i not in w0_indices]
    x1, w1 = np.polynomial.legendre.leggauss(nodes)
    x1 = x1 * F.radius
    w1 = w1 * F.radius
    nw0 = len(w0_indices)
    grids = np.meshgrid(*([x1] * nw0), indexing="ij")
    wpts = np.stack([g.reshape(-1) for g in grids], axis=1)
    wwts = np.ones(len(wpts))
    for axis in range(nw0):
        wwts *= np.meshgrid(*([w1] * nw0), indexing="ij")[axis].reshape(-1)
    mono = np.ones(len(wpts))
    for col, b in enumerate(beta):
        if b:
            mono = mono * wpts[:, col] ** b
    weights = wwts * mono

    def g(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        out = np.empty(len(pts), dtype=complex)
        for row in range(len(pts)):
            full = np.empty((len(wpts), F.dim))
            full[:, keep] = pts[row]
            full[:, w0_indices] = wpts
            vals = np.asarray(F(full), dtype=complex)
            out[row] = np.sum(weights * vals)
        return out

    return NumericFunction(
        len(keep), g, radius=F.radius, name=f"moment{tuple(beta)}({F.name})"
    )


def s0_membership(
    F: NumericFunction,
    order,
    w0_indices,
    tol=1e-8,
    sample=None,
    h=5e-3,
):
    """Check vanishing w0 moments up to the given order.

    Cross-checks two equivalent criteria: direct moment quadrature, and
    derivatives of the w0 Fourier transform at frequency zero by finite
    differences; disagreements beyond tol are flagged.
    """
    from itertools import product as iproduct

    from .functions import finite_difference

    w0_indices = list(w0_indices)
    keep = [i for i in range(F.dim) if i not in w0_indices]
    if sample is None:
        rng = np.random.default_rng(7)
        sample = 0.5 * rng.standard_normal((4, len(keep)))

    def fourier_at(zetas, base):
        """w0 Fourier transform at frequencies zetas for fixed base."""
        zetas = np.atleast_2d(zetas)
        x1, w1 = np.polynomial.legendre.leggauss(48)
        x1 = x1 * F.radius
        w1 = w1 * F.radius
        nw0 = len(w0_indices)
        grids = np.meshgrid(*([x1] * nw0), indexing="ij")
        wpts = np.stack([g.reshape(-1) for g in grids], axis=1)
        wwts = np.ones(len(wpts))
        for axis in range(nw0):
            wwts *= np.meshgrid(*([w1] * nw0), indexing="ij")[axis].reshape(-1)
        full = np.empty((len(wpts), F.dim))
        full[:, keep] = base
        full[:, w0_indices] = wpts
        vals = np.asarray(F(full), dtype=complex) * wwts
        phases = np.exp(-1j * (zetas @ wpts.T))
        return phases @ vals

    entries = []
    ok = True
    betas = [
        b
        for b in iproduct(range(order + 1), repeat=len(w0_indices))
        if sum(b) <= order
    ]
    for beta in betas:
        mom = moment(F, beta, w0_indices)
        for base in sample:
            direct = complex(mom(np.array([base]))[0])
            fd = complex(
                finite_difference(
                    lambda z: fourier_at(z, base), np.zeros(len(w0_indices)),
                    beta, h=h,
                )[0]
            )
            # each Fourier derivative carries a factor (-i)^|beta|
            fd_as_moment = fd / (-1j) ** sum(beta)
            agree = abs(direct - fd_as_moment) <= tol * max(
                1.0, abs(direct)
            )
            vanishes = abs(direct) <= tol
            entries.append(
                {
                    "beta": list(beta),
                    "moment": direct,
                    "fourier_check": fd_as_moment,
                    "criteria_agree": agree,
                    "vanishes": vanishes,
                }
            )
            if not vanishes:
                ok = False
            if not agree:
                entries[-1]["flag"] = "criteria disagree"
    return {"member": ok, "order": order, "entries": entries}
