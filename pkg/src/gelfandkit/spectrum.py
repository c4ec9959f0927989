"""Spectrum embeddings for nilpotent pairs.

A bounded spherical function is encoded by its eigenvalue tuple under
the symmetrized Hilbert basis, giving a point of R^d.  This module
builds the Heisenberg fan, anisotropic dilations and the homogeneous
norm on these points, the projection to the w block, the quotient
eigenvalue map, and the dominance diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import operators as op
from .invariants import evaluate_expression, express_in_basis
from .poly import Polynomial


@dataclass(frozen=True)
class SpectrumPoint:
    xi: tuple  # one real eigenvalue per basis element
    components: tuple  # component tag per coordinate
    nus: tuple  # homogeneity exponent per coordinate
    provenance: tuple = ()  # optional (key, value) pairs

    def __post_init__(self):
        if not (len(self.xi) == len(self.components) == len(self.nus)):
            raise ValueError("coordinate/tag/exponent length mismatch")

    def block(self, tag):
        return tuple(
            x for x, c in zip(self.xi, self.components) if c == tag
        )

    def to_json(self):
        return {
            "xi": [float(x) for x in self.xi],
            "components": list(self.components),
            "nus": list(self.nus),
            "provenance": {k: v for k, v in self.provenance},
        }


def make_point(basis, xi, provenance=(), tol=0.0):
    """Build a SpectrumPoint over a HilbertBasis, with the consistency
    check that a vanishing w0 block forces a vanishing mixed block."""
    components = tuple(basis.components)
    nus = tuple(basis.homogeneity_exponents())
    xi = tuple(float(x) for x in xi)
    w0 = [x for x, c in zip(xi, components) if c == "w0"]
    mixed = [x for x, c in zip(xi, components) if c == "vw0"]
    if w0 and all(abs(x) <= tol for x in w0):
        if any(abs(x) > tol for x in mixed):
            raise ValueError(
                "inconsistent point: zero w0 block with nonzero mixed block"
            )
    return SpectrumPoint(xi, components, nus, tuple(provenance))


def heisenberg_fan(n, lambda_grid, k_max, omega_grid, oracle=None, tol=1e-6):
    """Spectrum points of the rank-n Heisenberg pair.

    Eigenvalues come from the numeric oracle (the radial eigenfunction
    machinery of the numerics subpackage) and are cross-checked against
    the closed form |lambda| (2k + n); boundary points come from the
    abelian quotient.
    """
    from .numerics.spherical import fan_eigenvalue

    if oracle is None:
        oracle = fan_eigenvalue
    from .catalog import load_pair

    basis = load_pair(f"H{n}-U{n}").require_basis()
    points = []
    for lam in lambda_grid:
        if lam == 0:
            raise ValueError("lambda grid must avoid zero; use omega_grid")
        for k in range(k_max + 1):
            xi_len = oracle(n, lam, k)
            closed = abs(lam) * (2 * k + n)
            if abs(xi_len - closed) > tol * max(1.0, closed):
                raise ValueError(
                    f"fan oracle disagrees with closed form at {(lam, k)}: "
                    f"{xi_len} vs {closed}"
                )
            points.append(
                make_point(
                    basis,
                    (lam, xi_len),
                    provenance=(("lambda", lam), ("k", k)),
                )
            )
    for omega in omega_grid:
        if omega < 0:
            raise ValueError("omega must be nonnegative")
        points.append(
            make_point(
                basis,
                (0.0, omega * omega),
                provenance=(("lambda", 0.0), ("omega", omega)),
            )
        )
    return points


def spectrum_dilate(delta, point: SpectrumPoint) -> SpectrumPoint:
    if delta <= 0:
        raise ValueError("dilation parameter must be positive")
    xi = tuple(
        float(delta) ** nu * x for x, nu in zip(point.xi, point.nus)
    )
    return SpectrumPoint(xi, point.components, point.nus, point.provenance)


def homogeneous_norm(point: SpectrumPoint) -> float:
    return sum(
        abs(x) ** (1.0 / nu) for x, nu in zip(point.xi, point.nus)
    )


def pi_projection(point: SpectrumPoint):
    """The w-block (w0 then w-check coordinates) of the point."""
    return tuple(
        x
        for x, c in zip(point.xi, point.components)
        if c in ("w0", "wcheck")
    )


def _operator_in_generators(e_op, basis, gen_ops):
    """Express an invariant operator as a polynomial in commuting
    symmetrized generators, peeling the top symbol degree by degree."""
    alg = e_op.algebra
    d = len(basis)
    expr_total = Polynomial.zero(d, 0)
    work = e_op
    guard = 0
    while not work.is_zero():
        guard += 1
        if guard > 200:
            raise ValueError("operator expression did not terminate")
        symbol = op.unsymmetrize(work)
        m = symbol.degree()
        top = Polynomial(
            symbol.nv,
            symbol.nw,
            {e: c for e, c in symbol.terms.items() if sum(e) == m},
        )
        expr = express_in_basis(top, basis)
        expr_total = expr_total + expr
        correction = _evaluate_on_operators(expr, gen_ops, alg)
        work = work - correction
    return expr_total


def _evaluate_on_operators(expr, gen_ops, alg):
    total = op.InvariantOperator.zero(alg)
    for expo, coef in expr.terms.items():
        term = op.InvariantOperator.identity(alg).scale(coef)
        for g, m in zip(gen_ops, expo):
            for _ in range(m):
                term = op.compose(term, g)
        total = total + term
    return total


def lambda_map(table, xi_t: SpectrumPoint) -> SpectrumPoint:
    """Map a quotient-pair spectrum point to an ambient one.

    For each ambient basis element, the symmetrization of its
    restriction is an invariant operator of the quotient pair; writing
    it as a polynomial in the commuting quotient generators (top symbol
    from the restriction table, corrections computed symbolically) and
    evaluating at the quotient eigenvalues gives the ambient eigenvalue.
    """
    qbasis = table.quotient_basis
    if len(xi_t.xi) != len(qbasis):
        raise ValueError("point does not match the table's quotient basis")
    qalg = table.quotient_algebra
    gen_ops = [op.symmetrize(qalg, q) for q in qbasis.polynomials]
    exprs = []
    for j in range(len(table.ambient_basis)):
        restricted = evaluate_expression(
            table.restriction_expression(j), qbasis
        )
        e_op = op.symmetrize(qalg, restricted)
        exprs.append(_operator_in_generators(e_op, qbasis, gen_ops))
    xi = []
    for expr in exprs:
        val = expr.evaluate([complex(x) for x in xi_t.xi])
        if abs(val.imag) > 1e-9 * max(1.0, abs(val.real)):
            raise ValueError("eigenvalue came out non-real")
        xi.append(val.real)
    ambient = table.ambient_basis
    return SpectrumPoint(
        tuple(xi),
        tuple(ambient.components),
        tuple(ambient.homogeneity_exponents()),
        xi_t.provenance,
    )


@dataclass(frozen=True)
class DominanceReport:
    constant_total: float  # smallest C with ||xi|| <= C ||xi_v block||
    constant_blocks: float  # smallest C in the blockwise bound
    violations: tuple

    @property
    def passed(self):
        return not self.violations


def dominance_check(points, basis) -> DominanceReport:
    """Smallest constants realizing the dominance bounds on a sample.

    Bound (ii): the homogeneous norm is controlled by the v-block part
    of the norm.  Bound (i): each mixed coordinate of bi-degree (r, s)
    is controlled by |v block|^(r/2) |w0 block|^s in Euclidean block
    norms.  Points violating the bounds outright (nonzero coordinate
    against a vanishing controlling block) are flagged.
    """
    components = tuple(basis.components)
    nus = tuple(basis.homogeneity_exponents())
    bidegs = basis.bidegrees()
    c_total = 0.0
    c_blocks = 0.0
    violations = []
    for idx, pt in enumerate(points):
        total = homogeneous_norm(pt)
        if total == 0:
            continue
        v_part = sum(
            abs(x) ** (1.0 / nu)
            for x, c, nu in zip(pt.xi, components, nus)
            if c == "v"
        )
        if v_part == 0:
            violations.append((idx, "zero v block with nonzero norm"))
            continue
        c_total = max(c_total, total / v_part)
        v_eucl = math.sqrt(
            sum(x * x for x, c in zip(pt.xi, components) if c == "v")
        )
        w0_eucl = math.sqrt(
            sum(x * x for x, c in zip(pt.xi, components) if c == "w0")
        )
        for x, c, (r, s) in zip(pt.xi, components, bidegs):
            if c != "vw0" or x == 0:
                continue
            bound = v_eucl ** (r / 2.0) * w0_eucl**s
            if bound == 0:
                violations.append(
                    (idx, "mixed coordinate with vanishing controlling blocks")
                )
                continue
            c_blocks = max(c_blocks, abs(x) / bound)
    return DominanceReport(c_total, c_blocks, tuple(violations))
