"""Acceptance gate: the eleven release criteria.

Each test prints one PASS/FAIL line; tolerances are pinned here and not
read from configuration.  The whole file is expected to run in well
under 30 minutes on a small machine.
"""

import random
from fractions import Fraction

import numpy as np
import pytest

from gelfandkit.actions import (
    orbit_tangent,
    quotient_pair,
    stabilizer_subalgebra,
)
from gelfandkit.catalog import load_pair
from gelfandkit.families import (
    admissible_patterns,
    expected_block_dims,
    t_from_blocks,
)
from gelfandkit.invariants import (
    derivation_action,
    evaluate_expression,
    generation_check,
    quotient_restriction_table,
    restrict,
)
from gelfandkit.numerics import NumericFunction
from gelfandkit.numerics.decomposition import (
    dyadic_partition,
    product_decomposition,
    s0_membership,
)
from gelfandkit.numerics.spherical import (
    bessel_spherical,
    fan_residual,
    spherical_heisenberg,
)
from gelfandkit.numerics.transforms import (
    group_convolution,
    radon_pushforward,
    spherical_transform,
    spherical_transform_many,
)
from gelfandkit.operators import (
    apply_to_polynomial,
    compose,
    gelfand_commutativity_check,
    push_forward,
    symmetrize,
    unsymmetrize,
)
from gelfandkit.poly import Polynomial
from conftest import random_bihomogeneous, random_polynomial

TOL_INTERTWINING = 1e-5
TOL_FAN = 1e-6
TOL_MULTIPLICATIVE = 1e-6
TOL_RECONSTRUCTION = 1e-8
TOL_PARTITION = 1e-10
TOL_S0 = 1e-8


_CAPTURE = None


@pytest.fixture(autouse=True)
def _live_reporting(capfd):
    # keep the one-line verdicts visible even under output capture
    global _CAPTURE
    _CAPTURE = capfd
    yield
    _CAPTURE = None


def _report(number, passed, detail):
    verdict = "PASS" if passed else "FAIL"
    line = f"[criterion {number:2d}] {verdict}: {detail}"
    if _CAPTURE is not None:
        with _CAPTURE.disabled():
            print(line)
    else:
        print(line)
    assert passed, detail


def test_criterion_01_gelfand_certification():
    failures = []
    total = 0
    for name in ("H1-U1", "H2-U2", "line1-n4", "line2-n2"):
        report = gelfand_commutativity_check(load_pair(name))
        total += len(report.entries)
        if not report.commutative:
            failures.append(name)
    _report(
        1,
        not failures,
        f"all symmetrized-basis commutators exactly zero "
        f"({total} pairs over 4 catalog entries)"
        + (f"; failing: {failures}" if failures else ""),
    )


def _random_bidegree(rng, allow_constant=False):
    while True:
        r, s = rng.randint(0, 3), rng.randint(0, 2)
        if allow_constant or r + s > 0:
            return r, s


def _dilate_poly(p, delta2):
    out = Polynomial.zero(p.nv, p.nw)
    for expo, coef in p.terms.items():
        r = sum(expo[: p.nv])
        s = sum(expo[p.nv :])
        scale = Fraction(delta2) ** (r // 2 + s)
        out = out + Polynomial(p.nv, p.nw, {expo: coef * scale})
    return out


def test_criterion_02_symmetrization_laws():
    failures = []
    for name in ("H1-U1", "line2-n2"):
        pair = load_pair(name)
        alg, action = pair.algebra, pair.action
        nv, nw = alg.dim_v, alg.dim_w
        rng = random.Random(20240817)
        used = 0
        for instance in range(50):
            # law 1: order bookkeeping of products
            r1, s1 = _random_bidegree(rng)
            r2, s2 = _random_bidegree(rng)
            p1 = random_bihomogeneous(rng, nv, nw, r1, s1, density=0.12)
            p2 = random_bihomogeneous(rng, nv, nw, r2, s2, density=0.12)
            used += 2
            a1, a2 = symmetrize(alg, p1), symmetrize(alg, p2)
            if a1.order() != p1.degree():
                failures.append((name, "law1-order", instance))
            defect = symmetrize(alg, p1 * p2) - compose(a1, a2)
            if not (
                defect.is_zero()
                or defect.order() < p1.degree() + p2.degree()
            ):
                failures.append((name, "law1-defect", instance))

            # law 2: anisotropic dilation homogeneity (even v-degrees
            # keep the dilation rational)
            r, s = 2 * rng.randint(0, 1), rng.randint(0, 2)
            if r + s == 0:
                s = 1
            p = random_bihomogeneous(rng, nv, nw, r, s, density=0.15)
            q = random_polynomial(rng, nv, nw, (2, 1), density=0.1)
            q = _even_v_part(q)
            used += 2
            delta2 = Fraction(4, 9)
            nu = r + 2 * s
            op = symmetrize(alg, p)
            lhs = apply_to_polynomial(op, _dilate_poly(q, delta2))
            rhs = _dilate_poly(apply_to_polynomial(op, q), delta2).scale(
                Fraction(delta2) ** (nu // 2)
            )
            if lhs != rhs:
                failures.append((name, "law2", instance))

            # law 3: infinitesimal K-equivariance
            p = random_polynomial(rng, nv, nw, (2, 1), density=0.12)
            q = random_polynomial(rng, nv, nw, (2, 1), density=0.12)
            used += 2
            gen = rng.randrange(action.dim_k)
            op = symmetrize(alg, p)
            lhs = apply_to_polynomial(
                symmetrize(alg, derivation_action(action, gen, p)), q
            )
            rhs = derivation_action(
                action, gen, apply_to_polynomial(op, q)
            ) - apply_to_polynomial(op, derivation_action(action, gen, q))
            if lhs != rhs:
                failures.append((name, "law3", instance))

            # law 4: central factors multiply exactly
            p1 = random_bihomogeneous(
                rng, nv, nw, 0, rng.randint(1, 2), density=0.4
            )
            p2 = random_polynomial(rng, nv, nw, (2, 2), density=0.08)
            used += 2
            if symmetrize(alg, p1 * p2) != compose(
                symmetrize(alg, p1), symmetrize(alg, p2)
            ):
                failures.append((name, "law4", instance))
        assert used >= 200, used
    _report(
        2,
        not failures,
        "four symmetrization laws exact on 400 random polynomials per pair "
        "(degrees up to (3,2))"
        + (f"; failing: {failures[:4]}" if failures else ""),
    )


def _even_v_part(q):
    out = Polynomial.zero(q.nv, q.nw)
    for expo, coef in q.terms.items():
        if sum(expo[: q.nv]) % 2 == 0:
            out = out + Polynomial(q.nv, q.nw, {expo: coef})
    return out


def test_criterion_03_quotient_dimension_tables():
    rng = random.Random(7)
    failures = []
    checked = 0
    names = (
        "line1-n4",
        "line2-n2",
        "line2-n3",
        "line3-n2",
        "line4-n1",
        "line5-n1",
        "line6-n2",
    )
    for name in names:
        pair = load_pair(name)
        for ps, q in admissible_patterns(pair.family_tag, dict(pair.params)):
            if not ps:
                continue
            for _ in range(2):
                vals, seen = [], set()
                for _ in ps:
                    v = rng.randint(1, 9)
                    while v in seen:
                        v = rng.randint(1, 9)
                    seen.add(v)
                    vals.append(Fraction(v))
                t = t_from_blocks(
                    pair.family_tag, dict(pair.params), ps, q, vals
                )
                kt_dim, wt_dim = expected_block_dims(pair.family_tag, ps, q)
                if len(stabilizer_subalgebra(pair.action, t)) != kt_dim:
                    failures.append((name, ps, q, "stabilizer"))
                if pair.dim_w - len(orbit_tangent(pair.action, t)) != wt_dim:
                    failures.append((name, ps, q, "normal space"))
                checked += 1
    _report(
        3,
        not failures and checked >= 20,
        f"stabilizer and normal-space dimensions match the block formulas "
        f"on {checked} randomized patterns across 7 families"
        + (f"; failing: {failures}" if failures else ""),
    )


def _embedding_rows(pair, normal_basis):
    rows = []
    for j in range(pair.dim_v):
        row = [Fraction(0)] * (pair.dim_v + pair.dim_w)
        row[j] = Fraction(1)
        rows.append(row)
    for comp in normal_basis:
        rows.append([Fraction(0)] * pair.dim_v + [Fraction(x) for x in comp])
    return rows


def test_criterion_04_restriction_identities():
    cases = [
        ("line2-n2", t_from_blocks("line2", {"n": 2}, [1, 1], 0, [1, -1])),
        ("line1-n4", t_from_blocks("line1", {"n": 4}, [1], 2, [1])),
    ]
    failures = []
    points = 0
    for name, t in cases:
        pair = load_pair(name)
        quotient = quotient_pair(pair.action, t)
        table = quotient_restriction_table(pair, quotient)
        emb = _embedding_rows(pair, quotient.normal_basis)
        lhs_polys = [
            restrict(rho, emb) for rho in pair.hilbert_basis.polynomials
        ]
        rhs_polys = [
            evaluate_expression(
                table.restriction_expression(j), table.quotient_basis
            )
            for j in range(len(lhs_polys))
        ]
        rng = random.Random(99)
        dim = (
            quotient.quotient_algebra.dim_v + quotient.quotient_algebra.dim_w
        )
        for _ in range(200):
            pt = tuple(
                Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                for _ in range(dim)
            )
            points += 1
            for j, (lhs, rhs) in enumerate(zip(lhs_polys, rhs_polys)):
                if lhs.evaluate(pt) != rhs.evaluate(pt):
                    failures.append((name, j, pt))
    _report(
        4,
        not failures,
        f"restriction tables agree with direct restriction at {points} "
        "random rational points (2 quotient pairs)"
        + (f"; failing: {failures[:3]}" if failures else ""),
    )


def test_criterion_05_push_forward_identities():
    failures = []
    for name in ("H1-U1", "H2-U2"):
        pair = load_pair(name)
        alg = pair.algebra
        nv, nw = alg.dim_v, alg.dim_w
        s = [[Fraction(1)]]
        rng = random.Random(3)
        for instance in range(100):
            p1 = random_polynomial(rng, nv, nw, (2, 1), density=0.15)
            p2 = random_polynomial(rng, nv, nw, (2, 1), density=0.15)
            d1, d2 = symmetrize(alg, p1), symmetrize(alg, p2)
            # R^s lambda'(p) = lambda' of the restricted symbol: check
            # through the defining property on the composition
            prod = symmetrize(alg, unsymmetrize(compose(d1, d2)))
            lhs = push_forward(prod, s)
            rhs = compose(push_forward(d1, s), push_forward(d2, s))
            if lhs != rhs:
                failures.append((name, "composition", instance))
    _report(
        5,
        not failures,
        "push-forward is multiplicative on 100 random symbol pairs for "
        "each central reduction (H1, H2)"
        + (f"; failing: {failures[:3]}" if failures else ""),
    )


def test_criterion_06_spectral_intertwining_and_fan():
    pair = load_pair("H1-U1")
    alg = pair.algebra
    s = [[Fraction(1)]]
    worst_intertwine = 0.0
    # five instances: vary the function and the Bessel frequency
    instances = [
        (NumericFunction.gaussian(3, scale=0.6), 0.8),
        (NumericFunction.gaussian(3, scale=0.8), 1.3),
        (
            NumericFunction.gaussian(
                3, scale=0.6, poly=lambda p: 1.0 + p[:, 2] ** 2
            ),
            2.0,
        ),
        (
            NumericFunction.gaussian(
                3,
                scale=0.7,
                poly=lambda p: 1.0 + 0.5 * (p[:, 0] ** 2 + p[:, 1] ** 2),
            ),
            0.5,
        ),
        (NumericFunction.gaussian(3, scale=0.5, amplitude=2.0), 1.7),
    ]
    for F, omega in instances:
        phi = bessel_spherical(2, omega)
        RF = radon_pushforward(F, s, alg, nodes=48)
        lhs, _ = spherical_transform(RF, phi, nodes=56, radius=5.0)
        lift = NumericFunction(
            3, lambda q, phi=phi: phi(q[:, :2]), radius=12.0
        )
        rhs, _ = spherical_transform(F, lift, nodes=56, radius=5.0)
        worst_intertwine = max(worst_intertwine, abs(lhs - rhs))
    ok_intertwine = worst_intertwine < TOL_INTERTWINING

    worst_residual = 0.0
    for lam in (0.5, 1.0, 2.0, 3.5, 5.0, -1.0, -2.5, -5.0):
        for k in range(11):
            worst_residual = max(
                worst_residual, fan_residual(1, lam, k)
            )
    ok_fan = worst_residual < TOL_FAN
    _report(
        6,
        ok_intertwine and ok_fan,
        f"central push-forward intertwines the transforms on 5 instances "
        f"(max {worst_intertwine:.2e} < 1e-5) and fan eigen-residuals "
        f"(max {worst_residual:.2e} < 1e-6, |lambda| <= 5, k <= 10)",
    )


def test_criterion_07_transform_multiplicativity():
    pair = load_pair("H1-U1")
    alg = pair.algebra
    F = NumericFunction.gaussian(3, scale=0.5)
    G = NumericFunction.gaussian(
        3, scale=0.5, poly=lambda p: 1.0 + 0.3 * (p[:, 0] ** 2 + p[:, 1] ** 2)
    )
    FG = group_convolution(F, G, alg, nodes=32, radius=4.0)
    GF = group_convolution(G, F, alg, nodes=32, radius=4.0)
    pts = 1.2 * np.random.default_rng(1).standard_normal((30, 3))
    comm_resid = float(np.max(np.abs(FG(pts) - GF(pts))))

    fan_points = [(lam, k) for lam in (0.7, 1.3, -1.0, 2.1, -2.6) for k in (0, 2)]
    phis = [spherical_heisenberg(1, lam, k) for lam, k in fan_points]
    tF = spherical_transform_many(F, phis, nodes=48, radius=4.0)
    tG = spherical_transform_many(G, phis, nodes=48, radius=4.0)
    tFG = spherical_transform_many(FG, phis, nodes=36, radius=5.2)
    worst = max(
        abs(ab - a * b) for ab, a, b in zip(tFG, tF, tG)
    )
    ok = worst < TOL_MULTIPLICATIVE and comm_resid < TOL_MULTIPLICATIVE
    _report(
        7,
        ok,
        f"spherical transform multiplicative at {len(phis)} fan points "
        f"(max defect {worst:.2e}) and K-invariant convolution commutes "
        f"(residual {comm_resid:.2e}), both < 1e-6",
    )


def test_criterion_08_product_decomposition():
    worst = 0.0
    bound6 = 0.0
    for dim in (1, 2):
        F = NumericFunction.gaussian(dim, scale=1.0)
        dec = product_decomposition(F, radius=8.0, m_max=32)
        rng = np.random.default_rng(4)
        pts = np.clip(2.0 * rng.standard_normal((400, dim)), -6.5, 6.5)
        worst = max(
            worst,
            float(np.max(np.abs(dec.reconstruction(pts) - F(pts)))),
        )
        bound6 = max(bound6, dec.coefficient_bound(6))
    ok = worst < TOL_RECONSTRUCTION and np.isfinite(bound6)
    _report(
        8,
        ok,
        f"cube Fourier reconstruction sup-error {worst:.2e} < 1e-8 at "
        f"(R=8, m_max=32); weighted coefficient bound "
        f"sup |c|(1+|l|+|m|)^6 = {bound6:.3g} (finite)",
    )


def test_criterion_09_dyadic_partition():
    eta = dyadic_partition(2.0)
    rng = np.random.default_rng(8)
    s = np.exp(rng.uniform(np.log(1e-5), np.log(1e5), 1000))
    total = sum(eta(j, s) for j in range(-25, 26))
    err = float(np.max(np.abs(total - 1.0)))
    scaling = float(np.max(np.abs(eta(4, s) - eta(0, s / 2.0**8))))
    support = float(
        np.max(np.abs(eta(0, np.array([1e-3, 0.5, 1.0, 16.0, 1e3]))))
    )
    ok = err < TOL_PARTITION and scaling < TOL_PARTITION and support == 0.0
    _report(
        9,
        ok,
        f"dyadic partition sums to one at 1000 sampled points "
        f"(error {err:.2e}), exact scaling (error {scaling:.2e}), "
        f"support confined to the dyadic annulus",
    )


def test_criterion_10_generation_up_to_cutoff():
    failures = []
    names = (
        "H1-U1",
        "R1-SO1",
        "R2-SO2",
        "R3-SO3",
        "R4-SO4",
        "line1-n4",
        "line2-n2",
    )
    for name in names:
        pair = load_pair(name)
        report = generation_check(pair.action, pair.hilbert_basis, (4, 2))
        if not report.passed:
            failures.append((name, report.certificates))
    _report(
        10,
        not failures,
        "Hilbert-basis products span every invariant up to bi-degree (4,2) "
        f"for {len(names)} pairs"
        + (f"; failing: {[f[0] for f in failures]}" if failures else ""),
    )


def test_criterion_11_s0_criteria_agree():
    rng = np.random.default_rng(6)
    functions = []
    # twelve test functions: Gaussians times assorted polynomial factors
    for i in range(12):
        power = i % 4
        shift = 0.3 * float(rng.standard_normal())
        coef = float(rng.uniform(0.5, 1.5))

        def poly(p, power=power, coef=coef):
            return coef * p[:, 1] ** power + (power == 0)

        functions.append(
            NumericFunction.gaussian(
                2, scale=1.0, center=[shift, 0.0], poly=poly
            )
        )
    disagreements = 0
    for F in functions:
        report = s0_membership(F, 1, [1], tol=TOL_S0)
        if not all(e["criteria_agree"] for e in report["entries"]):
            disagreements += 1
    _report(
        11,
        disagreements == 0,
        "moment and Fourier-derivative membership criteria agree within "
        f"1e-8 on 12 constructed test functions "
        f"({disagreements} disagreements)",
    )
