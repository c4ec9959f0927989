import math

import pytest

from gelfandkit.actions import central_quotient, quotient_pair
from gelfandkit.catalog import load_pair
from gelfandkit.families import t_from_blocks
from gelfandkit.invariants import quotient_restriction_table
from gelfandkit.spectrum import (
    SpectrumPoint,
    dominance_check,
    heisenberg_fan,
    homogeneous_norm,
    lambda_map,
    make_point,
    pi_projection,
    spectrum_dilate,
)


def test_make_point_consistency(line2n2):
    basis = line2n2.hilbert_basis
    with pytest.raises(ValueError):
        # zero w0 block with a nonzero mixed block is inconsistent
        xi = [
            1.0 if c == "vw0" else 0.0 for c in basis.components
        ]
        make_point(basis, xi)


def test_fan_points_closed_form(h1):
    points = heisenberg_fan(1, [1.0, -2.0], 2, [0.0, 3.0])
    ray = [p for p in points if dict(p.provenance)["lambda"] != 0.0]
    for p in ray:
        prov = dict(p.provenance)
        assert p.xi[1] == pytest.approx(
            abs(prov["lambda"]) * (2 * prov["k"] + 1), abs=1e-6
        )
    boundary = [p for p in points if dict(p.provenance)["lambda"] == 0.0]
    assert [p.xi[1] for p in boundary] == [0.0, 9.0]


def test_fan_rejects_zero_lambda(h1):
    with pytest.raises(ValueError):
        heisenberg_fan(1, [0.0], 1, [])


def test_dilation_and_norm():
    point = SpectrumPoint((2.0, 3.0), ("wcheck", "v"), (2, 2))
    scaled = spectrum_dilate(2.0, point)
    assert scaled.xi == (8.0, 12.0)
    assert homogeneous_norm(point) == pytest.approx(
        math.sqrt(2.0) + math.sqrt(3.0)
    )
    with pytest.raises(ValueError):
        spectrum_dilate(0.0, point)


def test_pi_projection_extracts_w_blocks(line2n2):
    basis = line2n2.hilbert_basis
    xi = tuple(float(i + 1) for i in range(len(basis.elements)))
    point = make_point(basis, xi)
    keep = [
        x
        for x, c in zip(xi, basis.components)
        if c in ("w0", "wcheck")
    ]
    assert list(pi_projection(point)) == keep


def test_lambda_map_central_h1(h1):
    quotient = central_quotient(h1.action, [[1]])
    table = quotient_restriction_table(h1, quotient)
    qb = table.quotient_basis
    point = make_point(qb, [1.0])
    mapped = lambda_map(table, point)
    # central reduction: the center eigenvalue dies, |v|^2 survives
    assert mapped.xi == (0.0, 1.0)
    assert mapped.components == tuple(h1.hilbert_basis.components)


def test_lambda_map_line2_block_point(line2n2):
    t = t_from_blocks("line2", {"n": 2}, [1, 1], 0, [1, -1])
    quotient = quotient_pair(line2n2.action, t)
    table = quotient_restriction_table(line2n2, quotient)
    qb = table.quotient_basis
    # H1 x H1 point: lambda_i = 1, -1 and level sums 1, 1 (k = 0)
    xi_q = []
    lam = iter([1.0, -1.0])
    for c in qb.components:
        xi_q.append(next(lam) if c == "wcheck" else 1.0)
    mapped = lambda_map(table, make_point(qb, xi_q))
    by_tag = dict(zip(mapped.components, mapped.xi))
    assert by_tag["wcheck"] == pytest.approx(0.0)  # sum of the lambdas
    assert by_tag["v"] == pytest.approx(2.0)  # total level energy


def test_lambda_map_dilation_equivariance(line2n2):
    t = t_from_blocks("line2", {"n": 2}, [1, 1], 0, [1, -1])
    quotient = quotient_pair(line2n2.action, t)
    table = quotient_restriction_table(line2n2, quotient)
    qb = table.quotient_basis
    xi_q = [0.5 if c == "wcheck" else 1.5 for c in qb.components]
    point = make_point(qb, xi_q)
    delta = 1.7
    lhs = lambda_map(table, spectrum_dilate(delta, point))
    rhs = spectrum_dilate(delta, lambda_map(table, point))
    assert lhs.xi == pytest.approx(rhs.xi)


def test_dominance_diagnostics(h1):
    basis = h1.hilbert_basis
    good = [make_point(basis, (lam, abs(lam) * (2 * k + 1)))
            for lam in (0.5, 1.0, -2.0) for k in range(3)]
    report = dominance_check(good, basis)
    assert report.passed
    bad = [make_point(basis, (5.0, 0.0))]
    report = dominance_check(bad, basis)
    assert not report.passed
