import random
from fractions import Fraction

import pytest

from gelfandkit.actions import (
    central_quotient,
    check_action,
    orbit_tangent,
    quotient_pair,
    stabilizer_subalgebra,
)
from gelfandkit.catalog import load_all, load_pair
from gelfandkit.families import (
    admissible_patterns,
    expected_block_dims,
    t_from_blocks,
)


def test_all_catalog_actions_validate():
    for pair in load_all():
        name = pair.name
        report = check_action(pair.action)
        assert report.passed, (name, report.failures())


def test_quotient_line2_n2_splits_into_two_heisenbergs():
    pair = load_pair("line2-n2")
    t = t_from_blocks("line2", {"n": 2}, [1, 1], 0, [1, -1])
    data = quotient_pair(pair.action, t)
    # t = diag(i, -i) is regular: stabilizer is the diagonal torus
    assert len(data.stabilizer_coefficients) == 2
    assert len(data.tangent_basis) == 2
    assert data.quotient_algebra.dim_v == 4
    assert data.quotient_algebra.dim_w == 2
    # the quotient brackets are two commuting Heisenberg centers
    b1 = data.quotient_algebra.bracket((1, 0, 0, 0), (0, 1, 0, 0))
    b2 = data.quotient_algebra.bracket((0, 0, 1, 0), (0, 0, 0, 1))
    assert any(x != 0 for x in b1) and any(x != 0 for x in b2)
    cross = data.quotient_algebra.bracket((1, 0, 0, 0), (0, 0, 1, 0))
    assert all(x == 0 for x in cross)


def test_block_pattern_dimensions_match_tables():
    rng = random.Random(11)
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
        patterns = admissible_patterns(pair.family_tag, dict(pair.params))
        for ps, q in patterns:
            if not ps:
                continue
            for _ in range(2):  # two random value draws per block shape
                values = []
                used = set()
                for _ in ps:
                    val = rng.randint(1, 9)
                    while val in used:
                        val = rng.randint(1, 9)
                    used.add(val)
                    values.append(Fraction(val))
                t = t_from_blocks(
                    pair.family_tag, dict(pair.params), ps, q, values
                )
                kt_dim, wt_dim = expected_block_dims(pair.family_tag, ps, q)
                stab = stabilizer_subalgebra(pair.action, t)
                tangent = orbit_tangent(pair.action, t)
                assert len(stab) == kt_dim, (name, ps, q)
                assert pair.dim_w - len(tangent) == wt_dim, (name, ps, q)
                checked += 1
    assert checked >= 20


def test_trivial_orbit_rejected():
    pair = load_pair("H1-U1")
    with pytest.raises(ValueError):
        quotient_pair(pair.action, [Fraction(1)])


def test_central_quotient_keeps_the_group():
    pair = load_pair("H1-U1")
    data = central_quotient(pair.action, [[Fraction(1)]])
    assert data.quotient_action.dim_k == pair.action.dim_k
    assert data.quotient_algebra.dim_w == 0
