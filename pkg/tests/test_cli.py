import json

import pytest

from gelfandkit import __version__
from gelfandkit.catalog import catalog_hash
from gelfandkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_catalog_list_json(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    artifact = json.loads(out)
    assert artifact["version"] == __version__
    assert artifact["catalog_hash"] == catalog_hash()
    names = [row["name"] for row in artifact["result"]]
    assert "H1-U1" in names and "line2-n2" in names


def test_catalog_list_csv(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--format", "csv")
    assert code == 0
    lines = out.split("\r\n")
    assert lines[0] == "name,family,group,dim_v,dim_w,hilbert_basis_size"


def test_artifacts_are_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["catalog", "list", "-o", str(a)]) == 0
    assert main(["catalog", "list", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_unknown_pair_is_usage_error(capsys):
    code, _, err = run(capsys, "pair", "validate", "nope")
    assert code == 2
    assert "nope" in err


def test_malformed_vector_is_usage_error(capsys):
    code, _, err = run(capsys, "pair", "quotient", "line2-n2", "--t", "1,x")
    assert code == 2


def test_certify_gelfand(capsys):
    code, out, err = run(capsys, "pair", "certify-gelfand", "H1-U1")
    assert code == 0
    assert "all 1 commutator pairs zero" in err
    artifact = json.loads(out)
    assert artifact["result"]["commutative"] is True


def test_quotient_block_shorthand(capsys):
    code, out, _ = run(
        capsys, "pair", "quotient", "line1-n4", "--t", "J,0,0"
    )
    assert code == 0
    result = json.loads(out)["result"]
    assert result["stabilizer_dim"] == 2  # u(1) x so(2)
    assert result["normal_space_dim"] == 2


def test_resource_cap_exit_code(capsys):
    code, _, err = run(
        capsys, "invariants", "dims", "H3-U3", "--cutoff", "12,8"
    )
    assert code == 4
    assert "cap" in err


def test_invariants_dims_csv(capsys):
    code, out, _ = run(
        capsys,
        "invariants",
        "dims",
        "H1-U1",
        "--cutoff",
        "2,1",
        "--format",
        "csv",
    )
    assert code == 0
    rows = [line.split(",") for line in out.strip().split("\r\n")]
    assert rows[0] == ["r", "s", "dim"]
    dims = {(int(r), int(s)): int(d) for r, s, d in rows[1:]}
    assert dims[(2, 0)] == 1 and dims[(1, 0)] == 0


def test_generation_check_command(capsys):
    code, out, _ = run(
        capsys, "invariants", "generation-check", "H1-U1", "--cutoff", "3,2"
    )
    assert code == 0
    assert json.loads(out)["result"]["passed"] is True


def test_spectrum_fan_csv(capsys):
    code, out, _ = run(
        capsys,
        "spectrum",
        "fan",
        "--n",
        "1",
        "--lmax",
        "2",
        "--lsteps",
        "2",
        "--kmax",
        "2",
        "--format",
        "csv",
    )
    assert code == 0
    lines = out.strip().split("\r\n")
    assert lines[0].startswith("lambda,k,omega")
    assert len(lines) == 1 + 2 * 2 * 3 + 3  # rays plus boundary points


def test_lambda_map_command(capsys, tmp_path):
    pts = tmp_path / "pts.json"
    pts.write_text(json.dumps([[1.0, 1.0, 0.5, 2.0]]), encoding="utf-8")
    code, out, _ = run(
        capsys,
        "spectrum",
        "lambda-map",
        "line2-n2",
        "--t",
        "diag:1,-1",
        "--points",
        str(pts),
    )
    assert code == 0
    mapped = json.loads(out)["result"][0]
    by_tag = dict(zip(mapped["components"], mapped["xi"]))
    assert by_tag["wcheck"] == pytest.approx(2.0)
    assert by_tag["v"] == pytest.approx(2.5)


def test_analyze_partition_and_moments(capsys):
    code, out, _ = run(capsys, "analyze", "partition")
    assert code == 0
    assert json.loads(out)["result"]["sum_error"] < 1e-10
    code, out, _ = run(
        capsys, "analyze", "moments", "--dim", "2", "--order", "1"
    )
    assert code == 0
