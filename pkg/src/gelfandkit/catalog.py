"""Catalog of shipped nilpotent pairs.

Pairs are loaded from JSON files bundled under gelfandkit/data, one file
per pair.  Set the GELFANDKIT_CATALOG_DIR environment variable to load
from a different directory instead.  All numeric entries in the files
are exact rationals written as strings ("1/2"), so a loaded pair is
bit-identical to the built one.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .actions import CompactAction
from .algebra import StepTwoAlgebra, validate_algebra
from .invariants import HilbertBasis
from .poly import Polynomial

ENV_VAR = "GELFANDKIT_CATALOG_DIR"


def catalog_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).parent / "data"


@dataclass(frozen=True)
class GelfandPair:
    name: str
    family_tag: str
    group_tag: str
    params: dict
    algebra: StepTwoAlgebra
    action: CompactAction
    hilbert_basis: "HilbertBasis | None"

    @property
    def dim_v(self):
        return self.algebra.dim_v

    @property
    def dim_w(self):
        return self.algebra.dim_w

    def require_basis(self) -> HilbertBasis:
        if self.hilbert_basis is None:
            raise ValueError(f"pair {self.name} ships no Hilbert basis")
        return self.hilbert_basis


def _frac(s) -> Fraction:
    return Fraction(s)


def _frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def _mat_to_json(mat):
    if mat is None:
        return None
    return [[_frac_str(x) for x in row] for row in mat]


def _mat_from_json(data):
    if data is None:
        return None
    return tuple(tuple(_frac(x) for x in row) for row in data)


def entry_to_json(entry: dict) -> dict:
    nv, nw = entry["dim_v"], entry["dim_w"]
    hb = entry["hilbert_basis"]
    return {
        "name": entry["name"],
        "family_tag": entry["family_tag"],
        "group_tag": entry["group_tag"],
        "params": entry["params"],
        "dim_v": nv,
        "dim_w": nw,
        "structure_constants": [
            [[_frac_str(x) for x in row] for row in plane]
            for plane in entry["structure_constants"]
        ],
        "gram_v": _mat_to_json(entry["gram_v"]),
        "gram_w": _mat_to_json(entry["gram_w"]),
        "derived": entry["derived"],
        "k_generators": [
            [_mat_to_json(av), _mat_to_json(aw)]
            for av, aw in entry["k_generators"]
        ],
        "hilbert_basis": None
        if hb is None
        else [{"component": tag, "terms": p.to_json()} for tag, p in hb],
    }


def pair_from_json(data: dict) -> GelfandPair:
    nv, nw = data["dim_v"], data["dim_w"]
    c = tuple(
        tuple(tuple(_frac(x) for x in row) for row in plane)
        for plane in data["structure_constants"]
    )
    alg = StepTwoAlgebra(
        nv,
        nw,
        c,
        gram_v=_mat_from_json(data["gram_v"]),
        gram_w=_mat_from_json(data["gram_w"]),
        derived=data["derived"],
        name=data["name"],
    )
    gens = tuple(
        (_mat_from_json(av), _mat_from_json(aw))
        for av, aw in data["k_generators"]
    )
    action = CompactAction(alg, gens, data["group_tag"])
    hb = data["hilbert_basis"]
    basis = None
    if hb is not None:
        basis = HilbertBasis(
            tuple(
                (el["component"], Polynomial.from_json(nv, nw, el["terms"]))
                for el in hb
            )
        )
    return GelfandPair(
        name=data["name"],
        family_tag=data["family_tag"],
        group_tag=data["group_tag"],
        params=data["params"],
        algebra=alg,
        action=action,
        hilbert_basis=basis,
    )


def list_pairs():
    """Sorted names of every pair in the active catalog directory."""
    d = catalog_dir()
    return sorted(p.stem for p in d.glob("*.json"))


def load_pair(name: str) -> GelfandPair:
    path = catalog_dir() / f"{name}.json"
    if not path.exists():
        raise KeyError(f"no catalog pair named {name!r} in {catalog_dir()}")
    with open(path) as fh:
        return pair_from_json(json.load(fh))


def load_all():
    return [load_pair(name) for name in list_pairs()]


def catalog_hash() -> str:
    """SHA-256 over the sorted catalog files, for artifact provenance."""
    h = hashlib.sha256()
    for name in list_pairs():
        path = catalog_dir() / f"{name}.json"
        h.update(name.encode())
        h.update(path.read_bytes())
    return h.hexdigest()


def regenerate_data(target_dir=None):
    """Rebuild every bundled JSON file from the exact constructions."""
    from . import families

    target = Path(target_dir) if target_dir else Path(__file__).parent / "data"
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for entry in families.build_all():
        data = entry_to_json(entry)
        path = target / f"{entry['name']}.json"
        with open(path, "w") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
        written.append(path)
    return written


def validate_pair(pair: GelfandPair):
    """Full structural validation; returns a ValidationReport."""
    from .actions import check_action

    report = validate_algebra(pair.algebra)
    action_report = check_action(pair.action)
    checks = list(report.checks) + list(action_report.checks)
    if pair.hilbert_basis is not None:
        problems = pair.hilbert_basis.validate(pair.action)
        checks.append(
            ("hilbert_basis", not problems, "; ".join(problems) or "ok")
        )
    from .algebra import ValidationReport

    return ValidationReport(tuple(checks))
