"""Command-line interface.

Subcommands cover catalog inspection, pair validation and Gelfand
certification, quotient and restriction tables, spectra, and the
numeric experiments.  Artifacts are UTF-8 JSON or RFC-4180 CSV and
embed version, catalog hash, seed and tolerances so identical configs
give byte-identical output.

Exit codes: 0 success, 2 usage error (unknown pair, malformed vector),
3 validation or certification failure, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__

EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_RESOURCE = 4

# caps guarding against accidentally huge symbolic runs
MAX_CUTOFF_MONOMIALS = 20000
MAX_FAN_POINTS = 2000


class UsageError(Exception):
    pass


class ResourceCap(Exception):
    pass


class ValidationFailure(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


def _fmt(x):
    """17-significant-digit float formatting for reproducible artifacts."""
    if isinstance(x, float):
        return float(f"{x:.17g}")
    return x


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return {"re": _fmt(obj.real), "im": _fmt(obj.imag)}
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if hasattr(obj, "to_json"):
        return _jsonify(obj.to_json())
    return repr(obj)


def _emit(args, payload, csv_rows=None, csv_header=None):
    """Write the artifact in the requested format."""
    from .catalog import catalog_hash

    fmt = getattr(args, "format", "json")
    if fmt == "csv":
        if csv_rows is None:
            raise UsageError("this command has no CSV form")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(csv_header)
        for row in csv_rows:
            writer.writerow(
                [f"{x:.17g}" if isinstance(x, float) else x for x in row]
            )
        text = buf.getvalue()
    else:
        artifact = {
            "tool": "gelfandkit",
            "version": __version__,
            "catalog_hash": catalog_hash(),
            "seed": getattr(args, "seed", None),
            "tolerances": {"tol": getattr(args, "tol", None)},
            "result": _jsonify(payload),
        }
        text = json.dumps(artifact, indent=2, sort_keys=True) + "\n"
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_pair(name):
    from .catalog import load_pair

    try:
        return load_pair(name)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc


def _parse_fraction(token):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational {token!r}") from exc


def _parse_t(pair, text):
    """Parse --t: comma-separated rationals or block shorthands.

    Plain rationals of length dim_w are taken as raw w coordinates.
    "J" tokens denote 2x2 rotation blocks with value 1 (or "rJ" with
    value r) and "0" a zero direction, e.g. "J,0,0".  "diag:a,b,..."
    places diagonal block values per the family's convention.
    """
    from .families import t_from_blocks

    text = text.strip()
    family = pair.family_tag
    params = dict(pair.params)
    n = params.get("n")
    if text.startswith("diag:"):
        values = [_parse_fraction(v) for v in text[5:].split(",")]
        per_block = 2 if family in ("line1", "line4", "line5", "line6") else 1
        used = per_block * len(values)
        if n is None or used > n:
            raise UsageError("too many diagonal values for this pair")
        return t_from_blocks(
            family, params, [1] * len(values), n - used, values
        )
    tokens = [t.strip() for t in text.split(",")]
    if any(t.endswith(("J", "j")) for t in tokens):
        values = []
        zeros = 0
        for t in tokens:
            if t in ("J", "j"):
                values.append(Fraction(1))
            elif t.endswith(("J", "j")):
                values.append(_parse_fraction(t[:-1]))
            elif _parse_fraction(t) == 0:
                zeros += 1
            else:
                raise UsageError(
                    f"token {t!r} mixes scalars with J blocks; use diag:"
                )
        if family not in ("line1", "line4", "line5", "line6"):
            raise UsageError("J blocks only apply to rotation families")
        if n is None or 2 * len(values) + zeros != n:
            raise UsageError("block sizes do not add up to n")
        return t_from_blocks(family, params, [1] * len(values), zeros, values)
    values = [_parse_fraction(t) for t in tokens]
    if len(values) != pair.dim_w:
        raise UsageError(
            f"expected {pair.dim_w} w coordinates, got {len(values)}"
        )
    return values


def _parse_cutoff(text):
    try:
        r, s = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError("cutoff must be r,s") from exc
    if r < 0 or s < 0:
        raise UsageError("cutoff must be nonnegative")
    return r, s


def _check_cutoff_cap(pair, cutoff):
    from math import comb

    count = sum(
        comb(pair.dim_v + r - 1, r) * comb(pair.dim_w + s - 1, s)
        for r in range(cutoff[0] + 1)
        for s in range(cutoff[1] + 1)
    )
    if count > MAX_CUTOFF_MONOMIALS:
        raise ResourceCap(
            f"cutoff {cutoff} needs {count} monomials in total "
            f"(cap {MAX_CUTOFF_MONOMIALS})"
        )


# --- catalog ---------------------------------------------------------------


def cmd_catalog_list(args):
    from .catalog import list_pairs, load_pair

    rows = []
    for name in list_pairs():
        pair = load_pair(name)
        rows.append(
            {
                "name": name,
                "family": pair.family_tag,
                "group": pair.group_tag,
                "dim_v": pair.dim_v,
                "dim_w": pair.dim_w,
                "hilbert_basis_size": (
                    len(pair.hilbert_basis.elements)
                    if pair.hilbert_basis
                    else None
                ),
            }
        )
    _emit(
        args,
        rows,
        csv_rows=[
            [
                r["name"],
                r["family"],
                r["group"],
                r["dim_v"],
                r["dim_w"],
                r["hilbert_basis_size"] or 0,
            ]
            for r in rows
        ],
        csv_header=[
            "name",
            "family",
            "group",
            "dim_v",
            "dim_w",
            "hilbert_basis_size",
        ],
    )


# --- pair ------------------------------------------------------------------


def cmd_pair_validate(args):
    from .catalog import validate_pair

    pair = _load_pair(args.name)
    report = validate_pair(pair)
    _emit(args, report)
    if not report.passed:
        raise ValidationFailure(f"pair {args.name} failed validation")


def cmd_pair_certify(args):
    from .operators import gelfand_commutativity_check

    pair = _load_pair(args.name)
    if pair.hilbert_basis is None:
        raise UsageError(f"pair {args.name} has no stored Hilbert basis")
    report = gelfand_commutativity_check(pair)
    _emit(args, report)
    if report.commutative:
        npairs = len(report.entries)
        sys.stderr.write(f"all {npairs} commutator pairs zero\n")
    else:
        raise ValidationFailure("nonzero commutator found")


def cmd_pair_quotient(args):
    from .actions import quotient_pair

    pair = _load_pair(args.name)
    t = _parse_t(pair, args.t)
    try:
        data = quotient_pair(pair.action, t)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    summary = {
        "pair": args.name,
        "t": [str(Fraction(x)) for x in t],
        "stabilizer_dim": len(data.stabilizer_coefficients),
        "orbit_dim": len(data.tangent_basis),
        "normal_space_dim": len(data.normal_basis),
        "quotient_dim_v": data.quotient_algebra.dim_v,
        "quotient_dim_w": data.quotient_algebra.dim_w,
        "normal_basis": [
            [str(Fraction(x)) for x in row] for row in data.normal_basis
        ],
    }
    _emit(args, summary)


def cmd_pair_restriction(args):
    from .actions import quotient_pair
    from .invariants import quotient_restriction_table

    pair = _load_pair(args.name)
    if pair.hilbert_basis is None:
        raise UsageError(f"pair {args.name} has no stored Hilbert basis")
    t = _parse_t(pair, args.t)
    try:
        quotient = quotient_pair(pair.action, t)
        table = quotient_restriction_table(pair, quotient)
    except ValueError as exc:
        raise ValidationFailure(str(exc)) from exc
    payload = {
        "pair": args.name,
        "t": [str(Fraction(x)) for x in t],
        "quotient_basis": [
            {"tag": tag, "polynomial": poly.to_json()}
            for tag, poly in table.quotient_basis.elements
        ],
        "q0": {str(j): expr.to_json() for j, expr in table.q0.items()},
        "qk": {
            f"{j},{l}": expr.to_json() for (j, l), expr in table.qk.items()
        },
        "remainders": {
            str(j): expr.to_json() for j, expr in table.r_terms.items()
        },
    }
    _emit(args, payload)


# --- invariants ------------------------------------------------------------


def cmd_invariants_dims(args):
    from .invariants import invariant_subspace

    pair = _load_pair(args.name)
    cutoff = _parse_cutoff(args.cutoff)
    _check_cutoff_cap(pair, cutoff)
    rows = []
    for r in range(cutoff[0] + 1):
        for s in range(cutoff[1] + 1):
            basis = invariant_subspace(pair.action, (r, s))
            rows.append({"r": r, "s": s, "dim": len(basis)})
    _emit(
        args,
        rows,
        csv_rows=[[row["r"], row["s"], row["dim"]] for row in rows],
        csv_header=["r", "s", "dim"],
    )


def cmd_invariants_generation(args):
    from .invariants import generation_check

    pair = _load_pair(args.name)
    if pair.hilbert_basis is None:
        raise UsageError(f"pair {args.name} has no stored Hilbert basis")
    cutoff = _parse_cutoff(args.cutoff)
    _check_cutoff_cap(pair, cutoff)
    report = generation_check(pair.action, pair.hilbert_basis, cutoff)
    _emit(args, report)
    if not report.passed:
        raise ValidationFailure("generation deficiency found")


# --- spectrum --------------------------------------------------------------


def cmd_spectrum_fan(args):
    from .spectrum import heisenberg_fan

    lams = [
        s * (j + 1) * args.lmax / args.lsteps
        for j in range(args.lsteps)
        for s in (1.0, -1.0)
    ]
    omegas = [j * args.lmax / args.lsteps for j in range(args.lsteps + 1)]
    if len(lams) * (args.kmax + 1) > MAX_FAN_POINTS:
        raise ResourceCap(
            f"fan grid exceeds {MAX_FAN_POINTS} points; shrink the grid"
        )
    try:
        points = heisenberg_fan(args.n, lams, args.kmax, omegas, tol=args.tol)
    except ValueError as exc:
        raise ValidationFailure(str(exc)) from exc
    rows = []
    for pt in points:
        prov = dict(pt.provenance)
        closed = (
            abs(prov["lambda"]) * (2 * prov.get("k", 0) + args.n)
            if prov["lambda"]
            else prov.get("omega", 0.0) ** 2
        )
        rows.append(
            [
                float(prov["lambda"]),
                prov.get("k", ""),
                prov.get("omega", ""),
                *[float(x) for x in pt.xi],
                abs(pt.xi[1] - closed),
            ]
        )
    header = ["lambda", "k", "omega", "xi_center", "xi_energy", "residual"]
    _emit(args, [pt.to_json() for pt in points], rows, header)


def cmd_spectrum_lambda_map(args):
    from .actions import quotient_pair
    from .invariants import quotient_restriction_table
    from .spectrum import lambda_map, make_point

    pair = _load_pair(args.name)
    if pair.hilbert_basis is None:
        raise UsageError(f"pair {args.name} has no stored Hilbert basis")
    t = _parse_t(pair, args.t)
    try:
        quotient = quotient_pair(pair.action, t)
        table = quotient_restriction_table(pair, quotient)
    except ValueError as exc:
        raise ValidationFailure(str(exc)) from exc
    with open(args.points, encoding="utf-8") as fh:
        raw = json.load(fh)
    out = []
    for xi in raw:
        point = make_point(table.quotient_basis, xi)
        out.append(lambda_map(table, point))
    _emit(args, [pt.to_json() for pt in out])


# --- analyze ---------------------------------------------------------------


def _gaussian(dim, scale, seed, with_poly=False):
    import numpy as np

    from .numerics import NumericFunction

    if not with_poly:
        return NumericFunction.gaussian(dim, scale=scale)
    rng = np.random.default_rng(seed)
    coef = rng.uniform(-1.0, 1.0, dim)

    def poly(pts):
        return 1.0 + np.sum(coef * pts**2, axis=1)

    return NumericFunction.gaussian(dim, scale=scale, poly=poly)


def cmd_analyze_transform(args):
    from .numerics.spherical import spherical_heisenberg
    from .numerics.transforms import spherical_transform

    pair = _load_pair(args.name)
    if pair.family_tag != "heisenberg":
        raise UsageError("spherical transforms are available for H{n} pairs")
    n = pair.params["n"]
    F = _gaussian(pair.dim_v + pair.dim_w, args.scale, args.seed)
    phi = spherical_heisenberg(n, args.lam, args.k)
    value, err = spherical_transform(F, phi, nodes=args.nodes)
    _emit(
        args,
        {
            "pair": args.name,
            "lambda": args.lam,
            "k": args.k,
            "value": value,
            "quadrature_estimate": err,
        },
    )


def cmd_analyze_convolve(args):
    import numpy as np

    from .numerics.transforms import group_convolution

    pair = _load_pair(args.name)
    dim = pair.dim_v + pair.dim_w
    F = _gaussian(dim, args.scale, args.seed)
    G = _gaussian(dim, args.scale, args.seed + 1, with_poly=True)
    FG = group_convolution(F, G, pair.algebra, nodes=args.nodes)
    GF = group_convolution(G, F, pair.algebra, nodes=args.nodes)
    rng = np.random.default_rng(args.seed)
    pts = args.scale * rng.standard_normal((args.samples, dim))
    resid = float(np.max(np.abs(FG(pts) - GF(pts))))
    _emit(
        args,
        {
            "pair": args.name,
            "commutativity_residual": resid,
            "samples": args.samples,
        },
    )
    if resid > args.tol:
        raise ValidationFailure(
            f"convolution commutativity residual {resid} exceeds {args.tol}"
        )


def cmd_analyze_radon(args):
    import numpy as np

    from .numerics.transforms import radon_pushforward

    pair = _load_pair(args.name)
    dim = pair.dim_v + pair.dim_w
    rows = [
        [_parse_fraction(x) for x in row.split(",")]
        for row in args.s.split(";")
    ]
    for row in rows:
        if len(row) != pair.dim_w:
            raise UsageError(f"each s row needs {pair.dim_w} entries")
    F = _gaussian(dim, args.scale, args.seed, with_poly=True)
    RF = radon_pushforward(F, rows, pair.algebra, nodes=args.nodes)
    rng = np.random.default_rng(args.seed)
    pts = args.scale * rng.standard_normal((args.samples, RF.dim))
    _emit(
        args,
        {
            "pair": args.name,
            "quotient_dim": RF.dim,
            "sample_points": pts.tolist(),
            "values": [complex(v) for v in RF(pts)],
        },
    )


def cmd_analyze_decompose(args):
    from .numerics.decomposition import product_decomposition

    import numpy as np

    F = _gaussian(args.dim, args.scale, args.seed, with_poly=True)
    if args.dim > 2:
        raise ResourceCap("cube decompositions are capped at dimension 2")
    dec = product_decomposition(F, radius=args.radius, m_max=args.m_max)
    rng = np.random.default_rng(args.seed)
    pts = args.scale * rng.standard_normal((200, args.dim))
    sup_err = float(np.max(np.abs(dec.reconstruction(pts) - F(pts))))
    _emit(
        args,
        {
            "dim": args.dim,
            "m_max": args.m_max,
            "radius": args.radius,
            "coefficients": len(dec.coefficients),
            "reconstruction_sup_error": sup_err,
            "decay_report": dec.decay_report,
        },
    )
    if sup_err > args.tol:
        raise ValidationFailure(
            f"reconstruction error {sup_err} exceeds {args.tol}"
        )


def cmd_analyze_partition(args):
    import numpy as np

    from .numerics.decomposition import dyadic_partition

    eta = dyadic_partition(args.ratio)
    s = np.geomspace(args.smin, args.smax, args.samples)
    jmax = int(np.ceil(np.log(args.smax) / (2 * np.log(args.ratio)))) + 2
    jmin = int(np.floor(np.log(args.smin) / (2 * np.log(args.ratio)))) - 2
    total = sum(eta(j, s) for j in range(jmin, jmax + 1))
    err = float(np.max(np.abs(total - 1.0)))
    _emit(
        args,
        {
            "ratio": args.ratio,
            "sum_error": err,
            "j_range": [jmin, jmax],
            "samples": args.samples,
        },
    )
    if err > args.tol:
        raise ValidationFailure(f"partition sum error {err} exceeds {args.tol}")


def cmd_analyze_moments(args):
    from .numerics.decomposition import s0_membership

    F = _gaussian(args.dim, args.scale, args.seed, with_poly=True)
    w0 = [int(x) for x in args.w0.split(",")]
    for i in w0:
        if not 0 <= i < args.dim:
            raise UsageError("w0 index out of range")
    report = s0_membership(F, args.order, w0, tol=args.tol)
    _emit(args, report)
    if not all(e["criteria_agree"] for e in report["entries"]):
        raise ValidationFailure("moment criteria disagree")


# --- parser ----------------------------------------------------------------


def _add_common(p, tol=1e-8):
    p.add_argument("--output", "-o", help="write the artifact to this path")
    p.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )
    p.add_argument("--seed", type=int, default=0, help="seed for sampling")
    p.add_argument("--tol", type=float, default=tol, help="tolerance")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gelfandkit",
        description="Symbolic and numeric toolkit for step-2 nilpotent "
        "Gelfand pairs.",
        epilog="--t accepts comma-separated rationals (raw w coordinates), "
        'J-block shorthand like "J,0,0" (2x2 rotation blocks), or '
        '"diag:a,b" (diagonal block values).',
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="catalog inspection")
    cat_sub = cat.add_subparsers(dest="subcommand", required=True)
    p = cat_sub.add_parser("list", help="list pairs with dimensions")
    _add_common(p)
    p.set_defaults(func=cmd_catalog_list)

    pair = sub.add_parser("pair", help="single-pair operations")
    pair_sub = pair.add_subparsers(dest="subcommand", required=True)
    p = pair_sub.add_parser("validate", help="structural validation")
    p.add_argument("name")
    _add_common(p)
    p.set_defaults(func=cmd_pair_validate)
    p = pair_sub.add_parser(
        "certify-gelfand", help="check commutativity of symmetrized basis"
    )
    p.add_argument("name")
    _add_common(p)
    p.set_defaults(func=cmd_pair_certify)
    p = pair_sub.add_parser("quotient", help="quotient pair at a point t")
    p.add_argument("name")
    p.add_argument("--t", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_pair_quotient)
    p = pair_sub.add_parser(
        "restriction-table", help="restriction of the basis to v + w_t"
    )
    p.add_argument("name")
    p.add_argument("--t", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_pair_restriction)

    inv = sub.add_parser("invariants", help="invariant polynomial queries")
    inv_sub = inv.add_subparsers(dest="subcommand", required=True)
    p = inv_sub.add_parser("dims", help="invariant dimensions by bidegree")
    p.add_argument("name")
    p.add_argument("--cutoff", required=True, help="r,s")
    _add_common(p)
    p.set_defaults(func=cmd_invariants_dims)
    p = inv_sub.add_parser(
        "generation-check", help="products of the basis span all invariants"
    )
    p.add_argument("name")
    p.add_argument("--cutoff", default="3,2", help="r,s")
    _add_common(p)
    p.set_defaults(func=cmd_invariants_generation)

    spec = sub.add_parser("spectrum", help="spectrum computations")
    spec_sub = spec.add_subparsers(dest="subcommand", required=True)
    p = spec_sub.add_parser("fan", help="Heisenberg fan points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lmax", type=float, default=5.0)
    p.add_argument("--lsteps", type=int, default=10)
    p.add_argument("--kmax", type=int, default=10)
    _add_common(p, tol=1e-6)
    p.set_defaults(func=cmd_spectrum_fan)
    p = spec_sub.add_parser(
        "lambda-map", help="map quotient spectrum points to ambient ones"
    )
    p.add_argument("name")
    p.add_argument("--t", required=True)
    p.add_argument(
        "--points", required=True, help="JSON file with a list of xi tuples"
    )
    _add_common(p)
    p.set_defaults(func=cmd_spectrum_lambda_map)

    ana = sub.add_parser("analyze", help="numeric experiments")
    ana_sub = ana.add_subparsers(dest="subcommand", required=True)
    p = ana_sub.add_parser("transform", help="spherical transform of a Gaussian")
    p.add_argument("name")
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--scale", type=float, default=0.6)
    p.add_argument("--nodes", type=int, default=48)
    _add_common(p)
    p.set_defaults(func=cmd_analyze_transform)
    p = ana_sub.add_parser("convolve", help="convolution commutativity check")
    p.add_argument("name")
    p.add_argument("--scale", type=float, default=0.5)
    p.add_argument("--nodes", type=int, default=32)
    p.add_argument("--samples", type=int, default=20)
    _add_common(p, tol=1e-6)
    p.set_defaults(func=cmd_analyze_convolve)
    p = ana_sub.add_parser("radon", help="fiber integration over central s")
    p.add_argument("name")
    p.add_argument(
        "--s", required=True, help='basis rows of s, e.g. "1,0;0,1"'
    )
    p.add_argument("--scale", type=float, default=0.8)
    p.add_argument("--nodes", type=int, default=48)
    p.add_argument("--samples", type=int, default=10)
    _add_common(p)
    p.set_defaults(func=cmd_analyze_radon)
    p = ana_sub.add_parser("decompose", help="cube Fourier decomposition")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--radius", type=float, default=8.0)
    p.add_argument("--m-max", type=int, default=32, dest="m_max")
    _add_common(p)
    p.set_defaults(func=cmd_analyze_decompose)
    p = ana_sub.add_parser("partition", help="dyadic partition check")
    p.add_argument("--ratio", type=float, default=2.0)
    p.add_argument("--smin", type=float, default=1e-4)
    p.add_argument("--smax", type=float, default=1e4)
    p.add_argument("--samples", type=int, default=1000)
    _add_common(p, tol=1e-10)
    p.set_defaults(func=cmd_analyze_partition)
    p = ana_sub.add_parser("moments", help="S0 membership by moments")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--w0", default="1", help="comma-separated w0 indices")
    _add_common(p)
    p.set_defaults(func=cmd_analyze_moments)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        raise exc
    try:
        args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceCap as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return EXIT_RESOURCE
    except ValidationFailure as exc:
        sys.stderr.write(f"validation failure: {exc}\n")
        return EXIT_VALIDATION
    return 0


if __name__ == "__main__":
    sys.exit(main())
