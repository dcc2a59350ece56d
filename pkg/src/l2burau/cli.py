"""Command line: ``l2burau {burau,l2,reduced,torsion,verify} ...``.

Machine-readable output (JSON or CSV) goes to stdout or ``--out``; tables
and errors go to stderr.  Exit status is 0 on success, 2 when a
verification fails (a gamma that does not kill the relators, or a failed
check), and 1 on any other error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .braid import BraidWord, parse_braid
from .burau import burau, reduced_burau
from .fkdet import RTOL, SERIES_ORDER, fk_det
from .groups import (
    GammaMap,
    abelianization_gamma,
    exponent_sum_gamma,
    identity_gamma,
    load_group_config,
)
from .operators import OperatorMatrix, l2_burau, reduced_l2_burau
from .torsion import GammaVerificationError, torsion_determinant
from .verify import SUITES, format_table, run_suite

EXIT_OK, EXIT_ERROR, EXIT_VERIFY = 0, 1, 2


class VerificationFailed(Exception):
    pass


def _t_grid(text: str | None) -> list[float]:
    if not text:
        return []
    grid = [float(v) for v in text.split(",") if v.strip()]
    if any(t <= 0 for t in grid):
        raise ValueError("t values must be positive")
    return grid


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _braid(args) -> BraidWord:
    return parse_braid(args.braid, args.strands)


def _gamma(args, n: int, basis: str) -> GammaMap:
    if args.group:
        _, gamma = load_group_config(args.group)
        if gamma is None:
            raise ValueError(f"{args.group} has no 'gamma' entry")
    elif args.gamma == "id":
        gamma = identity_gamma(n, basis)
    elif args.gamma == "abelianization":
        gamma = abelianization_gamma(n)
    elif args.gamma == "exponent-sum":
        gamma = exponent_sum_gamma(n)
    elif Path(args.gamma).is_file():
        _, gamma = load_group_config(args.gamma)
        if gamma is None:
            raise ValueError(f"{args.gamma} has no 'gamma' entry")
    else:
        raise ValueError(f"--gamma must be id, abelianization, exponent-sum or a config file, "
                         f"got {args.gamma!r}")
    if gamma.n != n:
        raise ValueError(f"gamma has {gamma.n} images, braid has {n} strands")
    return gamma


def _matrix_csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "entry"])
    for i, r in enumerate(rows, start=1):
        for j, entry in enumerate(r, start=1):
            w.writerow([i, j, entry])
    return buf.getvalue()


def _operator_payload(m: OperatorMatrix, args, beta: BraidWord, gamma: GammaMap) -> dict:
    data = {"braid": str(beta), "strands": beta.n, "gamma": gamma.describe(), **m.to_json(),
            "display": m.format()}
    grid = _t_grid(args.t)
    if grid:
        target = m.minus_identity()
        data["det_minus_identity"] = [
            {"t": t, **fk_det(target, t, radius=args.radius, order=args.order).to_json()}
            for t in grid
        ]
    return data


def cmd_burau(args) -> tuple[object, str]:
    beta = _braid(args)
    m = reduced_burau(beta) if args.reduced else burau(beta)
    rows = [[repr(x) for x in r] for r in m.rows]
    payload = {"braid": str(beta), "strands": beta.n, "reduced": args.reduced,
               "matrix": m.to_json(), "display": rows}
    return payload, _matrix_csv(rows)


def cmd_l2(args) -> tuple[object, str]:
    beta = _braid(args)
    gamma = _gamma(args, beta.n, "x")
    m = l2_burau(beta, gamma)
    return _operator_payload(m, args, beta, gamma), _matrix_csv(m.format())


def cmd_reduced(args) -> tuple[object, str]:
    beta = _braid(args)
    gamma = _gamma(args, beta.n, "g")
    m = reduced_l2_burau(beta, gamma)
    return _operator_payload(m, args, beta, gamma), _matrix_csv(m.format())


def cmd_torsion(args) -> tuple[object, str]:
    beta = _braid(args)
    gamma = _gamma(args, beta.n, "g")
    grid = _t_grid(args.t) or [0.5, 2.0]
    try:
        report = torsion_determinant(beta, gamma, grid, radius=args.radius, order=args.order,
                                     rtol=args.rtol)
    except GammaVerificationError as err:
        raise VerificationFailed(str(err)) from err
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "det", "torsion", "series_value", "cross_deviation"])
    for r in report.records:
        w.writerow([r.t, r.det, r.torsion, r.diagnostics.get("series_value"),
                    r.diagnostics.get("cross_deviation")])
    return report.to_json(), buf.getvalue()


def cmd_verify(args) -> tuple[object, str]:
    checks = run_suite(args.suite)
    print(format_table(checks), file=sys.stderr)
    passed = sum(c.passed for c in checks)
    print(f"{passed}/{len(checks)} checks passed", file=sys.stderr)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "name", "passed", "seconds", "detail"])
    for c in checks:
        w.writerow([c.suite, c.name, c.passed, round(c.seconds, 3), c.detail])
    payload = {"suite": args.suite, "passed": passed == len(checks),
               "checks": [c.to_json() for c in checks]}
    if passed != len(checks):
        _emit(args, payload, buf.getvalue())
        raise VerificationFailed(f"{len(checks) - passed} checks failed")
    return payload, buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="l2burau",
                                     description="Burau and L2-Burau matrices of braids, "
                                                 "Fuglede-Kadison determinants and L2 torsion.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, gamma=True, numeric=True):
        p.add_argument("--braid", required=True,
                       help='braid word, e.g. "1 -2 1" or "s1 s2^-1"; "" is the trivial braid')
        p.add_argument("--strands", type=_positive, help="number of strands (default: max index + 1)")
        if gamma:
            p.add_argument("--gamma", default="id",
                           help="id, abelianization, exponent-sum, or a JSON group config file")
            p.add_argument("--group", help="JSON group config with a 'gamma' entry (overrides --gamma)")
        if numeric:
            p.add_argument("--t", help="comma-separated positive t values")
            p.add_argument("--radius", type=_positive, help="maximum truncation radius")
            p.add_argument("--order", type=_positive, default=SERIES_ORDER, help="series order")
            p.add_argument("--rtol", type=float, default=RTOL,
                           help="stop growing the truncation once estimates agree to this")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("burau", help="classical Burau matrix over Z[T, T^-1]")
    common(p, gamma=False, numeric=False)
    p.add_argument("--reduced", action="store_true", help="reduced (n-1)x(n-1) matrix")
    p.set_defaults(func=cmd_burau)

    p = sub.add_parser("l2", help="symbolic L2-Burau matrix in the x basis")
    common(p)
    p.set_defaults(func=cmd_l2)

    p = sub.add_parser("reduced", help="symbolic reduced L2-Burau matrix in the g basis")
    common(p)
    p.set_defaults(func=cmd_reduced)

    p = sub.add_parser("torsion", help="det(reduced L2-Burau - Id) and implied L2 torsion")
    common(p)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("suite", choices=[*SUITES, "all"])
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(args, payload, csv_text: str) -> None:
    text = csv_text if args.format == "csv" else json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, csv_text = args.func(args)
    except VerificationFailed as err:
        print(f"verification failed: {err}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    _emit(args, payload, csv_text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
