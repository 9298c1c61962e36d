"""Command-line front end: expand families, evaluate power sums, verify identities.

Four subcommands:

* ``expand``  — print F_0..F_n of a family, numerically or symbolically;
* ``sums``    — plain and lambda-weighted (alternating) power sums;
* ``verify``  — run an identity over its compiled-in grid (or a JSON grid
  file) and emit a machine-readable report;
* ``list``    — the identity catalogue.

All rational values are read and written as exact ``p/q`` strings (``p``
when the denominator is 1); nothing is ever converted to floating point.
Identical invocations produce byte-identical output.

Exit codes: 0 success (verify: all points passed), 1 verification
failures or per-point errors present, 2 usage error, 3 mathematical
domain error (e.g. the singular kernel lambda = -1 with nu = 0).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .algebra import MathDomainError, PolyXY
from .families import (
    BaseKind,
    FamilyParams,
    atp_sequence,
    classical_reduce,
    gen_power_sum,
    power_sum_direct,
)
from .identities import IdentityPoint, identity_ids, identity_spec, verify_grid, worker_count

_BASE_CHOICES = ("unit", "exp", "gould_hopper", "laguerre", "trunc_exp")
_SCHEMA = 1


# strictly 'p' or 'p/q' with a positive decimal q; no floats ever
_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def _rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational 'p/q' value: {text!r} "
                         f"(use --flag=-p/q for negative values)")
    return Fraction(text)


def _coefficient(text: str, symbol: str):
    if text == "sym":
        return PolyXY.variable(symbol)
    return _rational(text)


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


# -- expand ---------------------------------------------------------------------


def _cmd_expand(args) -> int:
    base = BaseKind(args.base, args.degree)
    lam = _rational(args.lam)
    x = _coefficient(args.x, "x")
    y = _coefficient(args.y, "y")
    if args.family == "atp":
        if args.mu is None or args.nu is None:
            raise ValueError("--family atp requires --mu and --nu")
        params = FamilyParams(args.m, lam, args.mu, args.nu, base)
        seq = atp_sequence(params, x, y, args.n)
    else:
        if args.mu is not None or args.nu is not None:
            raise ValueError(f"--mu/--nu are fixed by --family {args.family}")
        seq = classical_reduce(args.family, args.m, lam, x, y, base, args.n)
    entries = [str(v) for v in seq]
    symbolic = isinstance(x, PolyXY) or isinstance(y, PolyXY)

    if args.format == "json":
        payload = {
            "schema": _SCHEMA,
            "command": "expand",
            "family": args.family,
            "m": args.m,
            "lambda": str(lam),
            "mu": args.mu,
            "nu": args.nu,
            "base": base.kind,
            "degree": base.degree,
            "x": args.x,
            "y": args.y,
            "n": args.n,
            "entries": entries,
        }
        _emit(_json_text(payload), args.output)
    elif args.format == "csv":
        column = "polynomial" if symbolic else "value"
        rows = [[str(n), f'"{e}"' if "," in e else e] for n, e in enumerate(entries)]
        _emit(_csv_text(["n", column], rows), args.output)
    else:
        _emit("\n".join(entries) + "\n", args.output)
    return 0


# -- sums -----------------------------------------------------------------------


def _cmd_sums(args) -> int:
    generalized = args.kind in ("genS", "genM")
    if generalized:
        if args.lam is None:
            raise ValueError(f"--kind {args.kind} requires --lambda")
        lam = _rational(args.lam)
        value = gen_power_sum(args.kind[-1], args.k, args.n, lam)
    else:
        if args.lam is not None:
            raise ValueError(f"--kind {args.kind} does not take --lambda")
        lam = None
        value = power_sum_direct(args.kind, args.k, args.n)

    if args.format == "json":
        payload = {
            "schema": _SCHEMA,
            "command": "sums",
            "kind": args.kind,
            "k": args.k,
            "n": args.n,
            "lambda": None if lam is None else str(lam),
            "value": str(value),
        }
        _emit(_json_text(payload), args.output)
    elif args.format == "csv":
        rows = [[args.kind, str(args.k), str(args.n),
                 "" if lam is None else str(lam), str(value)]]
        _emit(_csv_text(["kind", "k", "n", "lambda", "value"], rows), args.output)
    else:
        _emit(str(value) + "\n", args.output)
    return 0


# -- verify ---------------------------------------------------------------------


def _load_grid_file(path: str, tag: str) -> list[IdentityPoint]:
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, list):
        raise ValueError("grid file must contain a JSON array of points")
    points = []
    for entry in data:
        spec = identity_spec(tag)
        shapes = (entry["shape"],) if "shape" in entry else spec.shapes
        for shape in shapes:
            record = dict(entry)
            record["shape"] = shape
            points.append(IdentityPoint.from_json_dict(record, tag))
    return points


def _cmd_verify(args) -> int:
    identity_spec(args.identity)  # raises KeyError -> usage error for unknown tags
    if args.grid_file is not None:
        points = _load_grid_file(args.grid_file, args.identity)
    else:
        points = None  # compiled-in default grid
    report = verify_grid(args.identity, points, workers=worker_count())
    _emit(_json_text(report.to_json_dict()), args.output)
    return 0 if report.failed == 0 and report.errored == 0 else 1


# -- list -----------------------------------------------------------------------


def _cmd_list(args) -> int:
    specs = [identity_spec(tag) for tag in identity_ids()]
    if args.format == "json":
        _emit(_json_text([s.describe() for s in specs]), args.output)
    else:
        lines = []
        for s in specs:
            info = s.describe()
            lines.append(f"{s.tag:10s} {info['name']}")
            lines.append(f"{'':10s}   shapes: {', '.join(info['shapes'])}; "
                         f"base: {info['base']}; lambda: {info['lambda']}")
            lines.append(f"{'':10s}   {info['substitution']}")
        _emit("\n".join(lines) + "\n", args.output)
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apx",
        description="Exact computation and verification for two-variable "
                    "Apostol-type polynomial families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    expand = sub.add_parser("expand", help="print family values F_0..F_n")
    expand.add_argument("--family", required=True,
                        choices=("atp", "bernoulli", "euler", "genocchi"))
    expand.add_argument("--m", type=int, default=1, help="family order (default 1)")
    expand.add_argument("--lambda", dest="lam", default="1",
                        help="kernel lambda as 'p/q' (default 1)")
    expand.add_argument("--mu", type=int, default=None, help="kernel mu (atp only)")
    expand.add_argument("--nu", type=int, default=None, help="kernel nu (atp only)")
    expand.add_argument("--base", choices=_BASE_CHOICES, default="unit")
    expand.add_argument("--degree", type=int, default=1,
                        help="base degree s or r (default 1)")
    expand.add_argument("--x", default="0", help="x value 'p/q', or 'sym'")
    expand.add_argument("--y", default="0", help="y value 'p/q', or 'sym'")
    expand.add_argument("--n", type=int, required=True, help="highest index n")
    expand.add_argument("--format", choices=("text", "json", "csv"), default="text")
    expand.add_argument("--output", default=None, help="write to file instead of stdout")
    expand.set_defaults(handler=_cmd_expand)

    sums = sub.add_parser("sums", help="power sums and their lambda-weighted forms")
    sums.add_argument("--kind", required=True, choices=("S", "M", "genS", "genM"))
    sums.add_argument("--k", type=int, required=True)
    sums.add_argument("--n", type=int, required=True)
    sums.add_argument("--lambda", dest="lam", default=None,
                      help="lambda as 'p/q' (required for genS/genM)")
    sums.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sums.add_argument("--output", default=None)
    sums.set_defaults(handler=_cmd_sums)

    verify = sub.add_parser("verify", help="check an identity over a grid, emit JSON report")
    verify.add_argument("--identity", required=True, help="identity tag (see 'list')")
    verify.add_argument("--grid", choices=("default",), default="default")
    verify.add_argument("--grid-file", default=None,
                        help="JSON array of points overriding the default grid")
    verify.add_argument("--output", default=None)
    verify.set_defaults(handler=_cmd_verify)

    catalogue = sub.add_parser("list", help="print the identity catalogue")
    catalogue.add_argument("--format", choices=("text", "json"), default="text")
    catalogue.add_argument("--output", default=None)
    catalogue.set_defaults(handler=_cmd_list)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except MathDomainError as exc:
        print(f"apx: domain error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, ZeroDivisionError, OSError, json.JSONDecodeError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"apx: error: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
