"""Command-line front end: ``eval``, ``table`` and ``verify``.

Exit codes: 0 ok, 1 evaluation failure, 2 usage error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager
from dataclasses import replace
from fractions import Fraction

import numpy as np

from .dunkl import METHODS, Evaluation, KernelQuery, bessel, intertwine
from .poly import as_multiplicity, parse_poly
from .quadrature import DEFAULT_Q
from .special import DEFAULT_PARAMS, SeriesParams
from .verify import IDENTITIES, SuiteConfig, UnknownIdentityError, run_suite, write_jsonl

EXIT_OK, EXIT_EVAL, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _kappa(text: str):
    try:
        return as_multiplicity(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad kappa {text!r}: {exc}")


def _range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"expected lo:hi:count, got {text!r}")
    if len(parts) != 3 or count < 1:
        raise argparse.ArgumentTypeError(f"expected lo:hi:count with count >= 1, got {text!r}")
    return lo, hi, count


def _add_numeric(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="rank + 1 (number of coordinates); inferred from --x")
    p.add_argument("--kappa", type=_kappa, required=True,
                   help="multiplicity; p/q selects exact arithmetic, decimals select float")
    p.add_argument("--ell", type=int, help="kernel direction e_ell, 1-based (default: n)")
    p.add_argument("--nu", type=float, default=1.0, help="Bessel spectral scale (default: 1)")
    p.add_argument("--argument", choices=("e", "lambda"), default="e",
                   help="Bessel spectral argument nu e_n or lambda(nu) (default: e)")
    p.add_argument("--method", choices=METHODS, default="series", help="(default: series)")
    p.add_argument("--q", type=int, default=DEFAULT_Q,
                   help=f"Gauss points per simplex axis (default: {DEFAULT_Q})")
    p.add_argument("--max-order", type=int, default=DEFAULT_PARAMS.max_total_order,
                   help=f"series order cap M (default: {DEFAULT_PARAMS.max_total_order})")
    p.add_argument("--tol", type=float, default=DEFAULT_PARAMS.tol,
                   help=f"series tail target (default: {DEFAULT_PARAMS.tol:g})")


def _add_output(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default=default,
                   help=f"(default: {default})")
    p.add_argument("--output", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dunkl-an",
        description="Type A Dunkl kernel, Bessel function and intertwiner.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="exit codes: 0 ok, 1 evaluation failure, 2 usage error, 3 verification failure",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate the kernel, the Bessel function or the intertwiner")
    ev.add_argument("kind", choices=("kernel", "bessel", "intertwine"))
    _add_numeric(ev)
    ev.add_argument("--x", type=_float_list, help="point, comma separated")
    ev.add_argument("--monomial", help="polynomial for intertwine, e.g. 'x1^2' or '1/2 * x2^3 + 1'")
    _add_output(ev, "json")

    tb = sub.add_parser("table", help="tabulate kernel or Bessel values over a grid")
    tb.add_argument("kind", choices=("kernel", "bessel"))
    _add_numeric(tb)
    tb.add_argument("--x", type=_float_list, action="append", default=[],
                    help="add one point (repeatable)")
    tb.add_argument("--diagonal", type=_float_list,
                    help="values s giving the points (s, ..., s); needs --n")
    tb.add_argument("--plane-grid", type=_range,
                    help="lo:hi:count grid in x1..x(n-1) with xn = -(x1+...+x(n-1))")
    tb.add_argument("--grid", type=_range, help="lo:hi:count cartesian grid in all coordinates")
    _add_output(tb, "csv")

    vf = sub.add_parser("verify", help="run the identity suite, JSON lines out")
    vf.add_argument("--only", action="append", default=None,
                    help="identity id (repeatable or comma separated); default: all")
    vf.add_argument("--list", action="store_true", help="list identity ids and exit")
    vf.add_argument("--seed", type=int, default=SuiteConfig.seed,
                    help=f"sampling seed (default: {SuiteConfig.seed})")
    vf.add_argument("--points", type=int, default=SuiteConfig.points,
                    help=f"random points per grid cell (default: {SuiteConfig.points})")
    vf.add_argument("--q", type=int, default=DEFAULT_Q,
                    help=f"Gauss points per simplex axis (default: {DEFAULT_Q})")
    vf.add_argument("--jobs", type=int, default=1, help="worker processes (default: 1)")
    vf.add_argument("--no-timing", action="store_true",
                    help="report runtime_ms = 0 so reruns are byte-identical")
    vf.add_argument("--output", help="write JSON lines to this file instead of stdout")
    return parser


def _series_params(args) -> SeriesParams:
    try:
        return SeriesParams(args.max_order, args.tol)
    except ValueError as exc:
        raise UsageError(str(exc))


def _resolve_n(args, x_len: int | None) -> int:
    n = args.n if args.n is not None else x_len
    if n is None:
        raise UsageError("give --n or a point --x")
    if x_len is not None and x_len != n:
        raise UsageError(f"--x has {x_len} coordinates but --n is {n}")
    if n < 2:
        raise UsageError("n must be at least 2")
    return n


def _query(args, n: int, x) -> KernelQuery:
    try:
        return KernelQuery(args.kind, n, args.kappa, tuple(x), ell=args.ell, nu=args.nu,
                           method=args.method, params=_series_params(args), q=args.q)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc))


def _evaluate(args, query: KernelQuery) -> Evaluation:
    if query.kind == "bessel" and args.argument == "lambda":
        return bessel(query.x, query.kappa, nu=query.nu, method=query.method,
                      argument="lambda", params=query.params, q=query.q)
    return query.evaluate()


def _kappa_text(kappa) -> str:
    return str(kappa) if isinstance(kappa, Fraction) else repr(kappa)


def _err_column(ev: Evaluation) -> float | None:
    # with method=both the cross-check discrepancy counts as error too
    if ev.discrepancy is None:
        return ev.err_bound
    return max(ev.err_bound or 0.0, ev.discrepancy)


@contextmanager
def _sink(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def cmd_eval(args) -> int:
    if args.kind == "intertwine":
        return _eval_intertwine(args)
    if args.x is None:
        raise UsageError("eval needs --x")
    n = _resolve_n(args, len(args.x))
    if args.argument == "lambda" and args.kind != "bessel":
        raise UsageError("--argument applies to bessel only")
    query = _query(args, n, args.x)
    if args.argument == "lambda" and abs(sum(query.x)) > 1e-12 * max(1.0, *map(abs, query.x)):
        raise UsageError("--argument lambda needs a point with x1 + ... + xn = 0")
    try:
        ev = _evaluate(args, query)
    except (ArithmeticError, ValueError) as exc:
        print(f"error: {args.kind} evaluation failed: {exc}", file=sys.stderr)
        return EXIT_EVAL
    record = {
        "kind": args.kind,
        "n": n,
        "kappa": _kappa_text(query.kappa),
        "x": list(query.x),
        "ell": query.ell,
        "nu": query.nu if args.kind == "bessel" else None,
        "method": ev.method,
        "value": ev.value,
        "err_bound": ev.err_bound,
        "discrepancy": ev.discrepancy,
        "arithmetic": "float",
    }
    record = {k: v for k, v in record.items() if v is not None or k == "err_bound"}
    with _sink(args.output) as out:
        _write_records(out, args.format, [record], text=f"{ev.value!r}")
    return EXIT_OK


def _eval_intertwine(args) -> int:
    if args.monomial is None:
        raise UsageError("eval intertwine needs --monomial")
    if args.method != "series" or args.x is not None:
        raise UsageError("eval intertwine takes --n, --kappa and --monomial only")
    try:
        p = parse_poly(args.monomial, args.n)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"cannot parse --monomial: {exc}")
    n = _resolve_n(args, None) if args.n is not None else max(p.nvars, 2)
    if p.nvars != n:
        p = parse_poly(args.monomial, n)
    if not args.kappa > 0:
        raise UsageError("intertwine needs kappa > 0")
    mixed = [e for e, _ in p.items() if sum(1 for a in e if a) > 1]
    if mixed:
        raise UsageError(f"--monomial term with exponents {mixed[0]} mixes variables; "
                         "only single-variable terms are supported")
    try:
        result = intertwine(p, args.kappa)
    except (ArithmeticError, ValueError) as exc:
        print(f"error: intertwine failed: {exc}", file=sys.stderr)
        return EXIT_EVAL
    exact = isinstance(args.kappa, Fraction) and p.is_exact
    record = {
        "kind": "intertwine",
        "n": n,
        "kappa": _kappa_text(args.kappa),
        "input": str(p),
        "result": str(result),
        "arithmetic": "exact" if exact else "float",
    }
    with _sink(args.output) as out:
        _write_records(out, args.format, [record], text=str(result))
    return EXIT_OK


def _write_records(out, fmt: str, records: list[dict], text: str | None = None) -> None:
    if fmt == "json":
        out.write(json.dumps(records[0] if len(records) == 1 else records) + "\n")
    elif fmt == "csv":
        fields = list(records[0])
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(fields)
        for rec in records:
            writer.writerow([_cell(rec[f]) for f in fields])
    else:
        out.write((text if text is not None else "") + "\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, list):
        return " ".join(repr(e) for e in v)
    return repr(v) if isinstance(v, float) else str(v)


def _table_points(args) -> tuple[int, list[list[float]]]:
    sources = [s for s in (args.x, args.diagonal, args.plane_grid, args.grid) if s]
    if len(sources) != 1:
        raise UsageError("give exactly one of --x, --diagonal, --plane-grid, --grid")
    if args.x:
        lengths = {len(p) for p in args.x}
        if len(lengths) != 1:
            raise UsageError("all --x points must have the same length")
        return _resolve_n(args, lengths.pop()), [list(p) for p in args.x]
    n = _resolve_n(args, None)
    if args.diagonal:
        return n, [[s] * n for s in args.diagonal]
    if args.plane_grid:
        axis = np.linspace(*args.plane_grid).tolist()
        pts = []
        for head in np.array(np.meshgrid(*[axis] * (n - 1), indexing="ij")).reshape(n - 1, -1).T:
            pts.append(list(head) + [-float(sum(head))])
        return n, pts
    axis = np.linspace(*args.grid).tolist()
    grid = np.array(np.meshgrid(*[axis] * n, indexing="ij")).reshape(n, -1).T
    return n, [list(map(float, row)) for row in grid]


def cmd_table(args) -> int:
    n, points = _table_points(args)
    if args.argument == "lambda" and args.kind != "bessel":
        raise UsageError("--argument applies to bessel only")
    queries = [_query(args, n, x) for x in points]
    rows = []
    for query in queries:
        try:
            ev = _evaluate(args, query)
        except (ArithmeticError, ValueError) as exc:
            print(f"error: {args.kind} evaluation failed at x={list(query.x)}: {exc}",
                  file=sys.stderr)
            return EXIT_EVAL
        row = {f"x{i + 1}": v for i, v in enumerate(query.x)}
        row.update(value=ev.value, err_bound=_err_column(ev), method=ev.method)
        rows.append(row)
    with _sink(args.output) as out:
        if args.format == "json":
            meta = {"kind": args.kind, "n": n, "kappa": _kappa_text(queries[0].kappa),
                    "ell": queries[0].ell, "arithmetic": "float", "rows": rows}
            out.write(json.dumps({k: v for k, v in meta.items() if v is not None}) + "\n")
        elif args.format == "csv":
            _write_records(out, "csv", rows)
        else:
            for row in rows:
                out.write(" ".join(_cell(v) for v in row.values()) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list:
        for ident, (desc, _) in sorted(IDENTITIES.items()):
            print(f"{ident:24s} {desc}")
        return EXIT_OK
    selection = None
    if args.only is not None:
        selection = [s.strip() for item in args.only for s in item.split(",") if s.strip()]
    if args.points < 1 or args.jobs < 1 or args.q < 1:
        raise UsageError("--points, --jobs and --q must be positive")
    config = replace(SuiteConfig(), seed=args.seed, points=args.points, q=args.q,
                     timing=not args.no_timing)
    try:
        reports = run_suite(selection, config, jobs=args.jobs)
    except UnknownIdentityError as exc:
        raise UsageError(f"unknown identity id: {exc.args[0]} (see verify --list)")
    with _sink(args.output) as out:
        write_jsonl(reports, out)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"FAIL {r.identity_id} {json.dumps(r.parameters)[:200]}", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL


def run(argv: list[str]) -> tuple[int, str, str]:
    """Run the CLI in-process and capture ``(exit_code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = main(argv)
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
