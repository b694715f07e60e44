"""Command-line interface: coefficients, variations, bounds and figure data as CSV.

Every command writes CSV (comma separated, header row, numbers with 17
significant digits) to stdout or ``--output``.  Exit status is 0 on
success, 2 on invalid input and 1 when a computation fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path
from typing import Sequence

from .approximation import comparison_table
from .bounds import (
    BoundParams,
    decay_bound_bv,
    decay_bound_smooth,
    error_bound_majidian,
    error_bound_xiang,
)
from .coefficients import (
    DEFAULT_TOL,
    derivative_coefficients,
    quadrature_coefficients,
    reference_coefficients,
)
from .errors import (
    ChebDecayError,
    DomainError,
    FunctionSpecError,
    PreconditionError,
    UnsupportedOrderError,
)
from .funcspec import FunctionSpec, parse
from .variation import cheb_weighted_variation, total_variation

EXAMPLES = {
    "example51": "on [-1,1]: piece [-1,0): -t/(t+2); piece [0,1]: t/(t+2); k=1",
}

GRAMMAR_HELP = """\
function grammar:
  on [a,b]: piece [a,x1): <expr>; piece [x1,b]: <expr>; k=<int>
  on [a,b]: <expr>; k=<int>
  <expr> uses t, numbers, pi, e, + - * /, integer powers (^ or **),
  sin cos exp log sqrt abs.  k declares f, ..., f^(k-1) absolutely continuous.
"""

DEFAULT_N = 200
DEFAULT_L = (2, 4, 8, 16, 32, 64, 128)

_VALIDATION_ERRORS = (FunctionSpecError, PreconditionError, DomainError, UnsupportedOrderError)


class UsageError(ChebDecayError, ValueError):
    """Invalid combination of command-line options."""


def builtin_example(name: str) -> FunctionSpec:
    """Return a named built-in function (``example51``: ``|t| / (t + 2)`` on ``[-1, 1]``, ``k = 1``)."""
    try:
        return parse(EXAMPLES[name])
    except KeyError:
        raise FunctionSpecError(f"unknown example {name!r}; available: {', '.join(sorted(EXAMPLES))}") from None


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool) or isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return "nan" if math.isnan(v) else format(v, ".17g")
    return str(v)


def write_csv(header: Sequence[str], rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pair_list(text: str) -> list[tuple[int, int]]:
    pairs = []
    for item in text.split(","):
        try:
            d, n = item.split(":")
            pairs.append((int(d), int(n)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected d:n pairs such as 198:200,30:50, got {item!r}") from None
    return pairs


def load_function(args) -> FunctionSpec:
    given = [x for x in (args.function, args.function_file) if x is not None]
    if len(given) > 1:
        raise UsageError("give at most one of --function and --function-file")
    if args.function is not None:
        return parse(args.function)
    if args.function_file is not None:
        return parse(Path(args.function_file).read_text(encoding="utf-8"))
    return builtin_example(args.example)


def _params(spec: FunctionSpec, k: int, tol: float) -> tuple[BoundParams, BoundParams]:
    weighted = cheb_weighted_variation(spec, k, tol)
    bv = total_variation(spec, k, tol)
    return BoundParams.from_report(spec.interval, weighted), BoundParams.from_report(spec.interval, bv)


def _wants(theorem: str) -> tuple[bool, bool]:
    return theorem in ("majidian", "both"), theorem in ("xiang", "both")


# ---------------------------------------------------------------------------
# commands


def cmd_coeffs(args, spec, out):
    if args.derivative:
        table = derivative_coefficients(spec, args.derivative, args.j_max, args.tol)
    elif args.n == 0:
        table = reference_coefficients(spec, args.j_max, args.tol)
    else:
        table = quadrature_coefficients(spec, args.n, args.j_max)
    write_csv(["j", "coefficient"], ((j, float(c)) for j, c in enumerate(table.values)), out)


def cmd_variation(args, spec, out):
    k = spec.k if args.k is None else args.k
    reports = []
    if args.kind in ("cheb_weighted", "both"):
        reports.append(cheb_weighted_variation(spec, k, args.tol))
    if args.kind in ("total_variation", "both"):
        reports.append(total_variation(spec, k, args.tol))
    rows = ((r.kind, r.k, r.smooth_part, r.jump_total, r.total) for r in reports)
    write_csv(["kind", "k", "smooth_part", "jump_part", "total"], rows, out)


def _decay_rows(spec, k, js, theorem, tol, with_reference):
    smooth, bv = _wants(theorem)
    weighted_p, bv_p = _params(spec, k, tol)
    ref = reference_coefficients(spec, max(js), tol) if with_reference else None
    header = ["j"]
    if with_reference:
        header.append("abs_cj_reference")
    if smooth:
        header.append("bound_thm31")
    if bv:
        header.append("bound_thm34")
    rows = []
    for j in js:
        row = [j]
        if with_reference:
            row.append(abs(float(ref[j])))
        if smooth:
            row.append(decay_bound_smooth(weighted_p, j).value)
        if bv:
            row.append(decay_bound_bv(bv_p, j).value)
        rows.append(row)
    return header, rows


def cmd_decay(args, spec, out):
    k = spec.k if args.k is None else args.k
    js = range(args.j_min, args.j_max + 1)
    if not js:
        raise UsageError("--j-min must not exceed --j-max")
    header, rows = _decay_rows(spec, k, js, args.theorem, args.tol, args.reference)
    write_csv(header, rows, out)


def _error_rows(spec, k, n, ds, theorem, tol):
    majidian, xiang = _wants(theorem)
    weighted_p, bv_p = _params(spec, k, tol)
    header = ["d", "n", "l", "case"]
    if majidian:
        header.append("bound_thm41")
    if xiang:
        header.append("bound_thm43")
    rows = []
    for d in ds:
        row = [d, n, abs(n - d), "n-l" if d < n else "n+l"]
        if majidian:
            row.append(error_bound_majidian(weighted_p, d, n).value)
        if xiang:
            row.append(error_bound_xiang(bv_p, d, n).value)
        rows.append(row)
    return header, rows


def cmd_errbound(args, spec, out):
    k = spec.k if args.k is None else args.k
    if args.d is not None and args.l is not None:
        raise UsageError("give either --d or --l, not both")
    ds = args.d if args.d is not None else [args.n - l for l in (args.l or DEFAULT_L)]
    header, rows = _error_rows(spec, k, args.n, ds, args.theorem, args.tol)
    write_csv(header, rows, out)


def cmd_approx(args, spec, out):
    k = spec.k if args.k is None else args.k
    majidian, xiang = _wants(args.theorem)
    weighted_p, bv_p = _params(spec, k, args.tol)
    pairs = args.pairs or [(args.n - l, args.n) for l in DEFAULT_L]
    table = comparison_table(spec, weighted_p if majidian else None, bv_p if xiang else None, pairs, tol=args.tol)
    rows = ((r.d, r.n, r.measured_l1, r.bound_weighted, r.bound_bv, r.error) for r in table)
    write_csv(["d", "n", "measured_l1", "bound_thm41", "bound_thm43", "error"], rows, out)
    if any(not r.ok for r in table):
        return 1
    return 0


def cmd_figure1(args, spec, out):
    k = spec.k
    if args.panel == "a":
        header, rows = _decay_rows(spec, k, range(args.j_min, args.j_max + 1), "both", args.tol, True)
        write_csv(header, rows, out)
        return
    ls = args.l or list(DEFAULT_L)
    weighted_p, bv_p = _params(spec, k, args.tol)
    rows = []
    for l in ls:
        d = args.n - l
        rows.append((l, d, error_bound_majidian(weighted_p, d, args.n).value, error_bound_xiang(bv_p, d, args.n).value))
    write_csv(["l", "d", "bound_thm41", "bound_thm43"], rows, out)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chebdecay",
        description="Chebyshev coefficient decay and truncation-error bounds for piecewise-smooth functions.",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("function source (default: --example example51)")
    src.add_argument("--function", help="function description text")
    src.add_argument("--function-file", help="file holding a function description (UTF-8)")
    src.add_argument("--example", default="example51", help=f"built-in function: {', '.join(EXAMPLES)}")
    common.add_argument("--output", "-o", help="write CSV here instead of stdout")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="absolute tolerance (default 1e-10)")

    def add(name, help_, schema):
        return sub.add_parser(
            name,
            parents=[common],
            help=help_,
            description=f"{help_}\n\nCSV columns: {schema}\n\n{GRAMMAR_HELP}",
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )

    p = add("coeffs", "Chebyshev coefficients by quadrature or reference refinement", "j, coefficient")
    p.add_argument("--n", type=int, default=DEFAULT_N, help="quadrature points; 0 selects reference coefficients")
    p.add_argument("--j-max", type=int, default=30, help="largest index (default 30)")
    p.add_argument("--derivative", type=int, default=0, help="reference coefficients of the r-th derivative")
    p.set_defaults(handler=cmd_coeffs)

    p = add("variation", "variation functionals of f^(k)", "kind, k, smooth_part, jump_part, total")
    p.add_argument("--k", type=int, help="order (default: the declared k)")
    p.add_argument("--kind", choices=("cheb_weighted", "total_variation", "both"), default="both")
    p.set_defaults(handler=cmd_variation)

    p = add("decay", "coefficient decay bounds", "j, [abs_cj_reference], [bound_thm31], [bound_thm34]")
    p.add_argument("--k", type=int, help="regularity order (default: the declared k)")
    p.add_argument("--j-min", type=int, default=2)
    p.add_argument("--j-max", type=int, default=30)
    p.add_argument("--theorem", choices=("majidian", "xiang", "both"), default="both")
    p.add_argument("--reference", action="store_true", help="add reference |c_j| for comparison")
    p.set_defaults(handler=cmd_decay)

    p = add("errbound", "L1 truncation-error bounds", "d, n, l, case, [bound_thm41], [bound_thm43]")
    p.add_argument("--k", type=int, help="regularity order (default: the declared k)")
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--d", type=_int_list, help="comma-separated degrees")
    p.add_argument("--l", type=_int_list, help="comma-separated offsets, d = n - l (default 2,4,...,128)")
    p.add_argument("--theorem", choices=("majidian", "xiang", "both"), default="both")
    p.set_defaults(handler=cmd_errbound)

    p = add(
        "approx",
        "measured L1 error of C_{d,n}[f] against both bounds",
        "d, n, measured_l1, bound_thm41, bound_thm43, error",
    )
    p.add_argument("--k", type=int, help="regularity order (default: the declared k)")
    p.add_argument("--n", type=int, default=DEFAULT_N, help="n for the default pairs d = n - 2^j")
    p.add_argument("--pairs", type=_pair_list, help="comma-separated d:n pairs, e.g. 198:200,30:50")
    p.add_argument("--theorem", choices=("majidian", "xiang", "both"), default="both")
    p.set_defaults(handler=cmd_approx)

    p = add(
        "figure1",
        "data for the decay (panel a) and error-bound (panel b) comparison plots",
        "panel a: j, abs_cj_reference, bound_thm31, bound_thm34; panel b: l, d, bound_thm41, bound_thm43",
    )
    p.add_argument("--panel", choices=("a", "b"), required=True)
    p.add_argument("--j-min", type=int, default=2)
    p.add_argument("--j-max", type=int, default=30)
    p.add_argument("--n", type=int, default=DEFAULT_N)
    p.add_argument("--l", type=_int_list, help="offsets for panel b (default 2,4,...,128)")
    p.set_defaults(handler=cmd_figure1)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help (0) or an argparse usage error (2)
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        spec = load_function(args)
        status = args.handler(args, spec, buf) or 0
    except _VALIDATION_ERRORS + (UsageError, OSError) as exc:
        print(f"chebdecay {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ChebDecayError, ArithmeticError) as exc:
        print(f"chebdecay {args.command}: computation failed: {exc}", file=sys.stderr)
        return 1
    text = buf.getvalue()
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"chebdecay {args.command}: error: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
