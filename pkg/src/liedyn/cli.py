"""Command-line driver.

Commands:

    liedyn bracket --space S --presentation P "exprA" "exprB"
    liedyn eval    --space S "expr"
    liedyn verify  [SUITE] --space S [--samples K] [--seed R] [--window W]
    liedyn cartan  --space S [--format text|json]
    liedyn export  --space S --grade-bound B [--char-bound C] --out PATH
    liedyn limit   --p P --levels L [--samples K] [--seed R]

Exit codes: 0 success / all suites pass, 1 a suite found a counterexample,
2 usage or expression parse error, 3 domain error (wrong backend, value
outside an operator's domain, I/O failure).

Output is byte-deterministic for fixed arguments; ANSI color is added only
when the environment variable LIEDYN_COLOR is set to 1.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import product

from .errors import LiedynError, ParseError
from .funcspace import Space
from .grammar import Expr, element_record, evaluate, parse, render_element, render_scalar
from .kacmoody import cartan_matrix, is_affine_cycle_type, node_count_label, standard_label
from .spectrum import CharBasisElem, bracket_y
from .suites import SUITE_NAMES, render_report, run_all, run_suite


def _space_arg(text: str) -> Space:
    try:
        return Space.parse(text)
    except LiedynError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liedyn",
        description="Exact graded Lie algebras from measure-preserving shifts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="bracket two elements")
    p.add_argument("--space", type=_space_arg, required=True)
    p.add_argument(
        "--presentation", choices=("crossed", "root", "char"), required=True
    )
    p.add_argument("expr_a")
    p.add_argument("expr_b")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("eval", help="evaluate one expression")
    p.add_argument("--space", type=_space_arg, required=True)
    p.add_argument("expr")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("suite", nargs="?", default="all", choices=SUITE_NAMES + ("all",))
    p.add_argument("--space", type=_space_arg, required=True)
    p.add_argument("--samples", type=_positive_int, default=200)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    p.add_argument("--window", type=_positive_int, default=2)

    p = sub.add_parser("cartan", help="Cartan matrix and affine-type verdict")
    p.add_argument("--space", type=_space_arg, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("export", help="structure constants in the symbol basis")
    p.add_argument("--space", type=_space_arg, required=True)
    p.add_argument("--grade-bound", type=_nonneg_int, required=True)
    p.add_argument("--char-bound", type=_nonneg_int, default=None)
    p.add_argument("--out", required=True, help="output path, or - for stdout")

    p = sub.add_parser("limit", help="level-inclusion compatibility reports")
    p.add_argument("--p", type=_positive_int, required=True)
    p.add_argument("--levels", type=_positive_int, required=True)
    p.add_argument("--samples", type=_positive_int, default=200)
    p.add_argument("--seed", type=_nonneg_int, default=0)
    return parser


def _color_enabled() -> bool:
    return os.environ.get("LIEDYN_COLOR") == "1"


def _emit_element(kind, value, fmt):
    if fmt == "json":
        print(json.dumps(element_record(kind, value), sort_keys=True))
    else:
        print(render_element(kind, value))


def _cmd_bracket(args) -> int:
    a = parse(args.expr_a, args.space, args.presentation)
    b = parse(args.expr_b, args.space, args.presentation)
    kind = "central" if a.kind == b.kind == "central" else args.presentation
    result_kind, value = evaluate(Expr(("bracket", a.tree, b.tree), kind, args.space))
    _emit_element(result_kind, value, args.format)
    return 0


def _cmd_eval(args) -> int:
    kind, value = evaluate(parse(args.expr, args.space))
    _emit_element(kind, value, args.format)
    return 0


def _cmd_verify(args) -> int:
    if args.suite == "all":
        reports = run_all(args.space, args.samples, args.seed, args.window)
    else:
        reports = [run_suite(args.suite, args.space, args.samples, args.seed, args.window)]
    color = _color_enabled()
    for report in reports:
        print(render_report(report, color))
    return 0 if all(r.passed for r in reports) else 1


def _cmd_cartan(args) -> int:
    matrix = cartan_matrix(args.space)
    affine = is_affine_cycle_type(matrix)
    corank = matrix.corank()
    n = matrix.size
    if args.format == "json":
        record = {
            "affine_cycle": affine,
            "corank": corank,
            "label": standard_label(n),
            "matrix": [list(matrix.row(i)) for i in range(n)],
            "node_count_alias": node_count_label(n),
            "space": args.space.render(),
        }
        print(json.dumps(record, sort_keys=True))
        return 0
    width = max(
        len(str(matrix.row(i)[j])) for i in range(n) for j in range(n)
    )
    print(f"space: {args.space.render()}")
    print("matrix:")
    for i in range(n):
        print("  " + " ".join(str(v).rjust(width) for v in matrix.row(i)))
    print(f"affine-cycle: {'yes' if affine else 'no'}")
    print(f"corank: {corank}")
    print(f"label: {standard_label(n)}")
    print(f"node-count alias: {node_count_label(n)} (nonstandard numbering)")
    return 0


def _symbol_indices(space: Space, char_bound):
    if space.is_finite:
        return list(range(space.size))
    if char_bound is None:
        raise LiedynError("export on the torus needs --char-bound")
    span = range(-char_bound, char_bound + 1)
    return [freq for freq in product(span, repeat=space.dim)]


def _y_name(index, n) -> str:
    if isinstance(index, tuple):
        return "Y[(" + ",".join(str(x) for x in index) + f"),{n}]"
    return f"Y[{index},{n}]"


def _export_records(space: Space, grade_bound: int, char_bound):
    indices = _symbol_indices(space, char_bound)
    basis = [
        (index, n)
        for n in range(-grade_bound, grade_bound + 1)
        for index in indices
    ]
    for index1, n1 in basis:
        y1 = CharBasisElem.symbol(space, index1, n1)
        for index2, n2 in basis:
            y2 = CharBasisElem.symbol(space, index2, n2)
            out = bracket_y(y1, y2)
            if out.is_zero():
                continue
            def key(item):
                index, n = item
                return (n, index if isinstance(index, tuple) else (index,))
            terms = [
                {
                    "grade": n,
                    "char_or_fn": list(index) if isinstance(index, tuple) else index,
                    "coeff": render_scalar(out.terms[(index, n)]),
                }
                for index, n in sorted(out.terms, key=key)
            ]
            yield {
                "lhs": _y_name(index1, n1),
                "rhs": _y_name(index2, n2),
                "result_terms": terms,
                "central": render_scalar(out.central),
            }


def _cmd_export(args) -> int:
    lines = [
        json.dumps(record, sort_keys=True)
        for record in _export_records(args.space, args.grade_bound, args.char_bound)
    ]
    body = "".join(line + "\n" for line in lines)
    if args.out == "-":
        sys.stdout.write(body)
        return 0
    try:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(body)
    except OSError as exc:
        raise LiedynError(f"cannot write {args.out}: {exc}") from None
    return 0


def _cmd_limit(args) -> int:
    if args.levels < 2:
        print("error: --levels must be >= 2", file=sys.stderr)
        return 2
    color = _color_enabled()
    failed = False
    for level in range(1, args.levels):
        space = Space.padic(args.p, level)
        report = run_suite("limit-hom", space, args.samples, args.seed)
        status = "ok" if report.passed else "FAIL"
        if color:
            code = "32" if report.passed else "31"
            status = f"\x1b[{code}m{status}\x1b[0m"
        counts = (
            f"({report.checked} checks)"
            if report.passed
            else f"({report.failures} of {report.checked} checks)"
        )
        print(
            f"inclusion level {level} -> {level + 1} "
            f"[samples={report.samples} seed={report.seed}]: {status} {counts}"
        )
        for line in report.details:
            print(f"  {line}")
        failed = failed or not report.passed
    return 1 if failed else 0


_COMMANDS = {
    "bracket": _cmd_bracket,
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "cartan": _cmd_cartan,
    "export": _cmd_export,
    "limit": _cmd_limit,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(exc.diagnostic(), file=sys.stderr)
        return 2
    except LiedynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
