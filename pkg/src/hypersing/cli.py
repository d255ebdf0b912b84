"""Command-line front end: analyze, table, smooth-check, oracle-verify.

Exit codes: 0 success, 1 criterion failure, 2 domain error, 3 input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from .groebner import ComputationTooLarge, Guard
from .local import AnalysisError
from .oracles import BUILTIN_CORPUS, load_corpus, run_oracle_suite
from .polynomial import PolynomialSyntaxError
from .report import (
    TABLE_COLUMNS,
    analyze_exponents,
    analyze_text,
    dumps,
    example_2_10_exponents,
    expand_template,
    fermat_exponents,
    parse_range,
    render_text,
    report_document,
    table_row,
    write_csv,
)
from .smoothing import (
    FIRST_ORDER_SMOOTHABLE,
    SMOOTHABLE,
    ConfigurationError,
    MatrixShapeMismatch,
    UnclassifiedPoint,
    check_configuration,
    load_configuration,
    verdict_document,
)

EXIT_OK = 0
EXIT_CRITERION = 1
EXIT_DOMAIN = 2
EXIT_INPUT = 3

FAMILIES = ("fermat_cone", "brieskorn", "example_2_10")

logger = logging.getLogger("hypersing")


class InputError(Exception):
    pass


def _guard(args) -> Guard:
    return Guard(max_basis=args.guard_basis, max_degree=args.guard_degree)


def _read_poly(args) -> str:
    if args.poly is not None and args.file is not None:
        raise InputError("give either --poly or --file, not both")
    if args.poly is not None:
        return args.poly
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                return fh.read().strip()
        except OSError as exc:
            raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    raise InputError("no polynomial given (use --poly or --file)")


def cmd_analyze(args, out) -> int:
    text = _read_poly(args)
    variables = [v.strip() for v in args.vars.split(",")] if args.vars else None
    report = analyze_text(text, variables, _guard(args))
    doc = report_document(report, text)
    if args.format == "json":
        out.write(dumps(doc))
    elif args.format == "text":
        out.write(render_text(doc))
    else:
        row = table_row("input", [], report)
        row.pop("exponents")
        row["family"] = doc["input"]["canonical"]
        cols = ["poly"] + [c for c in TABLE_COLUMNS if c not in ("family", "exponents")]
        row = {"poly": row.pop("family"), **row}
        out.write(write_csv([row], cols))
    return EXIT_OK


def family_members(args) -> list[tuple[str, list[int]]]:
    if args.family == "fermat_cone":
        ns = parse_range(args.n or "3..6")
        ds = parse_range(args.d or "2..6")
        return [(f"fermat_cone n={n} d={d}", fermat_exponents(n, d)) for n in ns for d in ds]
    if args.family == "example_2_10":
        return [(f"example_2_10 k={k}", example_2_10_exponents(k)) for k in parse_range(args.k or "2..4")]
    if not args.exponents:
        raise InputError("brieskorn needs --exponents, e.g. '2,2,2,2n' together with --n 1..5")
    if "n" in args.exponents:
        return [
            (f"brieskorn n={v}", expand_template(args.exponents, v)) for v in parse_range(args.n or "1..5")
        ]
    return [("brieskorn", expand_template(args.exponents, 0))]


def cmd_table(args, out) -> int:
    try:
        members = family_members(args)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    guard = _guard(args)
    rows = []
    for label, exps in members:
        if any(b < 2 for b in exps):
            raise InputError(f"{label}: exponents {exps} must all be >= 2")
        logger.info("analyzing %s", label)
        rows.append(table_row(label, exps, analyze_exponents(exps, guard)))
    if args.format == "csv":
        out.write(write_csv(rows))
    elif args.format == "json":
        out.write(dumps({"schema_version": "1", "family": args.family, "rows": rows}))
    else:
        cols = ("family", "mu", "alpha_tilde", "classification", "dim_K", "dim_Kprime", "link_invariant")
        widths = [max(len(c), *(len(r[c]) for r in rows)) for c in cols]
        out.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(r[c].ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
    return EXIT_OK


def cmd_smooth_check(args, out) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.config}: {exc.strerror}") from None
    config = load_configuration(raw, _guard(args))
    verdict = check_configuration(config)
    doc = verdict_document(config, verdict)
    if args.format == "text":
        line = verdict.decision + (f": {verdict.reason}" if verdict.reason else "")
        out.write(line + "\n")
        if doc["witness"] is not None:
            out.write(f"witness: {', '.join(doc['witness']) or '(none needed)'}\n")
        out.write(f"citations: {', '.join(doc['citations']) or '-'}\n")
        out.write(f"assertions: {', '.join(doc['assertions']) or '-'}\n")
    else:
        out.write(dumps(doc))
    if verdict.decision in (SMOOTHABLE, FIRST_ORDER_SMOOTHABLE):
        return EXIT_OK
    return EXIT_CRITERION


def cmd_oracle_verify(args, out) -> int:
    corpus = BUILTIN_CORPUS
    if args.corpus:
        try:
            corpus = load_corpus(args.corpus)
        except (OSError, ValueError) as exc:
            raise InputError(f"cannot load corpus: {exc}") from None

    def emit(res):
        out.write(res.line() + "\n")
        out.flush()

    results = run_oracle_suite(
        corpus, seed=args.seed, bound=args.bound, trials=args.trials, guard=_guard(args), emit=emit
    )
    failed = [r.name for r in results if not r.ok]
    out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    if failed:
        print(f"oracle mismatch: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CRITERION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default=None)
    common.add_argument("--guard-degree", type=int, default=200, help="largest degree/truncation explored")
    common.add_argument("--guard-basis", type=int, default=50000, help="largest Groebner basis allowed")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="hypersing", description="Local invariants and smoothability checks for hypersurface singularities."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="analyze one germ at the origin")
    p.add_argument("--poly", help="polynomial text, e.g. 'x^2+y^2+z^2+w^2'")
    p.add_argument("--file", help="read the polynomial from a file")
    p.add_argument("--vars", help="comma-separated variable order (default: order of appearance)")
    p.set_defaults(func=cmd_analyze, default_format="json")

    p = sub.add_parser("table", parents=[common], help="tabulate a built-in family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", help="range such as 3..6 (fermat_cone, brieskorn template parameter)")
    p.add_argument("--d", help="degree range (fermat_cone)")
    p.add_argument("--k", help="k range (example_2_10)")
    p.add_argument("--exponents", help="exponent template for brieskorn, e.g. '2,2,2,2n'")
    p.set_defaults(func=cmd_table, default_format="csv")

    p = sub.add_parser("smooth-check", parents=[common], help="apply the smoothability criteria to a configuration")
    p.add_argument("config", help="configuration JSON file")
    p.set_defaults(func=cmd_smooth_check, default_format="json")

    p = sub.add_parser("oracle-verify", parents=[common], help="run the independent oracle cross-checks")
    p.add_argument("--bound", type=int, default=3, help="box bound for the exhaustive kernel search")
    p.add_argument("--trials", type=int, default=100, help="random matrices in the kernel sweep")
    p.add_argument("--corpus", help="JSON list of {name, poly, mu} replacing the built-in corpus")
    p.set_defaults(func=cmd_oracle_verify, default_format="text")
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse reports usage errors with status 2; our contract says 3
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.format is None:
        args.format = args.default_format
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args, out)
    except PolynomialSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MatrixShapeMismatch as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AnalysisError, UnclassifiedPoint, ComputationTooLarge) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
