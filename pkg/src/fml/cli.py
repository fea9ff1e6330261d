"""Command-line entry point.

    fml dim <config>                                  similarity dimension
    fml generate <config> --depth n --svg out.svg     n-generation picture
    fml content <config> --cells cells.txt --rho r    exact content + cover
    fml choquet <config> --fn f.json --p p --rho r    p-integral against H
    fml maximal <config> --fn f.json [...]            Mf leaf table as CSV
    fml select <config> --cells cells.txt --rho r     greedy subfamily + margins
    fml verify <config> --suite ... --csv out.csv     inequality campaigns

Exit codes: 0 success, 1 a checked inequality failed, 2 usage/config error.
FML_THREADS caps the verification worker pool (default 1, serial).
"""

from __future__ import annotations

import argparse
import itertools
import sys

from . import __version__
from .choquet import CylinderFunction, mu_integral, p_choquet_integral
from .config import load_cells, load_cylinder_function, load_ifs
from .content import optimal_cover
from .errors import ConfigError, ResourceLimitError
from .harness import (
    SUITES,
    failed_records,
    run_suite,
    worst_ratio,
    write_records_csv,
)
from .ifs import cube_measure, disjointify, format_word, parse_word, warn_if_unseparated
from .maximal import ancestor_average_trace, indicator_maximal_closed_form, maximal_operator
from .selection import certify_selection, select_subfamily
from .svg import write_generation_svg

EXIT_OK = 0
EXIT_INEQUALITY_FAILED = 1
EXIT_USAGE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fml",
        description="Exact maximal-operator laboratory on self-similar fractal trees.",
    )
    parser.add_argument("--version", action="version", version=f"fml {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_dim = sub.add_parser("dim", help="print the similarity dimension of the IFS")
    p_dim.add_argument("config")

    p_gen = sub.add_parser("generate", help="emit the n-generation picture as SVG")
    p_gen.add_argument("config")
    p_gen.add_argument("--depth", type=int, default=3)
    p_gen.add_argument("--svg", required=True, help="output path")

    p_content = sub.add_parser("content", help="exact Hausdorff content of a cell union")
    p_content.add_argument("config")
    p_content.add_argument("--cells", required=True, help="file with one word per line")
    p_content.add_argument("--rho", type=float, required=True)

    p_choq = sub.add_parser("choquet", help="p-integral of a cylinder function against H")
    p_choq.add_argument("config")
    p_choq.add_argument("--fn", required=True, help="function spec JSON")
    p_choq.add_argument("--p", type=float, default=1.0)
    p_choq.add_argument("--rho", type=float, required=True)

    p_max = sub.add_parser("maximal", help="evaluate the maximal operator on a function")
    p_max.add_argument("config")
    p_max.add_argument("--fn", required=True, help="function spec JSON")
    p_max.add_argument(
        "--closed-form-word",
        help="also tabulate M of this cube's indicator from the ring closed form",
    )
    p_max.add_argument("--trace-leaf", help="print the ancestor-average trace of this leaf")

    p_sel = sub.add_parser("select", help="greedy packing subfamily of an antichain")
    p_sel.add_argument("config")
    p_sel.add_argument("--cells", required=True)
    p_sel.add_argument("--rho", type=float, required=True)
    p_sel.add_argument("--sigma", type=float, default=1.0)
    p_sel.add_argument("--order", choices=("input", "lex", "measure"), default="input")

    p_ver = sub.add_parser("verify", help="run randomized inequality campaigns")
    p_ver.add_argument("config")
    p_ver.add_argument("--suite", default="all", help=f"all or one of {', '.join(SUITES)}")
    p_ver.add_argument("--trials", type=int, default=100)
    p_ver.add_argument("--depth", type=int, default=6)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--rho", type=float, default=None, help="narrow the grid to one rho")
    p_ver.add_argument("--p", type=float, default=None, help="narrow the grid to one p")
    p_ver.add_argument("--csv", default=None, help="write the record ledger here")
    return parser


def _cmd_dim(args) -> int:
    ifs = load_ifs(args.config)
    print(f"{ifs.dimension!r}")
    return EXIT_OK


def _cmd_generate(args) -> int:
    ifs = load_ifs(args.config)
    if not ifs.has_geometry:
        raise ConfigError(f"{args.config}: rendering needs translations in the config")
    warn_if_unseparated(ifs)
    write_generation_svg(ifs, args.depth, args.svg)
    print(f"wrote {ifs.num_maps ** args.depth} shapes to {args.svg}")
    return EXIT_OK


def _cmd_content(args) -> int:
    ifs = load_ifs(args.config)
    cells = disjointify(load_cells(args.cells, ifs.num_maps), ifs.num_maps)
    value, cover = optimal_cover(ifs, cells, args.rho)
    print(f"content {value!r}")
    print("optimal cover: " + " ".join(format_word(w) for w in cover))
    return EXIT_OK


def _cmd_choquet(args) -> int:
    ifs = load_ifs(args.config)
    f = load_cylinder_function(args.fn, ifs.num_maps)
    value = p_choquet_integral(ifs, f, args.p, args.rho)
    print(f"p-choquet integral {value!r}")
    print(f"mu integral {mu_integral(ifs, f)!r}")
    return EXIT_OK


def _cmd_maximal(args) -> int:
    ifs = load_ifs(args.config)
    f = load_cylinder_function(args.fn, ifs.num_maps)
    mf = maximal_operator(ifs, f)
    closed = None
    if args.closed_form_word is not None:
        word = parse_word(args.closed_form_word)
        if len(word) > f.depth:
            raise ConfigError("--closed-form-word must not be deeper than the function")
        closed = indicator_maximal_closed_form(ifs, word, f.depth)
    header = "leaf,f,mf" + (",closed_form" if closed is not None else "")
    print(header)
    for leaf in itertools.product(range(ifs.num_maps), repeat=f.depth):
        row = [format_word(leaf), repr(f.value_at(leaf)), repr(mf.value_at(leaf))]
        if closed is not None:
            row.append(repr(closed.value_at(leaf)))
        print(",".join(row))
    if args.trace_leaf is not None:
        leaf = parse_word(args.trace_leaf)
        trace = ancestor_average_trace(ifs, f, leaf)
        for depth, avg in enumerate(trace.averages):
            print(f"# trace {format_word(leaf)} depth {depth}: {avg!r}")
    return EXIT_OK


def _cmd_select(args) -> int:
    ifs = load_ifs(args.config)
    words = load_cells(args.cells, ifs.num_maps)
    cells = disjointify(words, ifs.num_maps)
    if len(cells) != len(words):
        print("note: input was not an antichain; nested cubes were merged", file=sys.stderr)
    ordered = list(cells)
    if args.order == "lex":
        ordered.sort()
    elif args.order == "measure":
        ordered.sort(key=lambda w: (-cube_measure(ifs, w), w))
    result = select_subfamily(ifs, ordered, args.rho, args.sigma)
    depth = max((len(w) for w in ordered), default=0)
    ones = CylinderFunction.constant(1.0, depth, ifs.num_maps)
    cert = certify_selection(ifs, result, args.rho, ones)
    print("selected: " + " ".join(format_word(w) for w in result.selected))
    print(f"packing exact: {cert.packing_exact}, min margin {cert.packing_margin!r}")
    print(
        f"covering: {cert.covering_lhs!r} <= {cert.covering_constant!r} * mass"
        f" = {cert.covering_rhs!r} (margin {cert.covering_margin!r})"
    )
    print(
        f"integral split (f = 1): {cert.integral_lhs!r} <= {cert.integral_constant!r}"
        f" * union integral = {cert.integral_rhs!r} (margin {cert.integral_margin!r})"
    )
    if not cert.packing_exact or cert.covering_margin < 0 or cert.integral_margin < 0:
        return EXIT_INEQUALITY_FAILED
    return EXIT_OK


def _cmd_verify(args) -> int:
    ifs = load_ifs(args.config)
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    for s in suites:
        if s not in SUITES:
            raise ConfigError(f"unknown suite {s!r}; choose 'all' or one of {SUITES}")
    records = []
    for s in suites:
        records += run_suite(
            ifs, s, trials=args.trials, depth=args.depth, seed=args.seed, rho=args.rho, p=args.p
        )
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            write_records_csv(records, fh)
    failures = failed_records(records)
    asserted = [r for r in records if r.asserted]
    print(
        f"{len(records)} records ({len(asserted)} asserted), "
        f"{len(failures)} failures, worst ratio {worst_ratio(asserted)!r}"
    )
    for r in failures[:10]:
        print(
            f"FAIL {r.theorem_id} seed={r.seed} lhs={r.lhs!r} rhs={r.rhs!r} margin={r.margin!r}"
        )
    return EXIT_INEQUALITY_FAILED if failures else EXIT_OK


_COMMANDS = {
    "dim": _cmd_dim,
    "generate": _cmd_generate,
    "content": _cmd_content,
    "choquet": _cmd_choquet,
    "maximal": _cmd_maximal,
    "select": _cmd_select,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ResourceLimitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
