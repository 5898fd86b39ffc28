"""Command-line entry point.

Exit codes: 0 success, 1 invalid config or inadmissible step, 2 numerical
failure, 3 a verification row did not match its expected status.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import constants as K
from .errors import AdmissibilityError, ConditioningError, ConfigError, GeometryError
from .harness import load_config, run_config
from .report import format_value, render_reports, render_rows
from .suites import SUITES, verify_lemma_suite

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_MISMATCH = 0, 1, 2, 3

COMPARE_COLUMNS = (
    "n", "beta", "b0", "log10_c2", "log10_a2", "c3", "a3",
    "log10_a2_over_c2", "c3_over_a3", "improved", "assumption",
)


def _cmd_constants(args) -> int:
    tc = K.theorem_constants(args.n, args.beta, args.b0)
    data = tc.as_dict()
    if args.json:
        print(json.dumps({k: (format_value(v) if isinstance(v, float) and not math.isfinite(v) else v)
                          for k, v in data.items()}, indent=2))
    else:
        for key, value in data.items():
            print(f"{key:>24} {format_value(value)}")
    return EXIT_OK


def _cmd_bound(args) -> int:
    tc = K.theorem_constants(args.n, args.beta, args.b0)
    value = K.bound_value(tc, args.delta, args.norm)
    print(format_value(value))
    return EXIT_OK


def _cmd_compare(args) -> int:
    rows = [K.compare_bounds(n, args.beta, args.b0).as_row() for n in range(1, args.n_max + 1)]
    text = render_rows(rows, COMPARE_COLUMNS, "csv")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    rows = verify_lemma_suite(args.suite)
    for r in rows:
        print(f"{r.status:<16} {r.suite:<10} {r.check:<22} {r.params:<28} "
              f"lhs={r.lhs:.17g} rhs={r.rhs:.17g}")
    bad = sum(not r.matches for r in rows)
    print(f"{len(rows)} checks, {bad} mismatched")
    return EXIT_MISMATCH if bad else EXIT_OK


def _cmd_experiment(args) -> int:
    cfg = load_config(args.config)
    if args.allow_inadmissible:
        cfg.allow_inadmissible = True
    fmt = args.format or cfg.format
    reports = run_config(cfg)
    text = render_reports(reports, fmt)
    out = args.out or cfg.out
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if any(r.status == "failed-solve" for r in reports):
        return EXIT_NUMERIC
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gaussbound", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("constants", help="print the improved bound's constants")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--beta", type=float, required=True)
    c.add_argument("--b0", type=float, required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=_cmd_constants)

    b = sub.add_parser("bound", help="evaluate the improved bound")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--beta", type=float, required=True)
    b.add_argument("--b0", type=float, required=True)
    b.add_argument("--delta", type=float, required=True)
    b.add_argument("--norm", type=float, default=1.0)
    b.set_defaults(func=_cmd_bound)

    m = sub.add_parser("compare", help="improved vs classical constants for n = 1..n-max")
    m.add_argument("--n-max", type=int, required=True)
    m.add_argument("--beta", type=float, required=True)
    m.add_argument("--b0", type=float, required=True)
    m.add_argument("--out")
    m.set_defaults(func=_cmd_compare)

    v = sub.add_parser("verify", help="run lemma verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.set_defaults(func=_cmd_verify)

    e = sub.add_parser("experiment", help="run an interpolation experiment from a JSON config")
    e.add_argument("--config", required=True)
    e.add_argument("--out")
    e.add_argument("--format", choices=("csv", "json"))
    e.add_argument("--allow-inadmissible", action="store_true")
    e.set_defaults(func=_cmd_experiment)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, AdmissibilityError, GeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConditioningError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
