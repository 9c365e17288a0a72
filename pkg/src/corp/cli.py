"""Command-line interface.

Exit status: 0 on success, 1 for invalid input or usage, 2 for I/O errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import fileio
from .bands import BandSpec
from .diagram import build_diagram
from .exceptions import ValidationError
from .scoring import corp_decomposition, get_rule, murphy_diagram
from .simulation import ScenarioSpec, coverage_study, mse_study
from .svg import render_svg

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2

RULES = ("brier", "log", "misclass")
METHODS = ("auto", "resampling", "asym-discrete", "asym-continuous")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _band_flags(p, band_default=None):
    p.add_argument("--band", choices=("consistency", "confidence"), default=band_default)
    p.add_argument("--level", type=float, default=0.9)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--replicates", type=int, default=1000, help="resampling replicates per band")
    p.add_argument("--seed", type=int, default=None, help="defaults to $CORP_SEED, else 0")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="corp", description="CORP reliability diagrams and score decompositions")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("diagram", help="reliability diagram report (JSON) and SVG")
    p.add_argument("csv")
    p.add_argument("--rule", choices=RULES, default="brier")
    _band_flags(p)
    p.add_argument("--mode", choices=("auto", "discrete", "continuous"), default="auto")
    p.add_argument("--out-json")
    p.add_argument("--out-svg")

    p = sub.add_parser("decompose", help="CORP score decomposition as JSON")
    p.add_argument("csv")
    p.add_argument("--rule", choices=RULES, default="brier")
    p.add_argument("--out-json")

    p = sub.add_parser("murphy", help="decomposition under elementary scores (CSV)")
    p.add_argument("csv")
    p.add_argument("--thresholds", type=int, default=99, help="number of equispaced thresholds in (0, 1)")
    p.add_argument("--out-csv")

    p = sub.add_parser("simulate", help="Monte-Carlo studies")
    studies = p.add_subparsers(dest="study", required=True, parser_class=_Parser)
    for name in ("mse", "coverage"):
        s = studies.add_parser(name)
        s.add_argument("--scenario", action="append", required=True,
                       help="e.g. uniform-continuous, linear-discrete10, betamix-discrete50")
        s.add_argument("--n", type=int, action="append", required=True)
        s.add_argument("--replicates", type=int, default=100, help="simulation replicates")
        s.add_argument("--seed", type=int, default=None)
        s.add_argument("--out-csv")
        if name == "coverage":
            s.add_argument("--band", choices=("consistency", "confidence"), default="consistency")
            s.add_argument("--level", type=float, action="append")
            s.add_argument("--method", choices=METHODS, default="auto")
            s.add_argument("--band-replicates", type=int, default=1000)
    return parser


def _seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("CORP_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ValidationError(f"CORP_SEED must be an integer, got {env!r}") from None


def _write(text: str, path) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _diagram(args) -> None:
    data = fileio.ingest_csv(args.csv)
    spec = None
    if args.band:
        spec = BandSpec(args.band, args.level, args.method, args.replicates, _seed(args.seed))
    dia = build_diagram(data, args.rule, spec, args.mode)
    report = fileio.emit_report(dia)
    if args.out_json or not args.out_svg:
        _write(report, args.out_json)
    if args.out_svg:
        _write(render_svg(dia), args.out_svg)


def _decompose(args) -> None:
    data = fileio.ingest_csv(args.csv)
    d = corp_decomposition(get_rule(args.rule), data)
    doc = {"schema": fileio.SCHEMA, "n": data.n}
    doc.update(fileio.decomposition_block(d))
    _write(fileio.dumps(doc) + "\n", args.out_json)


def _murphy(args) -> None:
    if args.thresholds < 1:
        raise ValidationError("--thresholds must be positive")
    data = fileio.ingest_csv(args.csv)
    theta = np.arange(1, args.thresholds + 1) / (args.thresholds + 1)
    c = murphy_diagram(data, theta)
    rows = ["threshold,mean_score,mcb,dsc,unc"]
    rows += [
        ",".join(format(float(v), ".17g") for v in r)
        for r in zip(c.thresholds, c.mean_score, c.mcb, c.dsc, c.unc)
    ]
    _write("\n".join(rows) + "\n", args.out_csv)


def _simulate(args) -> None:
    scenarios = [ScenarioSpec.parse(s) for s in args.scenario]
    seed = _seed(args.seed)
    if args.study == "mse":
        result = mse_study(scenarios, args.n, args.replicates, seed)
    else:
        levels = args.level or [0.9]
        specs = [BandSpec(args.band, lv, args.method, args.band_replicates) for lv in levels]
        result = coverage_study(scenarios, specs, args.n, args.replicates, seed)
    _write(result.to_csv(), args.out_csv)


COMMANDS = {"diagram": _diagram, "decompose": _decompose, "murphy": _murphy, "simulate": _simulate}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"corp: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"corp: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
