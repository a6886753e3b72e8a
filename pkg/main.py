#!/usr/bin/env python3
"""Command-line entry point for relation entropy and orbit analysis."""

import argparse
import json
import sys
from typing import List, Optional

from config.settings import settings
from src.core.scalar import Scalar
from src.core.serialization import load_homeomorphism
from src.mahavier.grid import CellSemantics
from src.orbits.classify import Verdict
from src.reports.export import census_csv, entropy_csv, to_json, write_output
from src.utils import parse_param_overrides, setup_logger
from src.utils.logger import set_global_level
from src.workflows.runner import AnalysisRunner

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

COMMANDS = ["entropy", "orbits", "certify", "conjugate", "plot", "report", "gallery"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Exact entropy, periodic orbits and well-alignedness of closed relations"
    )
    parser.add_argument("command", choices=COMMANDS, help="Command to execute")
    parser.add_argument("--relation", help="Relation file path or gallery:<name>")
    parser.add_argument("--grid", type=int, default=settings.default_grid,
                        help=f"Grid resolution n (default: {settings.default_grid})")
    parser.add_argument("--max-m", type=int, default=settings.default_max_m, dest="max_m",
                        help=f"Mahavier depth m_max (default: {settings.default_max_m})")
    parser.add_argument("--max-period", type=int, default=settings.default_max_period,
                        dest="max_period",
                        help=f"Orbit census period bound (default: {settings.default_max_period})")
    parser.add_argument("--out", help="Output file (default: stdout)")
    parser.add_argument("--format", choices=["json", "csv", "svg"], default=None,
                        help="Output format (default: json, svg for plot)")
    parser.add_argument("--d", type=int, default=0,
                        help="Discriminant expected in --param and --hint values")
    parser.add_argument("--param", action="append", default=[],
                        help="Gallery parameter override name=value, repeatable")
    parser.add_argument("--semantics", choices=[s.value for s in CellSemantics], default=None,
                        help="Rasterization cell semantics")
    parser.add_argument("--hint", action="append", default=[],
                        help="Level b to try first when certifying, repeatable")
    parser.add_argument("--target", choices=["G", "G_inverse"], default=None,
                        help="Certify only inside G or only inside its inverse")
    parser.add_argument("--homeo", help="Homeomorphism file for conjugate")
    parser.add_argument("--against", help="Relation expected to be the conjugate image")
    parser.add_argument("--prefix-depth", type=int, default=None, dest="prefix_depth",
                        help="Plot Mahavier prefixes of a finite relation (1-3)")
    parser.add_argument("--archive", action="store_true", help="Store the run in the archive")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    return parser


def _require_relation(args: argparse.Namespace) -> str:
    if not args.relation:
        raise ValueError(f"{args.command} needs --relation")
    return args.relation


def run(args: argparse.Namespace, runner: AnalysisRunner) -> int:
    """Execute one command and write its output; returns the exit code."""
    fmt = args.format or ("svg" if args.command == "plot" else "json")
    if args.command == "gallery":
        payload = [listing.model_dump() for listing in runner.gallery()]
        write_output(json.dumps(payload, indent=2), args.out)
        return EXIT_OK

    overrides = parse_param_overrides(args.param)
    loaded = runner.load(_require_relation(args), overrides, args.d)

    if args.command == "entropy":
        semantics = CellSemantics(args.semantics) if args.semantics else None
        report = runner.entropy(loaded, args.grid, args.max_m, semantics)
        write_output(entropy_csv(report) if fmt == "csv" else to_json(report), args.out)
    elif args.command == "orbits":
        census = runner.orbits(loaded, args.max_period)
        write_output(census_csv(census) if fmt == "csv" else to_json(census), args.out)
    elif args.command == "certify":
        hints = [Scalar.parse(h, args.d) for h in args.hint]
        record = runner.certify(loaded, hints, args.target)
        write_output(to_json(record) if record else "none", args.out)
    elif args.command == "conjugate":
        if not args.homeo:
            raise ValueError("conjugate needs --homeo")
        phi = load_homeomorphism(args.homeo, args.d or loaded.relation.d)
        against = runner.load(args.against, d=args.d) if args.against else None
        result = runner.conjugate(loaded, phi, against, args.grid, args.max_m)
        write_output(to_json(result), args.out)
        if result.conjugate_to_target is False:
            logger.warning("The mapped relation differs from --against")
    elif args.command == "plot":
        write_output(runner.plot(loaded, args.prefix_depth), args.out)
    elif args.command == "report":
        verdict = runner.report(loaded, args.max_period, args.grid, args.max_m)
        write_output(to_json(verdict), args.out)
        if verdict.verdict == Verdict.INCONCLUSIVE:
            return EXIT_INCONCLUSIVE
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)

    if args.verbose:
        set_global_level("DEBUG")

    try:
        runner = AnalysisRunner(archive=True if args.archive else None)
        return run(args, runner)
    except KeyboardInterrupt:
        logger.info("Operation cancelled by user")
        return EXIT_ERROR
    except Exception as e:
        logger.error(f"Error: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
