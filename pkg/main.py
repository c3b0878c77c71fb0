"""
Command line entry point.

    python main.py validate data/examples/abelian2.json
    python main.py --output text massey-dgla data/examples/massey_abelian_deformation.json

Exit codes: 0 verified/found, 1 violation/obstructed, 2 inconclusive,
64 and up for usage, parse and input errors.
"""
import argparse
import logging
import sys
from typing import List, Optional

from pipeline import ComputationPipeline, configure_logging, render_text
from services.errors import AlgebraError, UsageError
from utils.serialization import dumps

try:
    import config as cfg  # type: ignore
except Exception:
    cfg = None

REPORT_FORMAT = getattr(cfg, "REPORT_FORMAT", "json")

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _blocks(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("block sizes are comma separated integers")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="massey", description="Exact Massey products, cohomology and deformations")
    parser.add_argument("--output", choices=("json", "text"), default=REPORT_FORMAT)
    parser.add_argument("--report", help="also write the report to this path")
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("validate", help="check the axioms of a structure file")
    p.add_argument("file")

    p = sub.add_parser("cohomology", help="H^q of a Lie algebra, finite DGLA or DGCA")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("bracket", help="bracket of two cochains")
    p.add_argument("file")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    for name in ("massey-dgla", "integrate", "massey-dgca", "matric"):
        p = sub.add_parser(name)
        p.add_argument("query")
        p.add_argument("--mode", choices=("greedy", "backtrack"))
        p.add_argument("--budget", type=int)
        if name == "integrate":
            p.add_argument("--order", type=int)
        if name == "matric":
            p.add_argument("--blocks", type=_blocks)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level)
        pipeline = ComputationPipeline()
        if args.command == "validate":
            code, report = pipeline.validate(args.file)
        elif args.command == "cohomology":
            code, report = pipeline.cohomology(args.file, args.degree)
        elif args.command == "bracket":
            code, report = pipeline.bracket(args.file, args.left, args.right)
        elif args.command == "massey-dgla":
            code, report = pipeline.massey_dgla(args.query, args.mode, args.budget)
        elif args.command == "integrate":
            code, report = pipeline.integrate(args.query, args.order, args.mode, args.budget)
        elif args.command == "massey-dgca":
            code, report = pipeline.massey_dgca(args.query, args.mode, args.budget)
        else:
            code, report = pipeline.matric(args.query, args.blocks, args.mode, args.budget)
    except AlgebraError as e:
        print(f"error [{e.code}]: {e}", file=sys.stderr)
        return e.exit_code

    text = render_text(report) if args.output == "text" else dumps(report)
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
