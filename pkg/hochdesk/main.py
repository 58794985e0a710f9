"""
Command-line front end: `python start.py <command> [flags] <input.json>`.

stdout carries only the report; logs go to stderr. Exit codes: 0 success,
2 malformed or invalid input, 3 cap exceeded or window instability.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .config import Settings, get_settings
from .errors import HochdeskError, InputError
from .kernel import Derivation
from .tasks import COMMANDS, RunOptions, dispatch
from .utils.formats import JSON, TEXT, render_report
from .utils.io_loader import load_document
from .utils.schemas import ErrorBlock, Report, Timing, report_schema
from .utils.timer import with_time_budget

logger = logging.getLogger("hochdesk")


# ---------- Helpers ----------

def _int_tuple(text: Optional[str], flag: str) -> Optional[Tuple[int, ...]]:
    if text is None:
        return None
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise InputError(f"{flag} expects comma-separated integers, got {text!r}")


def _names(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise InputError("--objects needs at least one object name")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hochdesk",
                                     description="Exact Hochschild, deformation and Cech computations over Q(q)")
    parser.add_argument("command", nargs="?", choices=COMMANDS, help="computation to run")
    parser.add_argument("input", nargs="?", help="JSON input file")
    parser.add_argument("--max-degree", type=int, default=None, help="highest cohomological degree")
    parser.add_argument("--arity", type=int, default=None, help="A-infinity arity bound N")
    parser.add_argument("--n", type=int, default=None, help="power for npotent, max-unipotent and cup")
    parser.add_argument("--window", type=int, default=None, help="Cech monomial window W")
    parser.add_argument("--report", choices=(TEXT, JSON), default=None, help="report format")
    parser.add_argument("--cap", type=int, default=None, help="largest cochain term dimension")
    parser.add_argument("--xi", default="d/dq", help="base derivation: d/dq or q*d/dq")
    parser.add_argument("--weight", default=None, help="restrict to one weight summand, e.g. 0 or 1,0")
    parser.add_argument("--objects", default=None, help="restrict to these objects, comma-separated")
    parser.add_argument("--class-index", type=int, default=None, help="which basis class to report")
    parser.add_argument("--timing", action="store_true", help="include wall-clock timing in JSON reports")
    parser.add_argument("--print-schema", action="store_true", help="print the JSON report schema and exit")
    return parser


def resolve_options(args: argparse.Namespace, settings: Settings) -> RunOptions:
    """CLI flags override settings."""
    options = RunOptions(
        max_degree=args.max_degree,
        arity=args.arity if args.arity is not None else settings.default_arity,
        n=args.n,
        window=args.window if args.window is not None else settings.default_window,
        cap=args.cap if args.cap is not None else settings.dimension_cap,
        xi=Derivation.of(args.xi),
        weight=_int_tuple(args.weight, "--weight"),
        objects=_names(args.objects),
        class_index=args.class_index,
        degree_cap=settings.degree_cap,
        gs_degree_cap=settings.gs_degree_cap,
    )
    if options.arity < 1 or options.window < 0 or options.cap < 1:
        raise InputError("--arity, --window and --cap must be positive")
    return options


def run(command: str, source: Path, args: argparse.Namespace, settings: Settings) -> Tuple[Report, int]:
    """Report and exit code; failures still produce a report carrying an error block."""
    digest = ""
    with with_time_budget(settings.time_budget_seconds) as budget:
        try:
            options = resolve_options(args, settings)
            spec, digest = load_document(source)
            logger.info(f"{command} on {source.name} ({spec.kind}), digest {digest[:12]}")
            results = dispatch(command, spec, options)
            code = 0
            error = None
        except HochdeskError as exc:
            logger.info(f"{command} failed: {type(exc).__name__}: {exc.message}")
            results, code = {}, exc.exit_code
            error = ErrorBlock(**exc.to_dict())
        except Exception as exc:
            logger.error(f"{command} crashed: {exc}", exc_info=True)
            results, code = {}, 1
            error = ErrorBlock(type=type(exc).__name__, message=str(exc))
        timing = Timing(**budget.as_timing())
    return Report(command=command, input_digest=digest, results=results, timing=timing, error=error), code


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(level=settings.log_level.upper(), stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_intermixed_args(argv)
    if args.print_schema:
        print(json.dumps(report_schema(), indent=2, sort_keys=True))
        return 0
    if not args.command or not args.input:
        parser.error("a command and an input file are required")
    fmt = args.report or settings.report_format
    report, code = run(args.command, Path(args.input), args, settings)
    print(render_report(report, fmt if fmt in (TEXT, JSON) else TEXT, args.timing))
    return code


if __name__ == "__main__":
    sys.exit(main())
