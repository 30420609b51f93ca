"""Command-line workbench.

Subcommands mirror the analyst workflow: validate a problem document,
score its complexity, list applicable strategies, search the trade-off
front, or do all of it at once with `report`.  `taxonomy` exports the
property catalog and `serve` starts the HTTP API.

Exit codes: 0 success, 1 validation failure (diagnostics on stderr),
2 parse or IO failure, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .io_format import (
    DocumentError,
    build_report,
    parse_problem,
    render_report,
)
from .moo import SearchConfig, solve_continuous, solve_discrete, tradeoff_summary
from .problem_model import SpaceKind, ValidationFailedError, validate
from .recommender import recommend
from .scoring import ResolutionConfig, complexity
from .taxonomy import catalog, catalog_as_dict, property_by_id, strategies_for

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_IO = 2
EXIT_INTERNAL = 3

_SEED_ENV = "PIVOTAL_SEED"


def _sig(value: float) -> str:
    return f"{value:.6g}"


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _resolution_config(args: argparse.Namespace) -> ResolutionConfig:
    return ResolutionConfig(default_c=args.c, count_scale=args.count_scale)


def _resolve_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    raw = os.environ.get(_SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{_SEED_ENV} must be an integer, got {raw!r}") from None


def _search_config(args: argparse.Namespace) -> SearchConfig:
    return SearchConfig(
        population=args.population,
        generations=args.generations,
        seed=_resolve_seed(args.seed),
        mutation_rate=args.mutation_rate,
        mutation_sigma_fraction=args.mutation_sigma,
        crossover_rate=args.crossover_rate,
    )


def _print_diagnostics(diagnostics) -> None:
    for d in diagnostics:
        suffix = f" [{d.where}]" if d.where else ""
        print(f"{d.code}: {d.message}{suffix}", file=sys.stderr)


def _cmd_validate(args: argparse.Namespace) -> int:
    problem = parse_problem(_read(args.path), check=False)
    diagnostics = validate(problem)
    if diagnostics:
        _print_diagnostics(diagnostics)
        return EXIT_INVALID
    print(f"OK: {problem.id} is a valid {problem.action_space.kind.value} problem")
    return EXIT_OK


def _cmd_score(args: argparse.Namespace) -> int:
    problem = parse_problem(_read(args.path))
    score = complexity(problem, _resolution_config(args))
    print(f"H = {_sig(score.h)}")
    print(f"k = {score.k}")
    for f in score.factors:
        name = property_by_id(f.property_id).name
        print(f"property {f.property_id} ({name}): resolution {_sig(f.resolution)}, "
              f"factor {_sig(f.factor)}")
    return EXIT_OK


def _cmd_recommend(args: argparse.Namespace) -> int:
    problem = parse_problem(_read(args.path))
    recommendations = recommend(problem, _resolution_config(args), top=args.top)
    if not recommendations:
        print("no applicable strategies: no assessed property carries any weight")
        return EXIT_OK
    for i, rec in enumerate(recommendations, start=1):
        via = ", ".join(str(pid) for pid, _ in rec.supporting_properties)
        print(f"{i}. {rec.strategy.name} (score {_sig(rec.score)}; properties {via})")
    return EXIT_OK


def _cmd_optimize(args: argparse.Namespace) -> int:
    problem = parse_problem(_read(args.path))
    if problem.action_space.kind is SpaceKind.DISCRETE:
        front = solve_discrete(problem)
    else:
        front = solve_continuous(problem, _search_config(args))
    for warning in front.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"front: {len(front.members)} member(s)")
    labels = problem.metric_ids
    for member in front.members:
        origin = member.origin
        if isinstance(origin, tuple):
            origin = "(" + ", ".join(_sig(v) for v in origin) + ")"
        cells = ", ".join(f"{mid}={_sig(v)}" for mid, v in zip(labels, member.objectives))
        print(f"  {origin}: {cells}")
    if front.members:
        summary = tradeoff_summary(front)
        knee = summary.knee.origin
        if isinstance(knee, tuple):
            knee = "(" + ", ".join(_sig(v) for v in knee) + ")"
        print(f"knee: {knee}")
    return EXIT_OK


def _cmd_taxonomy(args: argparse.Namespace) -> int:
    if args.format == "json":
        print(json.dumps(catalog_as_dict(), sort_keys=True, indent=2))
        return EXIT_OK
    for prop in catalog().properties:
        print(f"{prop.id:>2}  {prop.cluster.value:<18} {prop.name}")
        names = "; ".join(s.name for s in strategies_for(prop.id))
        print(f"    strategies: {names}")
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    problem = parse_problem(_read(args.path))
    search = SearchConfig(seed=_resolve_seed(None))
    report = build_report(problem, _resolution_config(args), search=search)
    text = render_report(report, target=args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import run

    run(port=args.port)
    return EXIT_OK


def _add_scoring_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--c", type=float, default=0.5, dest="c", metavar="REAL",
        help="resolution credited to a binary yes, in (0, 1] (default 0.5)",
    )
    parser.add_argument(
        "--count-scale", type=float, default=10.0, metavar="REAL",
        help="count at which a tally's resolution decays to about 0.238 (default 10)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pivotal",
        description="Workbench for decision problems under deep uncertainty.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("validate", help="check a problem document, listing diagnostics")
    p.add_argument("path", help="problem document (.dproblem.json)")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("score", help="print the complexity score H and its factors")
    p.add_argument("path", help="problem document (.dproblem.json)")
    _add_scoring_flags(p)
    p.set_defaults(handler=_cmd_score)

    p = sub.add_parser("recommend", help="print ranked applicable strategies")
    p.add_argument("path", help="problem document (.dproblem.json)")
    _add_scoring_flags(p)
    p.add_argument("--top", type=int, default=None, metavar="N",
                   help="keep only the N best strategies")
    p.set_defaults(handler=_cmd_recommend)

    p = sub.add_parser("optimize", help="print the trade-off front and its knee")
    p.add_argument("path", help="problem document (.dproblem.json)")
    p.add_argument("--population", type=int, default=64, metavar="N")
    p.add_argument("--generations", type=int, default=100, metavar="N")
    p.add_argument("--seed", type=int, default=None, metavar="N",
                   help=f"search seed (default: ${_SEED_ENV} or 0)")
    p.add_argument("--mutation-rate", type=float, default=0.1, metavar="REAL")
    p.add_argument("--mutation-sigma", type=float, default=0.05, metavar="REAL",
                   help="mutation step as a fraction of each variable's range")
    p.add_argument("--crossover-rate", type=float, default=0.9, metavar="REAL")
    p.set_defaults(handler=_cmd_optimize)

    p = sub.add_parser("taxonomy", help="export the property and strategy catalog")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.set_defaults(handler=_cmd_taxonomy)

    p = sub.add_parser("report", help="score, recommend, and optimize in one document")
    p.add_argument("path", help="problem document (.dproblem.json)")
    _add_scoring_flags(p)
    p.add_argument("--format", choices=("markdown", "json"), default="markdown")
    p.add_argument("--out", default=None, metavar="PATH", help="write to a file instead of stdout")
    p.set_defaults(handler=_cmd_report)

    p = sub.add_parser("serve", help="start the HTTP API")
    p.add_argument("--port", type=int, default=8000, metavar="N")
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValidationFailedError as exc:
        _print_diagnostics(exc.diagnostics)
        return EXIT_INVALID
    except (DocumentError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entrypoint() -> None:
    sys.exit(main())
