#!/usr/bin/env python3
"""Score every shipped fixture and print a one-line summary per problem.

Usage:
    python3 scripts/score_fixtures.py [--fixtures DIR] [--c FLOAT] [--top N]
"""

import argparse
import sys
from pathlib import Path

from pivotal import ResolutionConfig, complexity, parse_problem, recommend


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--fixtures",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "fixtures",
        help="directory containing .dproblem.json files",
    )
    parser.add_argument("--c", type=float, default=0.5, help="binary-mode resolution constant")
    parser.add_argument("--top", type=int, default=3, help="strategies to list per problem")
    args = parser.parse_args(argv)

    paths = sorted(args.fixtures.glob("*.dproblem.json"))
    if not paths:
        print(f"no .dproblem.json files under {args.fixtures}", file=sys.stderr)
        return 1

    config = ResolutionConfig(default_c=args.c)
    names_by_path = {p: p.name.removesuffix(".dproblem.json") for p in paths}
    width = max(len(n) for n in names_by_path.values())
    for path in paths:
        problem = parse_problem(path.read_text(encoding="utf-8"))
        score = complexity(problem, config)
        recs = recommend(problem, config, top=args.top)
        names = ", ".join(r.strategy.name for r in recs) or "(none)"
        print(f"{names_by_path[path]:<{width}}  H = {score.h:<12.6g} k = {score.k:<3d} {names}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
