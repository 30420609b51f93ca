#!/usr/bin/env python3
"""Search the entrepreneur fixture's budget-split front and describe it.

Runs the seeded evolutionary search over the continuous allocation space,
prints the per-objective extremes and the knee point, and optionally dumps
the whole front as CSV for plotting.

Usage:
    python3 scripts/entrepreneur_frontier.py [--seed N] [--population N]
        [--generations N] [--csv PATH]
"""

import argparse
import csv
import sys
from pathlib import Path

from pivotal import SearchConfig, parse_problem, solve_continuous, tradeoff_summary


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--problem",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "fixtures" / "entrepreneur.dproblem.json",
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--population", type=int, default=64)
    parser.add_argument("--generations", type=int, default=40)
    parser.add_argument("--csv", type=Path, default=None, help="write front members to this file")
    args = parser.parse_args(argv)

    problem = parse_problem(args.problem.read_text(encoding="utf-8"))
    config = SearchConfig(
        population=args.population, generations=args.generations, seed=args.seed
    )
    front = solve_continuous(problem, config)
    metric_ids = list(problem.metric_ids)

    print(f"{problem.id}: front of {len(front.members)} member(s), seed {args.seed}")
    for warning in front.warnings:
        print(f"warning: {warning}")
    if not front.members:
        return 0

    summary = tradeoff_summary(front)
    for extreme in summary.extremes:
        mid = metric_ids[extreme.objective_index]
        best = extreme.best.objectives[extreme.objective_index]
        worst = extreme.worst.objectives[extreme.objective_index]
        print(f"  {mid}: best {best:.6g}, worst {worst:.6g}")
    knee_point = ", ".join(f"{v:.6g}" for v in summary.knee.objectives)
    print(f"  knee: [{knee_point}] at x = {summary.knee.origin}")

    if args.csv is not None:
        with args.csv.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow([f"x{i}" for i in range(len(front.members[0].origin))] + metric_ids)
            for member in front.members:
                writer.writerow(list(member.origin) + list(member.objectives))
        print(f"  wrote {len(front.members)} rows to {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
