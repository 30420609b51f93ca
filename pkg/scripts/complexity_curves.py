#!/usr/bin/env python3
"""Tabulate how complexity falls as properties accumulate.

Two views: the closed form (1 - c)^k for binary tagging at several
constants c, and the count-mode resolution 1 - tanh(n / scale) that maps
a raw count onto [0, 1].

Usage:
    python3 scripts/complexity_curves.py [--max-k N] [--scale FLOAT]
"""

import argparse
import math
import sys

from pivotal import complexity_binary

CONSTANTS = (0.1, 0.25, 0.5, 0.75, 0.9)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-k", type=int, default=14, help="largest property count shown")
    parser.add_argument("--scale", type=float, default=10.0, help="count-mode scale")
    args = parser.parse_args(argv)

    header = "k    " + "".join(f"c={c:<11g}" for c in CONSTANTS)
    print(header)
    for k in range(args.max_k + 1):
        row = "".join(f"{complexity_binary(k, c):<13.6g}" for c in CONSTANTS)
        print(f"{k:<5d}{row}")

    print()
    print(f"count-mode resolution, scale = {args.scale:g}")
    print("n    r = 1 - tanh(n / scale)")
    for n in (0, 1, 2, 5, 10, 20, 50):
        print(f"{n:<5d}{1.0 - math.tanh(n / args.scale):.6g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
