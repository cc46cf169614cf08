"""Degree-6 height obstruction on the five-node (4, 5) projection.

Sweeps every crossing pattern (or one given with --pattern) at chosen slacks
and reports which are obstructed, then shows a consistent right-hand side
built from an explicit height, for which the verdict must flip.
"""

import argparse
import itertools
import sys
from fractions import Fraction

from polyknots.construct import consistent_pattern, obstruction_deg6
from polyknots.diagram import CrossingPattern
from polyknots.poly import parse

F = "2 (t - 2)(t + 4)(t^2 - 11)"
G = "t (t^2 - 6)(t^2 - 16)"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--f", default=F)
    ap.add_argument("--g", default=G)
    ap.add_argument("--pattern", help="a single pattern such as +-+-+ (default: all 32)")
    ap.add_argument("--slacks", default="1,1,1,1,1")
    ap.add_argument("--height", default="1,-3,2,5", help="coefficients of t^6, t^3, t^2, t for the consistent case")
    args = ap.parse_args(argv)
    f, g = parse(args.f), parse(args.g)
    slacks = [Fraction(x) for x in args.slacks.split(",")]
    patterns = [args.pattern] if args.pattern else ["".join(p) for p in itertools.product("+-", repeat=len(slacks))]

    print(f"{'pattern':<8} {'obstructed':<10} {'rank':<7} det")
    blocked = 0
    for text in patterns:
        res = obstruction_deg6(f, g, CrossingPattern.from_string(text, slacks))
        blocked += res.obstructed
        det = f"{float(res.det_if_square):.6g}" if res.det_if_square is not None else "-"
        print(f"{text:<8} {str(res.obstructed):<10} {str(list(res.ranks)):<7} {det}")
    print(f"{blocked}/{len(patterns)} patterns obstructed in degree 6")

    coeffs = [Fraction(x) for x in args.height.split(",")]
    pattern = consistent_pattern(f, g, coeffs)
    res = obstruction_deg6(f, g, pattern)
    print(f"consistent rhs from h = {args.height}: pattern {pattern}, obstructed {res.obstructed}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
