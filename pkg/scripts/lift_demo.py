"""Build a height for a projection, then lift the knot up the degree strata.

    python3 scripts/lift_demo.py --f "t^3 - 3t" --g "t^4 - 4t^2" --pattern +-+ --to 7
"""

import argparse
import sys

from polyknots.construct import height_by_intervals, height_by_linear_system, lift_stratum
from polyknots.diagram import CrossingPattern, extract_diagram
from polyknots.embedding import PolyKnot, in_pd_tilde, sign_octant
from polyknots.invariants import identify
from polyknots.poly import parse


def describe(k: PolyKnot) -> str:
    name = identify(extract_diagram(k)).name
    return f"degrees {k.degree_sequence}, octant {sign_octant(k).as_tuple()}, {name}"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--f", default="t^3 - 3t")
    ap.add_argument("--g", default="t^4 - 4t^2")
    ap.add_argument("--pattern", default="+-+")
    ap.add_argument("--method", choices=("intervals", "linear"), default="intervals")
    ap.add_argument("--to", type=int, default=7, help="highest target degree")
    args = ap.parse_args(argv)
    f, g = parse(args.f), parse(args.g)
    build = height_by_intervals if args.method == "intervals" else height_by_linear_system
    k = PolyKnot(f, g, build(f, g, CrossingPattern.from_string(args.pattern)))
    print(f"h = {k.h}")
    d = in_pd_tilde(k)
    if d is None:
        print(f"start: degrees {k.degree_sequence}, not in any P~_d; nothing to lift")
        return 1
    print(f"start d={d}: {describe(k)}")
    for target in range(d + 1, args.to + 1):
        res = lift_stratum(k, target)
        print(f"lift d={target}: {describe(res.knot)}, epsilon {float(res.epsilon):.3g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
