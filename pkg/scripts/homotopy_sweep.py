"""Check every closed-form homotopy family on random endpoints.

    python3 scripts/homotopy_sweep.py --endpoints 20 --samples 101 --seed 7
"""

import argparse
import random
import sys
import time

from polyknots.errors import PolyKnotError
from polyknots.homotopy import FAMILIES, homotopy_family, random_endpoint, verify_path


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--endpoints", type=int, default=20)
    ap.add_argument("--samples", type=int, default=101)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--family", action="append", choices=sorted(FAMILIES), help="restrict to these families")
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    broken = 0
    for name in args.family or sorted(FAMILIES):
        t0 = time.perf_counter()
        fails = []
        for _ in range(args.endpoints):
            fam_args, kwargs = random_endpoint(name, rng)
            try:
                verify_path(homotopy_family(name, *fam_args, **kwargs), samples=args.samples)
            except PolyKnotError as exc:
                fails.append(str(exc))
        broken += bool(fails)
        status = "ok" if not fails else f"{len(fails)} broken"
        print(f"{name:<22} {status:<10} {time.perf_counter() - t0:6.1f}s")
        for msg in fails[:3]:
            print(f"    {msg}")
    return 1 if broken else 0


if __name__ == "__main__":
    sys.exit(main())
