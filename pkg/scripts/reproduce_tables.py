"""Verify every bundled representation and rebuild the path-component tables.

    python3 scripts/reproduce_tables.py            # human-readable tables
    python3 scripts/reproduce_tables.py --json out.json
"""

import argparse
import json
import sys

from polyknots.cli import print_corpus_report
from polyknots.corpus import verify_corpus


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", default="5,6,7", help="comma-separated table degrees")
    ap.add_argument("--json", metavar="PATH", help="also write the full report as JSON")
    args = ap.parse_args(argv)
    report = verify_corpus(tuple(int(d) for d in args.degrees.split(",")))
    print_corpus_report(report)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_json(), fh, indent=1, sort_keys=True)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
