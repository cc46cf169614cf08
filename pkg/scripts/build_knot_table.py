"""Regenerate src/polyknots/data/knot_table.json from braid words.

Each base knot is stored once as a PD code of a braid closure; the mirror
partner is derived at load time.  Run from the repository root:

    python3 scripts/build_knot_table.py
"""

import argparse
import hashlib
import json
import sys
from pathlib import Path

from polyknots.invariants import determinant_from_jones, jones_from_pd, mirror_pd, pd_from_braid

# (name, braid word, take the mirror of the closure).  The unstarred member of
# each chiral pair is the chirality of the corpus representation carrying that
# name, so some entries are mirrors of the positive braid closure.
BRAIDS = [
    ("0_1", [], False),
    ("3_1", [1, 1, 1], False),
    ("4_1", [1, -2, 1, -2], False),
    ("5_1", [1, 1, 1, 1, 1], True),
    ("5_2", [1, 1, 1, 2, -1, 2], True),
    ("6_1", [1, 1, 2, -1, -3, 2, -3], False),
    ("6_2", [1, 1, 1, -2, 1, -2], False),
    ("6_3", [1, 1, -2, 1, -2, -2], False),
    ("3_1#3_1", [1, 1, 1, 2, 2, 2], True),
    ("3_1#3_1*", [1, 1, 1, -2, -2, -2], False),
    ("8_19", [1, 2, 1, 2, 1, 2, 1, 2], False),
]

VERSION = 1
OUT = Path(__file__).resolve().parents[1] / "src" / "polyknots" / "data" / "knot_table.json"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="compare with the shipped file instead of writing it")
    args = ap.parse_args(argv)
    knots = []
    for name, word, flip in BRAIDS:
        pd = pd_from_braid(word)
        if flip:
            pd = mirror_pd(pd)
        v = jones_from_pd(pd)
        knots.append({"name": name, "braid": word, "mirrored": flip, "pd": [list(x) for x in pd]})
        print(f"{name:10s} {len(pd):2d} crossings  det {determinant_from_jones(v):3d}  V = {v}")
    body = json.dumps(knots, sort_keys=True)
    data = {"version": VERSION, "sha256": hashlib.sha256(body.encode()).hexdigest(), "knots": knots}
    text = json.dumps(data, indent=1) + "\n"
    if args.check:
        same = OUT.read_text() == text
        print("shipped table is up to date" if same else "shipped table differs from the braid list")
        return 0 if same else 1
    OUT.write_text(text)
    print(f"wrote {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
