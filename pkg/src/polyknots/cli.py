"""Command-line front end: polyknots <command> [options].

Exit codes: 0 success, 1 negative verdict, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .construct import height_by_intervals, height_by_linear_system, obstruction_deg6, realizes
from .corpus import load_corpus, verify_corpus
from .diagram import CrossingPattern, extract_diagram
from .embedding import SEPARATION_TOL, PolyKnot, in_pd_tilde, is_embedding, sign_octant
from .errors import PolyKnotError
from .invariants import identify, invariant_report
from .plot import render_svg
from .poly import parse

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


@dataclass(frozen=True)
class Options:
    json: bool = False
    tolerance: float = SEPARATION_TOL
    precision: int = 80  # root isolation width 2^-precision

    @property
    def width(self) -> Fraction:
        return Fraction(1, 2**self.precision)


def _read_json(path: str) -> dict:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return json.loads(text)


def _knot(path: str) -> PolyKnot:
    return PolyKnot.from_json(_read_json(path))


def _projection(path: str):
    data = _read_json(path)
    return parse(str(data["f"])), parse(str(data["g"]))


def _emit(opts: Options, payload: dict, human: list[tuple[str, object]] | None = None):
    if opts.json:
        print(json.dumps(payload, sort_keys=True))
        return
    rows = human if human is not None else list(payload.items())
    width = max((len(k) for k, _ in rows), default=0)
    for k, v in rows:
        print(f"{k:<{width}}  {v}")


def cmd_verify(args, opts: Options) -> int:
    k = _knot(args.knot)
    cert = is_embedding(k, opts.tolerance, opts.width)
    payload = {
        "embedding": cert.embedding,
        "degree_sequence": [p.degree if isinstance(p.degree, int) else None for p in k.components],
        "projection": "".join(cert.pair) if cert.pair else None,
        "min_separation": cert.min_separation,
        "double_points": len(cert.double_points),
    }
    if cert.reason:
        payload["reason"] = cert.reason
    _emit(opts, payload)
    return EXIT_OK if cert.embedding else EXIT_NEGATIVE


def cmd_identify(args, opts: Options) -> int:
    k = _knot(args.knot)
    cert = is_embedding(k, opts.tolerance, opts.width)
    if not cert:
        _emit(opts, {"knot": None, "embedding": False, "reason": cert.reason})
        return EXIT_NEGATIVE
    dg = extract_diagram(k, opts.width, opts.tolerance)
    rep = invariant_report(dg)
    payload = {
        "knot": rep["identified"],
        "crossings": len(dg),
        "jones": rep["jones"],
        "determinant": rep["determinant"],
        "writhe": rep["writhe"],
        "gauss": dg.gauss_text,
        "pd": [list(x) for x in dg.pd_code],
    }
    human = [
        ("knot", payload["knot"]),
        ("crossings", len(dg)),
        ("jones", _jones_text(dg)),
        ("determinant", rep["determinant"]),
        ("writhe", rep["writhe"]),
        ("gauss", dg.gauss_text or "(none)"),
    ]
    _emit(opts, payload, human)
    return EXIT_OK if rep["identified"] != "unknown" else EXIT_NEGATIVE


def _jones_text(dg) -> str:
    from .invariants import jones

    return str(jones(dg))


def cmd_construct(args, opts: Options) -> int:
    f, g = _projection(args.projection)
    slacks = [Fraction(x) for x in args.slacks.split(",")] if args.slacks else None
    pattern = CrossingPattern.from_string(args.pattern, slacks)
    if args.method == "intervals":
        h = height_by_intervals(f, g, pattern)
    else:
        h = height_by_linear_system(f, g, pattern)
    k = PolyKnot(f, g, h)
    ok = realizes(k, pattern)
    ident = identify(extract_diagram(k)).name if ok else None
    payload = {
        "knot": k.to_json(),
        "method": args.method,
        "degree": h.degree,
        "realizes_pattern": ok,
        "identified": ident,
    }
    human = [
        ("h", str(h)),
        ("method", args.method),
        ("degree", h.degree),
        ("realizes pattern", ok),
        ("identified", ident),
    ]
    _emit(opts, payload, human)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_obstruct(args, opts: Options) -> int:
    f, g = _projection(args.projection)
    slacks = [Fraction(x) for x in args.slacks.split(",")] if args.slacks else None
    pattern = CrossingPattern.from_string(args.pattern, slacks)
    res = obstruction_deg6(f, g, pattern)
    _emit(opts, res.to_json())
    return EXIT_OK if res.obstructed else EXIT_NEGATIVE


def cmd_octant(args, opts: Options) -> int:
    k = _knot(args.knot)
    o = sign_octant(k)
    _emit(opts, {"octant": list(o.as_tuple()), "d": in_pd_tilde(k)})
    return EXIT_OK


def cmd_corpus(args, opts: Options) -> int:
    if args.action == "list":
        entries = load_corpus()
        if opts.json:
            print(json.dumps([{"name": e.name, "source": e.source, "degree_sequence": list(e.degree_sequence)} for e in entries]))
        else:
            for e in entries:
                print(f"{e.name:<10} {str(e.degree_sequence):<10} {e.source}")
        return EXIT_OK
    if args.action == "show":
        for e in load_corpus():
            if e.name == args.name:
                print(json.dumps({"f": e.printed[0], "g": e.printed[1], "h": e.printed[2], "name": e.name}, ensure_ascii=False))
                return EXIT_OK
        print(f"error: no corpus entry named {args.name!r}", file=sys.stderr)
        return EXIT_ERROR
    report = verify_corpus()
    if opts.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print_corpus_report(report)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def print_corpus_report(report):
    print(f"{'entry':<10} {'ok':<4} {'embedding':<9} {'identified':<10} {'crossings':>9} {'bound':>5} {'seconds':>8}")
    for e in report.entries:
        print(
            f"{e.name:<10} {'yes' if e.ok else 'NO':<4} {str(e.embedding):<9} {e.identified:<10} "
            f"{e.crossings:>9} {e.bound:>5} {e.seconds:>8.2f}"
        )
        for err in e.errors:
            print(f"    {err}")
    for t in report.tables:
        print()
        print(f"P~_{t.d}: path components per knot type")
        print(f"  {'knot':<10} {'poly degree':<12} {'components':>10}  representative")
        for r in t.rows:
            print(f"  {r.knot:<10} {r.polynomial_degree:<12} {'at least ' + str(r.components):>10}  {r.representative}")
            for err in r.errors:
                print(f"      {err}")
        print(f"  total: at least {t.lower_bound} (table: at least {t.claimed}) {'ok' if t.ok else 'MISMATCH'}")


def cmd_plot(args, opts: Options) -> int:
    k = _knot(args.knot)
    dg = extract_diagram(k, opts.width, opts.tolerance)
    svg = render_svg(k, dg, title=k.name)
    Path(args.out).write_text(svg, encoding="utf-8")
    _emit(opts, {"svg": args.out, "crossings": len(dg)})
    return EXIT_OK


def _global_flags(parser, suppress: bool):
    # subcommands accept the same flags; suppressed defaults keep a value given before the subcommand
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    parser.add_argument("--tolerance", type=float, default=d(SEPARATION_TOL), help="height separation tolerance")
    parser.add_argument("--precision", type=int, default=d(80), help="root isolation width 2^-PRECISION")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)

    p = argparse.ArgumentParser(prog="polyknots", description="Polynomial knot toolkit")
    _global_flags(p, suppress=False)
    p.add_argument("--version", action="version", version=f"polyknots {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check that a knot JSON is an embedding")
    s.add_argument("knot")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("identify", parents=[common], help="extract the diagram and identify the knot type")
    s.add_argument("knot")
    s.set_defaults(run=cmd_identify)

    s = sub.add_parser("construct", parents=[common], help="build a height for a projection and a crossing pattern")
    s.add_argument("projection")
    s.add_argument("--pattern", required=True, help="one of + (under first) or - (over first) per crossing")
    s.add_argument("--method", choices=("intervals", "linear"), default="intervals")
    s.add_argument("--slacks", help="comma-separated positive slacks r_i")
    s.set_defaults(run=cmd_construct)

    s = sub.add_parser("obstruct", parents=[common], help="degree-6 height obstruction for a (4, 5) projection")
    s.add_argument("projection")
    s.add_argument("--pattern", required=True)
    s.add_argument("--slacks", help="comma-separated positive slacks r_i")
    s.set_defaults(run=cmd_obstruct)

    s = sub.add_parser("octant", parents=[common], help="sign octant of a knot in P~_d")
    s.add_argument("knot")
    s.set_defaults(run=cmd_octant)

    s = sub.add_parser("corpus", parents=[common], help="list, show or verify the bundled representations")
    s.add_argument("action", choices=("verify", "list", "show"), nargs="?", default="verify")
    s.add_argument("name", nargs="?")
    s.set_defaults(run=cmd_corpus)

    s = sub.add_parser("plot", parents=[common], help="draw the (x, y) projection as SVG")
    s.add_argument("knot")
    s.add_argument("-o", "--out", required=True)
    s.set_defaults(run=cmd_plot)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    opts = Options(args.json, args.tolerance, args.precision)
    try:
        return args.run(args, opts)
    except (PolyKnotError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = f"{type(exc).__name__}: {exc}"
        if opts.json:
            print(json.dumps({"error": msg}))
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
