"""The printed polynomial representations, shipped as data, and the batch check
that reproduces the path-component tables."""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from importlib import resources

from .construct import lift_stratum
from .diagram import extract_diagram
from .embedding import PolyKnot, SIGN_TRIPLES, Stratum, classify_stratum, in_pd_tilde, is_embedding, sign_octant
from .errors import CorpusCorrupt, PolyKnotError
from .invariants import ACHIRAL_BASES, identify, mirror_name

_DATA_FILE = "corpus.json"

# trivial knots used to populate the unknot rows, and the target degrees they lift cleanly to
UNKNOT_SEEDS = {5: ("t", "t^2", "t^3"), 6: ("t", "t^2", "t^3 + t"), 7: ("t", "t^2", "t^3")}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    knot: PolyKnot
    source: str
    degree_sequence: tuple
    printed: tuple = field(repr=False, default=())

    @property
    def d(self) -> int:
        return self.degree_sequence[2]


def payload_checksum(data: dict) -> str:
    body = json.dumps({"entries": data["entries"], "tables": data["tables"]}, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(body.encode("utf-8")).hexdigest()


def load_data(text: str | None = None) -> dict:
    if text is None:
        text = resources.files("polyknots.data").joinpath(_DATA_FILE).read_text(encoding="utf-8")
    data = json.loads(text)
    if data.get("sha256") != payload_checksum(data):
        raise CorpusCorrupt("corpus data does not match its checksum")
    return data


def load_corpus(text: str | None = None) -> list[CorpusEntry]:
    out = []
    for e in load_data(text)["entries"]:
        printed = (e["f"], e["g"], e["h"])
        knot = PolyKnot.from_strings(*printed, name=e["name"])
        out.append(CorpusEntry(e["name"], knot, e["source"], tuple(e["degree_sequence"]), printed))
    return out


def entry(name: str) -> CorpusEntry:
    for e in load_corpus():
        if e.name == name:
            return e
    raise KeyError(name)


def crossing_bound(d: int) -> int:
    return (d - 2) * (d - 3) // 2


@dataclass
class EntryReport:
    name: str
    embedding: bool = False
    degree_sequence: tuple = ()
    stratum_ok: bool = False
    identified: str = ""
    crossings: int = -1
    bound: int = 0
    octants_distinct: bool = False
    seconds: float = 0.0
    errors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            not self.errors
            and self.embedding
            and self.stratum_ok
            and self.identified == self.name
            and 0 <= self.crossings <= self.bound
            and self.octants_distinct
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "embedding": self.embedding,
            "degree_sequence": list(self.degree_sequence),
            "stratum_ok": self.stratum_ok,
            "identified": self.identified,
            "crossings": self.crossings,
            "crossing_bound": self.bound,
            "octants_distinct": self.octants_distinct,
            "seconds": round(self.seconds, 3),
            "errors": self.errors,
        }


def verify_entry(e: CorpusEntry) -> EntryReport:
    rep = EntryReport(e.name, degree_sequence=e.knot.degree_sequence, bound=crossing_bound(e.d))
    t0 = time.perf_counter()
    try:
        rep.embedding = bool(is_embedding(e.knot))
        rep.stratum_ok = (
            e.knot.degree_sequence == e.degree_sequence and classify_stratum(e.knot, e.d) == Stratum.IN_PD_TILDE
        )
        dg = extract_diagram(e.knot)
        rep.crossings = len(dg)
        rep.identified = identify(dg).name
        octs = {sign_octant(v).as_tuple() for v in (e.knot.signed(*s) for s in SIGN_TRIPLES)}
        rep.octants_distinct = len(octs) == 8
    except PolyKnotError as exc:
        rep.errors.append(f"{type(exc).__name__}: {exc}")
    rep.seconds = time.perf_counter() - t0
    return rep


# octant tables

@dataclass
class TableRow:
    knot: str
    polynomial_degree: str
    octants: set = field(default_factory=set)
    representative: str = ""
    errors: list = field(default_factory=list)

    @property
    def expected(self) -> int:
        return 8 if self.knot in ACHIRAL_BASES else 4

    @property
    def components(self) -> int:
        return len(self.octants)


@dataclass
class OctantTable:
    d: int
    rows: list
    claimed: int

    @property
    def lower_bound(self) -> int:
        return sum(r.components for r in self.rows)

    @property
    def ok(self) -> bool:
        return self.lower_bound == self.claimed and all(r.components >= r.expected and not r.errors for r in self.rows)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "lower_bound": self.lower_bound,
            "claimed_lower_bound": self.claimed,
            "ok": self.ok,
            "rows": [
                {
                    "knot": r.knot,
                    "polynomial_degree": r.polynomial_degree,
                    "components": r.components,
                    "representative": r.representative,
                    "errors": r.errors,
                }
                for r in self.rows
            ],
        }


def representative(name: str, d: int, corpus=None) -> tuple[PolyKnot, str]:
    """A knot of type `name` in P~_d, with a note on how it was obtained."""
    if name == "0_1":
        seed = PolyKnot.from_strings(*UNKNOT_SEEDS[d], name="0_1")
        return lift_stratum(seed, d).knot, f"lift of unknot {UNKNOT_SEEDS[d]}"
    corpus = corpus if corpus is not None else load_corpus()
    by_name = {e.name: e for e in corpus}
    if name in by_name:
        k, note = by_name[name].knot, "corpus"
    elif mirror_name(name) in by_name:
        k, note = by_name[mirror_name(name)].knot.mirror(), f"mirror of corpus {mirror_name(name)}"
    else:
        raise KeyError(f"no representation of {name}")
    m = in_pd_tilde(k)
    if m is None or m > d:
        raise ValueError(f"{name} representation does not fit in degree {d}")
    if m < d:
        k = lift_stratum(k, d).knot
        note += f", lifted from degree {m}"
    return k, note


def octant_table(d: int, data=None, corpus=None) -> OctantTable:
    """Distinct (knot type, sign octant) pairs over the table's knot list."""
    data = data if data is not None else load_data()
    layout = data["tables"][str(d)]
    corpus = corpus if corpus is not None else load_corpus()
    rows = [TableRow(r["knot"], r["polynomial_degree"]) for r in layout["rows"]]
    by_knot = {r.knot: r for r in rows}
    done = set()
    for row in rows:
        if row.knot in done:
            continue
        try:
            k, note = representative(row.knot, d, corpus)
        except (PolyKnotError, KeyError, ValueError) as exc:
            row.errors.append(f"{type(exc).__name__}: {exc}")
            continue
        row.representative = note
        done.add(row.knot)
        partner = by_knot.get(mirror_name(row.knot))
        if partner is not None and partner is not row:
            partner.representative = f"sign variants of the {row.knot} representative"
            done.add(partner.knot)
        for signs in SIGN_TRIPLES:
            v = k.signed(*signs)
            try:
                if not is_embedding(v):
                    row.errors.append(f"variant {signs} is not an embedding")
                    continue
                got = identify(extract_diagram(v)).name
            except PolyKnotError as exc:
                row.errors.append(f"variant {signs}: {type(exc).__name__}: {exc}")
                continue
            target = by_knot.get(got)
            if target is None:
                row.errors.append(f"variant {signs} identified as {got}, not in the table")
                continue
            target.octants.add(sign_octant(v).as_tuple())
    return OctantTable(d, rows, layout["claimed_lower_bound"])


@dataclass
class CorpusReport:
    entries: list
    tables: list

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries) and all(t.ok for t in self.tables)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "entries": [e.to_json() for e in self.entries],
            "tables": [t.to_json() for t in self.tables],
        }


def verify_corpus(degrees=(5, 6, 7)) -> CorpusReport:
    data = load_data()
    corpus = load_corpus()
    entries = [verify_entry(e) for e in corpus]
    tables = [octant_table(d, data, corpus) for d in degrees]
    return CorpusReport(entries, tables)
