"""Kauffman bracket, Jones polynomial, determinant and table lookup.

All invariants are computed from PD codes (see diagram.py for the
convention), so the reference table built from canonical PD codes and the
diagrams extracted from polynomial knots go through the same code path.
"""

from __future__ import annotations

import functools
import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import CorpusCorrupt, TooManyCrossings

MAX_CROSSINGS = 16


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial, stored as sorted (exponent, coefficient) pairs."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d) -> "LaurentPoly":
        items = sorted((_exp(k), int(v)) for k, v in d.items() if v)
        return cls(tuple(items))

    @classmethod
    def monomial(cls, k, c=1) -> "LaurentPoly":
        return cls.from_dict({k: c})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other):
        d = Counter(self.as_dict())
        for k, v in other.terms:
            d[k] += v
        return LaurentPoly.from_dict(d)

    def __neg__(self):
        return LaurentPoly(tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly.from_dict({k: v * other for k, v in self.terms})
        d = Counter()
        for k1, v1 in self.terms:
            for k2, v2 in other.terms:
                d[k1 + k2] += v1 * v2
        return LaurentPoly.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = LaurentPoly.monomial(0)
        for _ in range(n):
            out = out * self
        return out

    def substitute_power(self, factor) -> "LaurentPoly":
        """x -> x**factor for a rational factor."""
        return LaurentPoly.from_dict({_exp(Fraction(k) * factor): v for k, v in self.terms})

    def inverted(self) -> "LaurentPoly":
        return self.substitute_power(-1)

    def evaluate(self, x):
        return sum(v * x**k for k, v in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        return {str(k): v for k, v in self.terms}

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, v in reversed(self.terms):
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            mag = abs(v)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
            out.append(("-" if v < 0 else "+", body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sg, body in out[1:]:
            s += f" {sg} {body}"
        return s


def _exp(k):
    k = Fraction(k)
    return int(k) if k.denominator == 1 else k


ONE = LaurentPoly.monomial(0)
LOOP = LaurentPoly.from_dict({2: -1, -2: -1})  # -A^2 - A^-2


def _pd(diagram_or_pd):
    pd = getattr(diagram_or_pd, "pd_code", diagram_or_pd)
    return [tuple(x) for x in pd]


def pd_signs(pd) -> list[int]:
    """Sign of each X[a, b, c, d]: positive when the over strand runs d -> b."""
    pd = _pd(pd)
    n = 2 * len(pd)
    out = []
    for a, b, c, d in pd:
        if n == 2:
            out.append(1 if a == b else -1)
        elif b == d % n + 1:
            out.append(1)
        elif d == b % n + 1:
            out.append(-1)
        else:
            raise ValueError(f"crossing {(a, b, c, d)} is not consistently oriented")
    return out


def pd_writhe(pd) -> int:
    return sum(pd_signs(pd))


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def kauffman_bracket(diagram) -> LaurentPoly:
    """Bracket in A by the full state sum; the crossingless diagram has bracket 1."""
    pd = _pd(diagram)
    k = len(pd)
    if k == 0:
        return ONE
    if k > MAX_CROSSINGS:
        raise TooManyCrossings(f"{k} crossings exceeds the state-sum cap of {MAX_CROSSINGS}")
    labels = sorted({x for X in pd for x in X})
    index = {x: i for i, x in enumerate(labels)}
    X = [tuple(index[x] for x in c) for c in pd]
    m = len(labels)
    hist = Counter()
    for state in range(1 << k):
        parent = list(range(m))
        n_a = 0
        for i, (a, b, c, d) in enumerate(X):
            if state >> i & 1:
                p, q, r, s = a, d, b, c
            else:
                p, q, r, s = a, b, c, d
                n_a += 1
            rp, rq = _find(parent, p), _find(parent, q)
            if rp != rq:
                parent[rp] = rq
            rr, rs = _find(parent, r), _find(parent, s)
            if rr != rs:
                parent[rr] = rs
        loops = sum(1 for x in range(m) if _find(parent, x) == x)
        hist[(2 * n_a - k, loops)] += 1
    out = LaurentPoly()
    loop_pows = {}
    for (a_exp, loops), count in hist.items():
        if loops not in loop_pows:
            loop_pows[loops] = LOOP ** (loops - 1)
        out = out + LaurentPoly.monomial(a_exp, count) * loop_pows[loops]
    return out


def jones_from_pd(pd, writhe_value=None) -> LaurentPoly:
    pd = _pd(pd)
    w = pd_writhe(pd) if writhe_value is None else writhe_value
    sign = -1 if w % 2 else 1
    normalized = kauffman_bracket(pd) * LaurentPoly.monomial(-3 * w, sign)
    return normalized.substitute_power(Fraction(-1, 4))


def jones(diagram) -> LaurentPoly:
    """Writhe-normalized bracket with A = t^(-1/4)."""
    w = None
    if hasattr(diagram, "crossings"):
        w = sum(c.sign for c in diagram.crossings)
    return jones_from_pd(_pd(diagram), w)


def determinant_from_jones(v: LaurentPoly) -> int:
    total = 0
    for k, c in v.terms:
        if isinstance(k, Fraction):
            raise ValueError("determinant needs integer exponents")
        total += c * (-1) ** (k % 2)
    return abs(total)


def determinant(diagram) -> int:
    return determinant_from_jones(jones(diagram))


# PD manipulation

def mirror_pd(pd) -> list:
    """Switch every crossing; the result again starts at the incoming under edge."""
    pd = _pd(pd)
    out = []
    for (a, b, c, d), sg in zip(pd, pd_signs(pd)):
        # the old over strand becomes the under strand
        out.append((d, a, b, c) if sg > 0 else (b, c, d, a))
    return out


def pd_from_braid(word, strands=None) -> list:
    """PD code of the closure of a braid word (+i = sigma_i, -i = its inverse).

    sigma_i is a positive crossing: the strand moving from position i to i+1 passes over.
    """
    if strands is None:
        strands = max((abs(x) for x in word), default=0) + 1
    nxt = [0]

    def new():
        nxt[0] += 1
        return nxt[0] - 1

    bottom = [new() for _ in range(strands)]
    cur = list(bottom)
    crossings = []
    succ = {}
    for g in word:
        i = abs(g) - 1
        x, y = cur[i], cur[i + 1]
        u, v = new(), new()
        succ[x] = v
        succ[y] = u
        if g > 0:
            crossings.append((y, v, u, x))
        else:
            crossings.append((x, y, v, u))
        cur[i], cur[i + 1] = u, v
    alias = {top: bot for top, bot in zip(cur, bottom)}

    def canon(e):
        return alias.get(e, e)

    crossings = [tuple(canon(e) for e in c) for c in crossings]
    succ = {canon(a): canon(b) for a, b in succ.items()}
    start = crossings[0][0] if crossings else None
    if start is None:
        return []
    order = [start]
    while True:
        e = succ[order[-1]]
        if e == start:
            break
        order.append(e)
    edges = {canon(e) for e in range(nxt[0])}
    if len(order) != len(edges):
        # also catches strands the word never touches
        raise ValueError("braid closure has more than one component")
    label = {e: i + 1 for i, e in enumerate(order)}
    return [tuple(label[e] for e in c) for c in crossings]


# reference table

_TABLE_FILE = "knot_table.json"

CHIRAL_BASES = ("3_1", "5_1", "5_2", "6_1", "6_2", "8_19", "3_1#3_1")
ACHIRAL_BASES = ("0_1", "4_1", "6_3", "3_1#3_1*")


def mirror_name(name: str) -> str:
    if name in ACHIRAL_BASES:
        return name
    if name == "3_1#3_1":
        return "3_1*#3_1*"
    if name == "3_1*#3_1*":
        return "3_1#3_1"
    return name[:-1] if name.endswith("*") else name + "*"


@functools.lru_cache(maxsize=1)
def load_table_data() -> dict:
    with resources.files("polyknots.data").joinpath(_TABLE_FILE).open("r", encoding="utf-8") as fh:
        data = json.load(fh)
    body = json.dumps(data["knots"], sort_keys=True)
    if hashlib.sha256(body.encode()).hexdigest() != data.get("sha256"):
        raise CorpusCorrupt("knot table does not match its checksum")
    return data


@functools.lru_cache(maxsize=1)
def reference_table() -> dict:
    """name -> Jones polynomial for the 18 named knot types."""
    data = load_table_data()
    table = {}
    for entry in data["knots"]:
        name, pd = entry["name"], [tuple(x) for x in entry["pd"]]
        v = jones_from_pd(pd)
        table[name] = v
        mname = mirror_name(name)
        if mname != name:
            table[mname] = jones_from_pd(mirror_pd(pd))
    return table


@dataclass(frozen=True)
class KnotId:
    name: str
    matched_by: tuple = ()

    @property
    def known(self) -> bool:
        return self.name != "unknown"


def identify_jones(v: LaurentPoly, det: int | None = None) -> KnotId:
    hits = [name for name, ref in reference_table().items() if ref == v]
    if len(hits) != 1:
        return KnotId("unknown", ())
    name = hits[0]
    matched = ("jones",)
    if det is not None:
        if determinant_from_jones(reference_table()[name]) != det:
            return KnotId("unknown", ())
        matched += ("determinant",)
    return KnotId(name, matched)


def identify(diagram) -> KnotId:
    v = jones(diagram)
    return identify_jones(v, determinant_from_jones(v))


def invariant_report(diagram) -> dict:
    v = jones(diagram)
    w = sum(c.sign for c in diagram.crossings) if hasattr(diagram, "crossings") else pd_writhe(_pd(diagram))
    det = determinant_from_jones(v)
    return {
        "jones": v.to_json(),
        "determinant": det,
        "writhe": w,
        "identified": identify_jones(v, det).name,
    }
