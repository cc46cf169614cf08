"""Knot diagrams of polynomial knots projected to the (x, y) plane.

Conventions (used everywhere in the package):

* crossings are numbered 1..k in ascending order of their first-visit parameter s;
* a crossing is positive when (over tangent, under tangent) is a positively
  oriented frame of the plane;
* PD edges are numbered 1..2k along the parameter starting at -infinity and
  incremented at every crossing passage; the edge out of the last passage is
  edge 1 again (closure through infinity).  X[a, b, c, d] lists the incoming
  under edge first and proceeds counterclockwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .embedding import SEPARATION_TOL, PolyKnot
from .errors import NonTransverseCrossing, UnresolvedCrossing
from .resultant import DEFAULT_WIDTH, DoublePoint, double_points


@dataclass(frozen=True)
class Crossing:
    index: int
    s: float
    t: float
    over_at_t: bool
    sign: int
    node: DoublePoint = field(repr=False, compare=False, default=None)

    @property
    def over_param(self) -> float:
        return self.t if self.over_at_t else self.s

    @property
    def under_param(self) -> float:
        return self.s if self.over_at_t else self.t


@dataclass(frozen=True)
class Visit:
    param: float
    crossing: int
    over: bool
    sign: int

    def __str__(self):
        return f"{'O' if self.over else 'U'}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class KnotDiagram:
    crossings: tuple

    @property
    def visits(self) -> tuple:
        out = []
        for c in self.crossings:
            out.append(Visit(c.s, c.index, not c.over_at_t, c.sign))
            out.append(Visit(c.t, c.index, c.over_at_t, c.sign))
        out.sort(key=lambda v: v.param)
        return tuple(out)

    def __len__(self):
        return len(self.crossings)

    @property
    def gauss_code(self) -> list:
        """Signed labels along the knot: +i for an over passage, -i for an under passage."""
        return [v.crossing if v.over else -v.crossing for v in self.visits]

    @property
    def gauss_text(self) -> str:
        return " ".join(str(v) for v in self.visits)

    @property
    def gauss_key(self) -> tuple:
        """Full combinatorial data: labels, O/U flags and signs."""
        return tuple((v.crossing, v.over, v.sign) for v in self.visits)

    @property
    def pd_code(self) -> list:
        visits = self.visits
        n = len(visits)
        if n == 0:
            return []
        pos = {}
        for j, v in enumerate(visits, start=1):
            pos[(v.crossing, v.over)] = j
        out = []
        for c in self.crossings:
            ju, jo = pos[(c.index, False)], pos[(c.index, True)]
            a, cc = ju, ju % n + 1
            o_in, o_out = jo, jo % n + 1
            if c.sign > 0:
                out.append((a, o_out, cc, o_in))
            else:
                out.append((a, o_in, cc, o_out))
        return out

    @property
    def pd_text(self) -> str:
        return " ".join(f"X({a},{b},{c},{d})" for a, b, c, d in self.pd_code)

    def mirror(self) -> "KnotDiagram":
        return KnotDiagram(
            tuple(Crossing(c.index, c.s, c.t, not c.over_at_t, -c.sign, c.node) for c in self.crossings)
        )


def _projection_nodes(k: PolyKnot, width) -> list[DoublePoint]:
    f, g = k.f, k.g
    if f.degree < 1 or g.degree < 1:
        other = g if f.degree < 1 else f
        if other.degree == 1:
            return []
        raise NonTransverseCrossing("projection to the (x, y) plane is not an immersed curve")
    return double_points(f, g, width)


def extract_diagram(k: PolyKnot, width=DEFAULT_WIDTH, tol: float = SEPARATION_TOL) -> KnotDiagram:
    """Diagram of k under (x, y, z) -> (x, y); the caller guarantees k is an embedding."""
    nodes = _projection_nodes(k, width)
    df, dg = k.f.derivative(), k.g.derivative()
    crossings = []
    for i, d in enumerate(nodes, start=1):
        s, t = d.s_exact, d.t_exact
        dh = k.h(t) - k.h(s)
        if abs(float(dh)) <= tol:
            raise UnresolvedCrossing(f"h does not separate the node at (s,t)=({d.s:.12g},{d.t:.12g})")
        over_at_t = dh > 0
        det = df(s) * dg(t) - df(t) * dg(s)
        # cross(over, under): the tangent determinant taken in (s, t) order, flipped when t is over
        sign = (1 if det > 0 else -1) * (-1 if over_at_t else 1)
        crossings.append(Crossing(i, d.s, d.t, over_at_t, sign, d))
    return KnotDiagram(tuple(crossings))


def writhe(dg: KnotDiagram) -> int:
    return sum(c.sign for c in dg.crossings)


@dataclass(frozen=True)
class CrossingPattern:
    """Requested over/under data: e[i] = +1 when crossing i+1 is under at its first visit."""

    e: tuple
    r_slacks: tuple = None
    changes: int | None = None

    def __post_init__(self):
        e = tuple(int(x) for x in self.e)
        if any(x not in (1, -1) for x in e):
            raise ValueError("pattern entries must be +1 or -1")
        object.__setattr__(self, "e", e)
        r = self.r_slacks
        if r is None:
            r = (Fraction(1),) * len(e)
        r = tuple(Fraction(x) for x in r)
        if len(r) != len(e):
            raise ValueError("one slack per crossing")
        if any(x <= 0 for x in r):
            raise ValueError("slacks must be positive")
        object.__setattr__(self, "r_slacks", r)

    def __len__(self):
        return len(self.e)

    @classmethod
    def from_string(cls, text: str, r_slacks=None) -> "CrossingPattern":
        text = text.replace("−", "-").replace(",", "").replace(" ", "")
        if any(ch not in "+-" for ch in text):
            raise ValueError(f"pattern must use only '+' and '-': {text!r}")
        return cls(tuple(1 if ch == "+" else -1 for ch in text), r_slacks)

    def __str__(self):
        return "".join("+" if x > 0 else "-" for x in self.e)

    @property
    def rhs(self) -> tuple:
        return tuple(e * r for e, r in zip(self.e, self.r_slacks))


def visit_sequence(nodes, e) -> list[str]:
    """U/O labels of the 2k passages in parameter order for pattern e on nodes."""
    seq = []
    for d, ei in zip(nodes, e):
        first = "U" if ei > 0 else "O"
        second = "O" if ei > 0 else "U"
        seq.append((d.s, first))
        seq.append((d.t, second))
    seq.sort()
    return [x for _, x in seq]


def count_changes(labels) -> int:
    return sum(1 for a, b in zip(labels, labels[1:]) if a != b)


def crossing_pattern(dg: KnotDiagram) -> CrossingPattern:
    if not dg.crossings:
        raise ValueError("empty diagram has no crossing pattern")
    e = tuple(1 if c.over_at_t else -1 for c in dg.crossings)
    labels = ["O" if v.over else "U" for v in dg.visits]
    return CrossingPattern(e, None, count_changes(labels))
