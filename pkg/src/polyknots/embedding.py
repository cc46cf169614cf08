"""Polynomial triples, degree strata, the embedding test and sign octants."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CannotCertify, DegenerateProjection, NonTransverseCrossing, WrongStratum
from .poly import Polynomial, gcd, parse, real_roots
from .resultant import DEFAULT_WIDTH, double_points

SEPARATION_TOL = 1e-9


@dataclass(frozen=True)
class PolyKnot:
    f: Polynomial
    g: Polynomial
    h: Polynomial
    name: str | None = field(default=None, compare=False)

    @classmethod
    def from_strings(cls, f: str, g: str, h: str, name=None) -> "PolyKnot":
        return cls(parse(f), parse(g), parse(h), name)

    @classmethod
    def from_json(cls, data) -> "PolyKnot":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(parse(str(data["f"])), parse(str(data["g"])), parse(str(data["h"])), data.get("name"))

    def to_json(self) -> dict:
        out = {"f": self.f.to_text(), "g": self.g.to_text(), "h": self.h.to_text()}
        if self.name is not None:
            out["name"] = self.name
        return out

    @property
    def components(self) -> tuple:
        return (self.f, self.g, self.h)

    @property
    def degree_sequence(self) -> tuple:
        return tuple(p.degree for p in self.components)

    def __call__(self, t):
        return tuple(p(t) for p in self.components)

    def signed(self, e1: int, e2: int, e3: int) -> "PolyKnot":
        return PolyKnot(self.f.scale(e1), self.g.scale(e2), self.h.scale(e3), self.name)

    def mirror(self) -> "PolyKnot":
        """Reflection z -> -z."""
        return PolyKnot(self.f, self.g, -self.h)

    def derivative(self) -> "PolyKnot":
        return PolyKnot(self.f.derivative(), self.g.derivative(), self.h.derivative())


class Stratum(enum.Enum):
    OUTSIDE = 0
    IN_AD = 1
    IN_PD = 2
    IN_PD_TILDE = 3

    def __ge__(self, other):
        return self.value >= other.value

    def __gt__(self, other):
        return self.value > other.value


def classify_stratum(k: PolyKnot, d: int) -> Stratum:
    """Most specific of A_d, P_d, P~_d containing k by its exact degree sequence.

    Degrees only; being an embedding is checked separately by is_embedding.
    """
    if d < 2:
        raise ValueError("strata are defined for d >= 2")
    df, dg, dh = k.degree_sequence
    if (df, dg, dh) == (d - 2, d - 1, d):
        return Stratum.IN_PD_TILDE
    if df < dg < dh <= d:
        return Stratum.IN_PD
    if df <= d - 2 and dg <= d - 1 and dh <= d:
        return Stratum.IN_AD
    return Stratum.OUTSIDE


@dataclass(frozen=True)
class EmbeddingCertificate:
    embedding: bool
    pair: tuple | None = None
    min_separation: float | None = None
    reason: str = ""
    double_points: tuple = ()

    def __bool__(self):
        return self.embedding


_PAIRS = ((0, 1, 2), (0, 2, 1), (1, 2, 0))
_NAMES = "fgh"


def singular_parameters(k: PolyKnot) -> list[float]:
    """Real t with f'(t) = g'(t) = h'(t) = 0."""
    d = gcd(gcd(k.f.derivative(), k.g.derivative()), k.h.derivative())
    if d.is_zero():
        raise ValueError("all three components are constant")
    if d.degree < 1:
        return []
    return real_roots(d).values


def _monotone(p: Polynomial) -> bool:
    """p' has no real root of odd multiplicity, so p is strictly monotone."""
    if p.degree < 1:
        return False
    dp = p.derivative()
    if dp.degree < 1:
        return True
    return all(m % 2 == 0 for m in real_roots(dp).multiplicities)


def is_embedding(k: PolyKnot, tol: float = SEPARATION_TOL, width=DEFAULT_WIDTH) -> EmbeddingCertificate:
    if all(p.degree < 1 for p in k.components):
        raise ValueError("a constant map is not a knot")
    sing = singular_parameters(k)
    if sing:
        return EmbeddingCertificate(False, reason=f"derivative vanishes at t={sing[0]:.12g}")
    comps = k.components
    for i, p in enumerate(comps):
        if _monotone(p):
            # an injective coordinate separates every pair of parameters
            return EmbeddingCertificate(True, (_NAMES[i],), None, "")
    for i, j, r in _PAIRS:
        try:
            nodes = double_points(comps[i], comps[j], width)
        except (DegenerateProjection, NonTransverseCrossing):
            continue
        third = comps[r]
        pair = (_NAMES[i], _NAMES[j])
        min_sep = None
        for d in nodes:
            sep = abs(float(third(d.t_exact) - third(d.s_exact)))
            min_sep = sep if min_sep is None else min(min_sep, sep)
            if sep <= tol:
                return EmbeddingCertificate(
                    False, pair, sep, f"{_NAMES[r]} does not separate node (s,t)=({d.s:.12g},{d.t:.12g})", tuple(nodes)
                )
        return EmbeddingCertificate(True, pair, min_sep, "", tuple(nodes))
    raise CannotCertify("every coordinate projection is degenerate or non-regular")


def deg4_criterion(a, b, c, e1: int = 1, e2: int = 1, e3: int = 1) -> bool:
    """Closed-form embedding test for (e1 t^2 + a t, e2 t^3 + b t, e3 t^4 + c t)."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return 3 * a * a + 4 * e2 * b > 0 or e1 * a**3 + 2 * e1 * e2 * a * b + e3 * c != 0


def deg4_margin(a, b, c, e1=1, e2=1, e3=1) -> float:
    """Distance-like margin to the criterion's boundary surfaces."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    q = 3 * a * a + 4 * e2 * b
    w = e1 * a**3 + 2 * e1 * e2 * a * b + e3 * c
    return float(min(abs(q), abs(w)))


def deg4_knot(a, b, c, e1=1, e2=1, e3=1) -> PolyKnot:
    return PolyKnot(
        Polynomial((0, a, e1)),
        Polynomial((0, b, 0, e2)),
        Polynomial((0, c, 0, 0, e3)),
    )


@dataclass(frozen=True)
class SignOctant:
    e1: int
    e2: int
    e3: int

    def __iter__(self):
        return iter((self.e1, self.e2, self.e3))

    def as_tuple(self) -> tuple:
        return (self.e1, self.e2, self.e3)


def _sgn(x) -> int:
    return 1 if x > 0 else -1


def in_pd_tilde(k: PolyKnot) -> int | None:
    """The d with k in P~_d by degrees (d >= 2), else None."""
    dh = k.h.degree
    if isinstance(dh, int) and dh >= 2 and k.degree_sequence == (dh - 2, dh - 1, dh):
        return dh
    return None


def sign_octant(k: PolyKnot) -> SignOctant:
    d = in_pd_tilde(k)
    if d is None or d < 3:
        raise WrongStratum(f"degree sequence {k.degree_sequence} is not (d-2, d-1, d) with d >= 3")
    return SignOctant(_sgn(k.f.leading), _sgn(k.g.leading), _sgn(k.h.leading))


SIGN_TRIPLES = tuple((a, b, c) for a in (1, -1) for b in (1, -1) for c in (1, -1))


def eight_variants(k: PolyKnot) -> list[PolyKnot]:
    """The knots (e1 f, e2 g, e3 h) for all sign triples."""
    return [k.signed(*e) for e in SIGN_TRIPLES]
