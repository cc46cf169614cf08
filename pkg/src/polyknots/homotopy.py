"""Closed-form paths of polynomial knots between low-degree strata.

Each family maps s in [0, 1] to a PolyKnot and carries the stratum that every
point of the path should belong to.  verify_path samples the path and checks
the embedding property, the stratum and (inside P~_d) the sign octant.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .embedding import PolyKnot, Stratum, classify_stratum, deg4_knot, is_embedding, sign_octant
from .errors import CannotCertify, HypothesisFailed, PathBroken
from .poly import Polynomial

T = Polynomial.t()
DEFAULT_SAMPLES = 101


@dataclass(frozen=True)
class HomotopyPath:
    name: str
    at: Callable[[Fraction], PolyKnot] = field(repr=False)
    member: Callable[[PolyKnot, Fraction], bool] = field(repr=False)
    membership: str = ""
    fixed_octant: bool = False

    def __call__(self, s) -> PolyKnot:
        return self.at(Fraction(s))

    @property
    def start(self) -> PolyKnot:
        return self(0)

    @property
    def end(self) -> PolyKnot:
        return self(1)


@dataclass(frozen=True)
class PathReport:
    name: str
    samples: int
    octant: tuple | None


def _lin(p: Polynomial, s) -> Polynomial:
    return p.scale(1 - s)


def _degrees(k: PolyKnot) -> tuple:
    return k.degree_sequence


def _require(cond: bool, msg: str):
    if not cond:
        raise HypothesisFailed(msg)


def _embedded(k: PolyKnot) -> bool:
    try:
        return bool(is_embedding(k))
    except CannotCertify:
        return False


def _coeff_sign(x) -> int:
    return 1 if x >= 0 else -1


def _in_p(d):
    def member(k, s):
        return classify_stratum(k, d) >= Stratum.IN_PD

    return member


def _in_p_tilde(d):
    def member(k, s):
        return classify_stratum(k, d) == Stratum.IN_PD_TILDE

    return member


def _open_end_degrees(d, seq):
    """In P_d everywhere, with degree sequence seq for s in (0, 1]."""
    def member(k, s):
        if classify_stratum(k, d) < Stratum.IN_PD:
            return False
        return s == 0 or _degrees(k) == seq

    return member


# straight lines and degree raising

def _line(phi: PolyKnot, psi: PolyKnot, low: tuple, high: tuple, d: int, name: str) -> HomotopyPath:
    _require(_degrees(phi) == low, f"start must have degree sequence {low}, got {_degrees(phi)}")
    _require(_degrees(psi) == high, f"end must have degree sequence {high}, got {_degrees(psi)}")
    _require(_embedded(psi), "end point is not an embedding")

    def at(s):
        return PolyKnot(*(_lin(p, s) + q.scale(s) for p, q in zip(phi.components, psi.components)))

    return HomotopyPath(name, at, _open_end_degrees(d, high), f"P_{d}, degrees {high} for s in (0,1]")


def _raise_to_123(tau: PolyKnot) -> HomotopyPath:
    _require(_degrees(tau) in ((0, 1, 3), (0, 2, 3)), f"degree sequence {_degrees(tau)} is not (0,1,3) or (0,2,3)")
    _require(_embedded(tau), "start point is not an embedding")
    e2 = _coeff_sign(tau.g.coeff(2))

    def at(s):
        return PolyKnot(_lin(tau.f, s) + T.scale(s), _lin(tau.g, s) + Polynomial.monomial(2, e2 * s), tau.h)

    return HomotopyPath("raise-to-123", at, _open_end_degrees(3, (1, 2, 3)), "P_3, degrees (1,2,3) for s in (0,1]")


_RAISE_134_FROM = ((0, 1, 3), (0, 1, 4), (0, 2, 3), (0, 2, 4), (0, 3, 4), (1, 2, 3), (1, 2, 4))


def _raise_to_134(tau: PolyKnot) -> HomotopyPath:
    _require(_degrees(tau) in _RAISE_134_FROM, f"degree sequence {_degrees(tau)} is not one of {_RAISE_134_FROM}")
    _require(_embedded(tau), "start point is not an embedding")
    e1 = _coeff_sign(tau.f.coeff(1))
    e2 = _coeff_sign(tau.g.coeff(3))
    e3 = _coeff_sign(tau.h.coeff(4))

    def at(s):
        return PolyKnot(
            _lin(tau.f, s) + Polynomial.monomial(1, e1 * s),
            _lin(tau.g, s) + Polynomial.monomial(3, e2 * s),
            _lin(tau.h, s) + Polynomial.monomial(4, e3 * s),
        )

    return HomotopyPath("raise-to-134", at, _open_end_degrees(4, (1, 3, 4)), "P_4, degrees (1,3,4) for s in (0,1]")


# contractions of the degree-4 normal form

def _check_signs(*es):
    _require(all(e in (1, -1) for e in es), "signs must be +1 or -1")


def _contract(a, b, c, e1, e2, e3, plus: bool) -> HomotopyPath:
    _check_signs(e1, e2, e3)
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if plus:
        _require(3 * a * a + 4 * e2 * b > 0, "needs 3a^2 + 4 e2 b > 0")
    else:
        _require(e1 * a**3 + 2 * e1 * e2 * a * b + e3 * c != 0, "needs e1 a^3 + 2 e1 e2 a b + e3 c != 0")
    k = deg4_knot(a, b, c, e1, e2, e3)
    lin_sign, quad = (1, 1) if plus else (-1, -2)

    def at(s):
        return PolyKnot(
            _lin(k.f, s),
            _lin(k.g, s) + Polynomial.monomial(1, lin_sign * e2 * s),
            _lin(k.h, s) + Polynomial.monomial(2, quad * e3 * s),
        )

    name = "contract-plus" if plus else "contract-minus"
    return HomotopyPath(name, at, _in_p(4), "P_4")


# reductions inside P~_4

def _is_p4_tilde(k):
    return _degrees(k) == (2, 3, 4)


def _drop_constants(phi: PolyKnot) -> HomotopyPath:
    _require(_is_p4_tilde(phi), f"degree sequence {_degrees(phi)} is not (2,3,4)")
    _require(_embedded(phi), "start point is not an embedding")

    def drop(p, s):
        return p - Polynomial.constant(p.coeff(0) * s)

    def at(s):
        return PolyKnot(*(drop(p, s) for p in phi.components))

    return HomotopyPath("drop-constants", at, _in_p_tilde(4), "P~_4", True)


def _clear_middle(tau: PolyKnot) -> HomotopyPath:
    _require(_is_p4_tilde(tau), f"degree sequence {_degrees(tau)} is not (2,3,4)")
    _require(all(p.coeff(0) == 0 for p in tau.components), "constant terms must vanish")
    _require(_embedded(tau), "start point is not an embedding")
    f, g, h = tau.components
    a2 = f.coeff(2)
    b2, b3 = g.coeff(2), g.coeff(3)
    c2, c3 = h.coeff(2), h.coeff(3)
    kg = b2 / a2
    kf = (b2 * c3 - b3 * c2) / (a2 * b3)
    kh = c3 / b3

    def at(s):
        return PolyKnot(f, g - f.scale(kg * s), h + f.scale(kf * s) - g.scale(kh * s))

    return HomotopyPath("clear-middle", at, _in_p_tilde(4), "P~_4", True)


def _normalize_leading(sigma: PolyKnot) -> HomotopyPath:
    _require(_is_p4_tilde(sigma), f"degree sequence {_degrees(sigma)} is not (2,3,4)")
    f, g, h = sigma.components
    shape_ok = (
        f.coeff(0) == 0
        and all(g.coeff(j) == 0 for j in (0, 2))
        and all(h.coeff(j) == 0 for j in (0, 2, 3))
    )
    _require(shape_ok, "needs the shape (a2 t^2 + a1 t, b3 t^3 + b t, c4 t^4 + c t)")
    _require(_embedded(sigma), "start point is not an embedding")
    leads = [abs(p.leading) for p in (f, g, h)]

    def at(s):
        return PolyKnot(*(p.scale(1 - s + s / m) for p, m in zip((f, g, h), leads)))

    return HomotopyPath("normalize-leading", at, _in_p_tilde(4), "P~_4", True)


# paths inside the normal-form space with fixed leading signs

def _normal_form(e1, e2, e3, a_of, b_of, c_of, name):
    def at(s):
        return deg4_knot(a_of(s), b_of(s), c_of(s), e1, e2, e3)

    return HomotopyPath(name, at, _in_p_tilde(4), "P~_4 normal forms", True)


def _nf_quadratic(a, b, c, e1, e2, e3):
    _check_signs(e1, e2, e3)
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    _require(3 * a * a + 4 * e2 * b > 0, "needs 3a^2 + 4 e2 b > 0")
    return _normal_form(e1, e2, e3, lambda s: a * s, lambda s: b * s * s + e2 - e2 * s * s, lambda s: c * s, "normal-quadratic")


def _nf_cubic(a, b, c, e1, e2, e3, positive: bool):
    _check_signs(e1, e2, e3)
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    w = e1 * a**3 + 2 * e1 * e2 * a * b + e3 * c
    if positive:
        _require(w > 0, "needs e1 a^3 + 2 e1 e2 a b + e3 c > 0")
        cs = lambda s: c * s**3 + e3 - e3 * s**3  # noqa: E731
    else:
        _require(w < 0, "needs e1 a^3 + 2 e1 e2 a b + e3 c < 0")
        cs = lambda s: c * s**3 - e3 + e3 * s**3  # noqa: E731
    name = "normal-cubic-plus" if positive else "normal-cubic-minus"
    return _normal_form(e1, e2, e3, lambda s: a * s, lambda s: b * s * s, cs, name)


def _nf_base(e1, e2, e3, positive: bool):
    _check_signs(e1, e2, e3)
    sign = 1 if positive else -1
    name = "base-to-cubic-plus" if positive else "base-to-cubic-minus"
    return _normal_form(e1, e2, e3, lambda s: Fraction(0), lambda s: e2 * (1 - s), lambda s: sign * e3 * s, name)


FAMILIES = {
    "line-012-123": lambda phi, psi: _line(phi, psi, (0, 1, 2), (1, 2, 3), 3, "line-012-123"),
    "raise-to-123": _raise_to_123,
    "line-012-134": lambda phi, psi: _line(phi, psi, (0, 1, 2), (1, 3, 4), 4, "line-012-134"),
    "raise-to-134": _raise_to_134,
    "contract-plus": lambda a, b, c, e1=1, e2=1, e3=1: _contract(a, b, c, e1, e2, e3, True),
    "contract-minus": lambda a, b, c, e1=1, e2=1, e3=1: _contract(a, b, c, e1, e2, e3, False),
    "drop-constants": _drop_constants,
    "clear-middle": _clear_middle,
    "normalize-leading": _normalize_leading,
    "normal-quadratic": lambda a, b, c, e1=1, e2=1, e3=1: _nf_quadratic(a, b, c, e1, e2, e3),
    "normal-cubic-plus": lambda a, b, c, e1=1, e2=1, e3=1: _nf_cubic(a, b, c, e1, e2, e3, True),
    "normal-cubic-minus": lambda a, b, c, e1=1, e2=1, e3=1: _nf_cubic(a, b, c, e1, e2, e3, False),
    "base-to-cubic-plus": lambda e1=1, e2=1, e3=1: _nf_base(e1, e2, e3, True),
    "base-to-cubic-minus": lambda e1=1, e2=1, e3=1: _nf_base(e1, e2, e3, False),
}


def homotopy_family(name: str, *args, **kwargs) -> HomotopyPath:
    try:
        build = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return build(*args, **kwargs)


def sample_points(samples: int = DEFAULT_SAMPLES) -> list[Fraction]:
    return [Fraction(i, samples - 1) for i in range(samples)]


def verify_path(path: HomotopyPath, samples: int = DEFAULT_SAMPLES) -> PathReport:
    octant = None
    for s in sample_points(samples):
        k = path(s)
        try:
            cert = is_embedding(k)
        except CannotCertify as exc:
            raise PathBroken(s, f"cannot certify: {exc}") from None
        if not cert:
            raise PathBroken(s, cert.reason)
        if not path.member(k, s):
            raise PathBroken(s, f"degree sequence {k.degree_sequence} leaves {path.membership}")
        if path.fixed_octant:
            o = sign_octant(k).as_tuple()
            if octant is None:
                octant = o
            elif o != octant:
                raise PathBroken(s, f"sign octant changed from {octant} to {o}")
    return PathReport(path.name, samples, octant)


# random endpoints satisfying each family's hypotheses

def _rq(rng: random.Random, lo=-3, hi=3, den=8) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def _rpoly(rng, degree: int, lead_nonzero=True) -> Polynomial:
    cs = [_rq(rng) for _ in range(degree + 1)]
    while lead_nonzero and cs[-1] == 0:
        cs[-1] = _rq(rng)
    return Polynomial(tuple(cs))


def _rsign(rng) -> int:
    return rng.choice((1, -1))


def _random_knot(rng, degrees, tries=200) -> PolyKnot:
    for _ in range(tries):
        k = PolyKnot(*(_rpoly(rng, d) for d in degrees))
        if k.degree_sequence == tuple(degrees) and _embedded(k):
            return k
    raise RuntimeError(f"no embedding with degrees {degrees} found")


def random_endpoint(name: str, rng: random.Random) -> tuple[tuple, dict]:
    """(args, kwargs) for homotopy_family(name, ...) drawn to satisfy its hypotheses."""
    signs = {"e1": _rsign(rng), "e2": _rsign(rng), "e3": _rsign(rng)}
    if name in ("line-012-123", "line-012-134"):
        high = (1, 2, 3) if name.endswith("123") else (1, 3, 4)
        return (_random_knot(rng, (0, 1, 2)), _random_knot(rng, high)), {}
    if name == "raise-to-123":
        return (_random_knot(rng, rng.choice(((0, 1, 3), (0, 2, 3)))),), {}
    if name == "raise-to-134":
        return (_random_knot(rng, rng.choice(_RAISE_134_FROM)),), {}
    if name == "drop-constants":
        return (_random_knot(rng, (2, 3, 4)),), {}
    if name == "clear-middle":
        k = _random_knot(rng, (2, 3, 4))
        return (PolyKnot(*(p - Polynomial.constant(p.coeff(0)) for p in k.components)),), {}
    if name == "normalize-leading":
        while True:
            a2, b3, c4 = (_rq(rng) for _ in range(3))
            if a2 and b3 and c4:
                break
        f = Polynomial((0, _rq(rng), a2))
        g = Polynomial((0, _rq(rng), 0, b3))
        h = Polynomial((0, _rq(rng), 0, 0, c4))
        return (PolyKnot(f, g, h),), {}
    if name.startswith("base-to-"):
        return (), signs
    e1, e2, e3 = signs["e1"], signs["e2"], signs["e3"]
    while True:
        a, b, c = (_rq(rng) for _ in range(3))
        q = 3 * a * a + 4 * e2 * b
        w = e1 * a**3 + 2 * e1 * e2 * a * b + e3 * c
        ok = {
            "contract-plus": q > 0,
            "normal-quadratic": q > 0,
            "contract-minus": w != 0,
            "normal-cubic-plus": w > 0,
            "normal-cubic-minus": w < 0,
        }
        if name not in ok:
            raise ValueError(f"unknown family {name!r}")
        if ok[name]:
            return (a, b, c), signs
