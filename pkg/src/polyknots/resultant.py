"""Double points of plane polynomial curves via Sylvester resultants.

For a plane curve t -> (f(t), g(t)) the parameter pairs (s, t), s != t, with
f(s) = f(t) and g(s) = g(t) are the common zeros of the divided differences
F(s,t) = (f(t)-f(s))/(t-s) and G(s,t).  Eliminating s gives the resultant
Gamma(t) whose real roots carry the t-coordinates of all nodes.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateProjection, DegreeTooLow, NonTransverseCrossing, ZeroPolynomial
from .poly import (
    Polynomial,
    Root,
    _int_divexact,
    gcd,
    real_roots,
)

# Working widths for root isolation.  Crossing parameters are algebraic, so the
# downstream consumers receive rational approximants at this width.
DEFAULT_WIDTH = Fraction(1, 2**80)
RESIDUAL_TOL = 1e-9
MIN_SEPARATION = 1e-7
TRANSVERSAL_TOL = 1e-9


@dataclass(frozen=True)
class DividedDifference:
    """F(s,t) = (p(t) - p(s)) / (t - s) stored as sum_j grid[j](t) * s**j."""

    base: Polynomial
    grid: tuple

    @property
    def degree_s(self):
        return len(self.grid) - 1

    def is_zero(self) -> bool:
        return not self.grid

    def __call__(self, s, t):
        acc = 0
        for c in reversed(self.grid):
            acc = acc * s + c(t)
        return acc

    def abs_value(self, s: float, t: float) -> float:
        """Evaluation with every monomial replaced by its absolute value."""
        a_s, a_t = abs(s), abs(t)
        return sum(c.abs_bound(a_t) * a_s**j for j, c in enumerate(self.grid))

    def at_t(self, t0) -> Polynomial:
        """The specialization s -> F(s, t0)."""
        return Polynomial(tuple(c(t0) for c in self.grid))

    def coefficient(self, j: int, k: int) -> Fraction:
        """Coefficient of s**j t**k."""
        if j >= len(self.grid):
            return Fraction(0)
        return self.grid[j].coeff(k)


def divided_difference(p: Polynomial) -> DividedDifference:
    if p.degree < 1:
        raise DegreeTooLow(f"divided difference needs degree >= 1, got {p.degree}")
    n = p.degree
    grid = []
    for j in range(n):
        # coefficient of s^j: sum_{k>j} a_k t^(k-1-j)
        grid.append(Polynomial(tuple(p.coeff(j + 1 + i) for i in range(n - j))))
    return DividedDifference(p, tuple(grid))


def _dd_or_zero(p: Polynomial) -> DividedDifference:
    if p.degree < 1:
        return DividedDifference(p, ())
    return divided_difference(p)


# integer polynomial helpers for the elimination (ascending lists of ints)

def _imul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _isub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _idiv(a, b):
    if not a:
        return []
    return _int_divexact(a, b)


def _integer_grid(dd: DividedDifference):
    """Integer s-coefficient polynomials in t and the positive scale applied."""
    den = 1
    for c in dd.grid:
        for x in c.coeffs:
            den = den * x.denominator // math.gcd(den, x.denominator)
    rows = [[int(x * den) for x in c.coeffs] for c in dd.grid]
    return rows, den


def bareiss_det(m):
    """Fraction-free determinant of a square matrix over Z[t] (entries: int lists)."""
    n = len(m)
    a = [list(map(list, row)) for row in m]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return []
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = _isub(_imul(piv, a[i][j]), _imul(aik, a[k][j]))
                a[i][j] = _idiv(num, prev)
            a[i][k] = []
        prev = piv
    det = a[n - 1][n - 1]
    return det if sign > 0 else [-x for x in det]


def sylvester_matrix(F_rows, G_rows):
    """Sylvester matrix in s; F_rows/G_rows are s-coefficients ascending."""
    m, n = len(F_rows) - 1, len(G_rows) - 1
    size = m + n
    mat = []
    fdesc = list(reversed(F_rows))
    gdesc = list(reversed(G_rows))
    for i in range(n):
        mat.append([[]] * i + fdesc + [[]] * (size - i - m - 1))
    for i in range(m):
        mat.append([[]] * i + gdesc + [[]] * (size - i - n - 1))
    return mat


def sylvester_resultant(F: DividedDifference, G: DividedDifference) -> Polynomial:
    """Res_s(F, G) as an exact polynomial in t."""
    if F.is_zero() or G.is_zero():
        raise ZeroPolynomial("resultant of a zero divided difference")
    fr, fden = _integer_grid(F)
    gr, gden = _integer_grid(G)
    m, n = len(fr) - 1, len(gr) - 1
    if m == 0 and n == 0:
        return Polynomial((1,))
    if m == 0:
        det = _ipow(fr[0], n)
    elif n == 0:
        det = _ipow(gr[0], m)
    else:
        det = bareiss_det(sylvester_matrix(fr, gr))
    # Res(cF, dG) = c^n d^m Res(F, G)
    scale = Fraction(1, fden**n * gden**m)
    return Polynomial(tuple(Fraction(x) * scale for x in det))


def _ipow(a, k):
    out = [1]
    for _ in range(k):
        out = _imul(out, a)
    return out


@dataclass(frozen=True)
class DoublePoint:
    s: float
    t: float
    x: float
    y: float
    s_box: Root
    t_box: Root

    @property
    def s_exact(self) -> Fraction:
        return self.s_box.mid

    @property
    def t_exact(self) -> Fraction:
        return self.t_box.mid

    def to_json(self) -> dict:
        return {"s": self.s, "t": self.t, "x": self.x, "y": self.y}


def _positive(p: Polynomial) -> Polynomial:
    return -p if not p.is_zero() and p.leading < 0 else p


def double_points(f: Polynomial, g: Polynomial, width=DEFAULT_WIDTH) -> list[DoublePoint]:
    """Real nodes (s < t) of the plane curve (f, g), ascending in s."""
    # (+-f, +-g) share their node parameters, so the work is cached on the sign-normalized pair
    base = _double_points(_positive(f), _positive(g), Fraction(width))
    if f == _positive(f) and g == _positive(g):
        return list(base)
    return [DoublePoint(d.s, d.t, f.evalf(d.s), g.evalf(d.s), d.s_box, d.t_box) for d in base]


@functools.lru_cache(maxsize=512)
def _double_points(f: Polynomial, g: Polynomial, width: Fraction) -> tuple:
    F, G = _dd_or_zero(f), _dd_or_zero(g)
    if F.is_zero() or G.is_zero():
        raise DegenerateProjection("a constant coordinate makes every pair a double point")
    if F.degree_s == 0 or G.degree_s == 0:
        return []  # a linear coordinate is injective
    gamma = sylvester_resultant(F, G)
    if gamma.is_zero():
        raise DegenerateProjection("resultant vanishes identically: (f, g) is not a birational projection")
    if gamma.degree == 0:
        return []
    cusps = None
    found = []
    for troot in real_roots(gamma, width):
        t0 = troot.mid
        Fs = F.at_t(t0)
        if Fs.is_zero():
            raise NonTransverseCrossing(f"F(s, {float(t0)}) vanishes identically")
        for sroot in real_roots(Fs, width):
            s0 = sroot.mid
            sf, tf = float(s0), float(t0)
            resid = abs(float(G(s0, t0)))
            if resid > RESIDUAL_TOL * max(1.0, G.abs_value(sf, tf)):
                continue
            if abs(sf - tf) < MIN_SEPARATION:
                if cusps is None:
                    cusps = _cusp_parameters(f, g)
                if any(abs(c - tf) < MIN_SEPARATION for c in cusps):
                    continue
                raise NonTransverseCrossing(f"node parameters {sf} and {tf} nearly coincide")
            if sf < tf:
                found.append(DoublePoint(sf, tf, f.evalf(sf), g.evalf(sf), sroot, troot))
    found.sort(key=lambda d: d.s)
    _check_regular(f, g, found)
    return tuple(found)


def _cusp_parameters(f: Polynomial, g: Polynomial) -> list[float]:
    c = gcd(f.derivative(), g.derivative())
    if c.degree < 1:
        return []
    return real_roots(c).values


def _check_regular(f, g, nodes):
    params = sorted(v for d in nodes for v in (d.s, d.t))
    for a, b in zip(params, params[1:]):
        if b - a < MIN_SEPARATION:
            raise NonTransverseCrossing(f"crossing parameters {a} and {b} closer than {MIN_SEPARATION}")
    df, dg = f.derivative(), g.derivative()
    for d in nodes:
        fs, ft = df(d.s_exact), df(d.t_exact)
        gs, gt = dg(d.s_exact), dg(d.t_exact)
        det = float(fs * gt - ft * gs)
        scale = float(abs(fs * gt) + abs(ft * gs))
        if abs(det) <= TRANSVERSAL_TOL * max(scale, 1e-300):
            raise NonTransverseCrossing(f"tangential node at (s, t) = ({d.s}, {d.t})")
