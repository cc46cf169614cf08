"""Exact univariate polynomials over Q and real root isolation.

Coefficients are stored ascending (index i is the coefficient of t**i) as
``fractions.Fraction``.  Root isolation works on the primitive integer form
of the square-free part with a Sturm sequence; refinement is bisection at
dyadic points, so every isolating interval has exact rational endpoints.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import NotDivisible, ParseError, ZeroPolynomial


@dataclass
class Settings:
    root_tolerance: float = 1e-12


settings = Settings()


class _MinusInfinity:
    """Degree of the zero polynomial. Compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf-degree")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "MINUS_INFINITY"


MINUS_INFINITY = _MinusInfinity()


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


@dataclass(frozen=True, eq=True)
class Polynomial:
    coeffs: tuple = ()

    def __post_init__(self):
        c = [_frac(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # construction helpers
    @classmethod
    def t(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls((0,) * k + (c,))

    @classmethod
    def from_roots(cls, roots, lead=1) -> "Polynomial":
        p = cls((lead,))
        for r in roots:
            p = p * cls((-_frac(r), 1))
        return p

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse(text)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INFINITY

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = Polynomial((1,)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        c = _frac(c)
        return Polynomial(tuple(c * a for a in self.coeffs))

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        q = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(tuple(q)), Polynomial(tuple(rem[: len(other.coeffs) - 1]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise NotDivisible(f"{other} does not divide {self}")
        return q

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            return self.exact_div(other)
        return self.scale(1 / _frac(other))

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def compose(self, inner: "Polynomial") -> "Polynomial":
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def gcd(self, other: "Polynomial") -> "Polynomial":
        return gcd(self, other)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    # evaluation
    def __call__(self, x):
        if isinstance(x, float):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * x + float(c)
            return acc
        if isinstance(x, Polynomial):
            return self.compose(x)
        x = _frac(x) if not isinstance(x, (int, Fraction)) else x
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evalf(self, x: float) -> float:
        return self(float(x))

    def abs_bound(self, x: float) -> float:
        """Sum of |c_i| |x|^i: the natural scale for residuals at x."""
        ax = abs(float(x))
        return sum(abs(float(c)) * ax**i for i, c in enumerate(self.coeffs))

    # text forms
    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        return ",".join(_fmt_rational(c) for c in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{_fmt_rational(mag)}*{mono}"
            else:
                body = _fmt_rational(mag)
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self})"

    def __float_coeffs__(self):
        return [float(c) for c in self.coeffs]

    def float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd over Q (zero if both are zero)."""
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    g = _int_gcd(primitive_int(p), primitive_int(q))
    return Polynomial(tuple(g)).monic()


# integer polynomial kernels (lists of ints, ascending, no trailing zeros)

def primitive_int(p: Polynomial) -> list[int]:
    """Positive rational multiple of p with coprime integer coefficients."""
    if p.is_zero():
        return []
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    return _make_primitive(ints)


def _make_primitive(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            return a
    if g <= 1:
        return a
    return [c // g for c in a]


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _int_deriv(a: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(a) if i]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Remainder of lc(b)**(deg a - deg b + 1) * a by b, with that factor made positive."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b) + 1
    if delta <= 0:
        return r
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        r = [x * lb for x in r]
        if c:
            off = k - db
            for j, bj in enumerate(b):
                r[off + j] -= c * bj
        r.pop()
    r = _trim(r)
    if lb < 0 and delta % 2 == 1:
        r = [-x for x in r]
    return r


def _int_gcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _make_primitive(list(a)), _make_primitive(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_make_primitive(r) if r else [])
    if a and a[-1] < 0:
        a = [-x for x in a]
    return a


def _int_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    lb = b[-1]
    for k in range(len(q) - 1, -1, -1):
        c, rem = divmod(a[k + len(b) - 1], lb)
        if rem:
            raise NotDivisible("integer polynomial division is not exact")
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise NotDivisible("integer polynomial division is not exact")
    return q


def _sign_at(a: list[int], x: Fraction) -> int:
    """Sign of the integer polynomial a at a rational point (exact)."""
    num, den = x.numerator, x.denominator
    if not a:
        return 0
    acc = a[-1]
    dpow = 1
    for c in reversed(a[:-1]):
        dpow *= den
        acc = acc * num + c * dpow
    return (acc > 0) - (acc < 0)


def _sign_at_inf(a: list[int], positive: bool) -> int:
    if not a:
        return 0
    s = 1 if a[-1] > 0 else -1
    if not positive and (len(a) - 1) % 2:
        s = -s
    return s


def sturm_sequence(a: list[int]) -> list[list[int]]:
    seq = [a, _make_primitive(_int_deriv(a))]
    while len(seq[-1]) > 1:
        r = _prem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(_make_primitive([-x for x in r]))
    return seq


def _variations(signs: Iterable[int]) -> int:
    last, n = 0, 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            n += 1
        last = s
    return n


class _Sturm:
    def __init__(self, a: list[int]):
        self.seq = sturm_sequence(a)
        self._cache: dict = {}

    def v(self, x) -> int:
        if x in self._cache:
            return self._cache[x]
        if x == "+inf":
            val = _variations(_sign_at_inf(q, True) for q in self.seq)
        elif x == "-inf":
            val = _variations(_sign_at_inf(q, False) for q in self.seq)
        else:
            val = _variations(_sign_at(q, x) for q in self.seq)
        self._cache[x] = val
        return val

    def count(self, lo, hi) -> int:
        """Distinct roots in (lo, hi]."""
        return self.v(lo) - self.v(hi)

    def total(self) -> int:
        return self.v("-inf") - self.v("+inf")


def sturm_count(p: Polynomial, lo=None, hi=None) -> int:
    """Number of distinct real roots of p in (lo, hi] (whole line by default)."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no finite root count")
    sf = squarefree_part(p)
    st = _Sturm(primitive_int(sf))
    lo = "-inf" if lo is None else _frac(lo)
    hi = "+inf" if hi is None else _frac(hi)
    return st.count(lo, hi)


def squarefree_part(p: Polynomial) -> Polynomial:
    if p.degree <= 0:
        return p.monic()
    a = primitive_int(p)
    g = _int_gcd(a, _int_deriv(a))
    if len(g) > 1:
        a = _make_primitive(_int_divexact(a, g))
    return Polynomial(tuple(a)).monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: p = c * prod(q_i ** i), q_i square-free and pairwise coprime."""
    a = primitive_int(p)
    if len(a) <= 1:
        return []
    out = []
    da = _int_deriv(a)
    b = _int_gcd(a, da)
    if len(b) == 1:
        return [(Polynomial(tuple(a)).monic(), 1)]
    c = _int_divexact(a, b) if len(b) > 1 else a
    d = _int_divexact(da, b) if len(b) > 1 else da
    d = _sub(d, _int_deriv(c))
    i = 1
    while len(c) > 1:
        g = _int_gcd(c, d) if d else _make_primitive(list(c))
        if len(g) > 1:
            out.append((Polynomial(tuple(g)).monic(), i))
        c = _int_divexact(c, g)
        d = _int_divexact(d, g) if d else []
        d = _sub(d, _int_deriv(c))
        i += 1
    return out


def _sub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


# real roots

def _dyadic_mid(lo: Fraction, hi: Fraction) -> Fraction:
    return (lo + hi) / 2


@dataclass(frozen=True)
class Root:
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class RootList:
    """Ascending isolated real roots of ``poly``, refined in ``squarefree``."""

    roots: tuple
    poly: Polynomial = field(repr=False, default=None)
    squarefree: tuple = field(repr=False, default=())

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    @property
    def values(self) -> list[float]:
        return [r.value for r in self.roots]

    @property
    def multiplicities(self) -> list[int]:
        return [r.multiplicity for r in self.roots]

    def refined(self, width) -> "RootList":
        return RootList(
            tuple(refine_root(self.squarefree, r, width) for r in self.roots),
            self.poly,
            self.squarefree,
        )


def refine_root(sq: Sequence[int], root: Root, width) -> Root:
    """Bisect an isolating interval of a simple root of the integer polynomial sq."""
    width = _frac(width)
    lo, hi = root.lo, root.hi
    if lo == hi:
        return root
    s_hi = _sign_at(sq, hi)
    if s_hi == 0:
        return Root(hi, hi, root.multiplicity)
    while hi - lo > width:
        mid = _dyadic_mid(lo, hi)
        s = _sign_at(sq, mid)
        if s == 0:
            return Root(mid, mid, root.multiplicity)
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return Root(lo, hi, root.multiplicity)


def _cauchy_bound(a: list[int]) -> Fraction:
    lead = abs(a[-1])
    m = max((abs(c) for c in a[:-1]), default=0)
    bound = 1 + Fraction(m, lead)
    b = Fraction(1)
    while b < bound:
        b *= 2
    return b


def isolate(a: list[int]) -> list[tuple[Fraction, Fraction]]:
    """Isolating half-open intervals (lo, hi] for the distinct real roots of square-free a."""
    if len(a) <= 1:
        return []
    st = _Sturm(a)
    b = _cauchy_bound(a)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = st.count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = _dyadic_mid(lo, hi)
        stack.append((mid, hi))
        stack.append((lo, mid))
    out.sort()
    return out


def real_roots(p: Polynomial, refine_to: float | None = None) -> RootList:
    """All real roots of p, isolated exactly and refined to interval width refine_to."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has every real number as a root")
    if refine_to is None:
        refine_to = settings.root_tolerance
    if p.degree == 0:
        return RootList((), p, ())
    parts = squarefree_decomposition(p)
    sf = Polynomial((1,))
    for q, _ in parts:
        sf = sf * q
    sq = primitive_int(sf)
    roots = []
    for lo, hi in isolate(sq):
        r = refine_root(sq, Root(lo, hi), refine_to)
        mult = 1
        if len(parts) > 1:
            mult = _multiplicity(parts, r, sq)
        roots.append(Root(r.lo, r.hi, mult))
    return RootList(tuple(roots), p, tuple(sq))


def _multiplicity(parts, r: Root, sq) -> int:
    for q, i in parts:
        qi = primitive_int(q)
        if r.lo == r.hi:
            if _sign_at(qi, r.lo) == 0:
                return i
            continue
        if _Sturm(qi).count(r.lo, r.hi) == 1:
            return i
    raise AssertionError("root not attributed to any square-free factor")


# parsing

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)([eE][-+]?\d+)?|(\*\*|[-+*/^(),])|([A-Za-z]))")


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.replace("−", "-")
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
            num, exp, op, name = m.groups()
            if num is not None:
                self.tokens.append(("num", Fraction(num + (exp or ""))))
            elif op is not None:
                self.tokens.append(("op", "^" if op == "**" else op))
            else:
                if name != "t":
                    raise ParseError(f"unknown variable {name!r}; polynomials are in t")
                self.tokens.append(("var", "t"))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}")

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                q = self.unary()
                if val == "*":
                    p = p * q
                else:
                    if q.degree == 0:
                        p = p.scale(1 / q.leading)
                    else:
                        p = p.exact_div(q)
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                p = p * self.power()
            else:
                return p

    def unary(self) -> Polynomial:
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ParseError("exponent must be a non-negative integer")
            return base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return Polynomial((val,))
        if kind == "var":
            return Polynomial.t()
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {val!r}")


def parse(text: str) -> Polynomial:
    """Parse either the comma form "0,-10,0,0,0,1" or a human expression like "t^5 - 10*t"."""
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty polynomial text")
    if "," in text:
        items = [s.strip() for s in text.split(",")]
        try:
            return Polynomial(tuple(Fraction(s.replace("−", "-")) for s in items))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient list {text!r}") from exc
    p = _Parser(text)
    out = p.expr()
    if p.i != len(p.tokens):
        raise ParseError(f"trailing input in {text!r}")
    return out


T = Polynomial.t()
