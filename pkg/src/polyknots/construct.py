"""Height polynomials for prescribed crossing data, the degree-6 obstruction test
and lifting between degree strata."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

import numpy as np

from .diagram import CrossingPattern, KnotDiagram, count_changes, crossing_pattern, extract_diagram, visit_sequence
from .embedding import PolyKnot, in_pd_tilde, is_embedding
from .errors import (
    CannotCertify,
    DegenerateProjection,
    InfeasibleRuns,
    LiftFailed,
    NonTransverseCrossing,
    NoSolution,
    UnresolvedCrossing,
    VerificationFailed,
    WrongShape,
)
from .poly import Polynomial
from .resultant import double_points

# working widths for the obstruction verdict (about 1e-30 and 1e-20)
FINE_WIDTH = Fraction(1, 2**100)
COARSE_WIDTH = Fraction(1, 2**66)
DET_RELATIVE_TOL = 1e-12
RANK_RELATIVE_TOL = 1e-10
MIN_EPSILON = 1e-12

OBSTRUCTION_BASIS = (6, 3, 2, 1)


def _nodes(f: Polynomial, g: Polynomial, width=FINE_WIDTH):
    return double_points(f, g, width)


def _check_length(nodes, pattern: CrossingPattern):
    if len(pattern) != len(nodes):
        raise ValueError(f"pattern has {len(pattern)} entries but the projection has {len(nodes)} crossings")


# interval construction

def _simple_between(lo: Fraction, hi: Fraction) -> Fraction:
    """A rational of small denominator in the open interval (lo, hi)."""
    q = 1
    while q <= 1 << 20:
        p = ceil(lo * q)
        if Fraction(p, q) == lo:
            p += 1
        if Fraction(p, q) < hi:
            return Fraction(p, q)
        q *= 2
    return (lo + hi) / 2


def height_by_intervals(f: Polynomial, g: Polynomial, pattern: CrossingPattern, nodes=None) -> Polynomial:
    """+-prod(t - a_i): positive on over runs, negative on under runs."""
    if nodes is None:
        nodes = _nodes(f, g)
    _check_length(nodes, pattern)
    marks = []
    for d, e in zip(nodes, pattern.e):
        under_first = e > 0
        marks.append((d.s_exact, "U" if under_first else "O"))
        marks.append((d.t_exact, "O" if under_first else "U"))
    marks.sort()
    for (x, a), (y, b) in zip(marks, marks[1:]):
        if x == y and a != b:
            raise InfeasibleRuns(f"parameter {float(x)} is required to be both over and under")
    if not marks:
        return Polynomial((1,))
    seps = []
    for (x, a), (y, b) in zip(marks, marks[1:]):
        if a != b:
            mid = (x + y) / 2
            quarter = (y - x) / 4
            seps.append(_simple_between(mid - quarter, mid + quarter))
    h = Polynomial.from_roots(seps)
    # the last run sits right of every separator, where the product is positive
    return h if marks[-1][1] == "O" else -h


# linear-system construction

@dataclass(frozen=True)
class HeightSystem:
    matrix: tuple  # rows of Fractions, one per crossing
    rhs: tuple
    basis: tuple

    @property
    def shape(self) -> tuple:
        return (len(self.matrix), len(self.basis))

    def augmented(self) -> list:
        return [list(row) + [b] for row, b in zip(self.matrix, self.rhs)]

    def as_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.matrix], dtype=float)


def height_system(nodes, pattern: CrossingPattern, basis) -> HeightSystem:
    rows = []
    for d in nodes:
        s, t = d.s_exact, d.t_exact
        rows.append(tuple(t**k - s**k for k in basis))
    return HeightSystem(tuple(rows), pattern.rhs, tuple(basis))


def exact_rank(rows) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    rank, ncols = 0, len(m[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            if m[i][col]:
                factor = m[i][col] / p
                m[i] = [a - factor * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def exact_det(rows) -> Fraction:
    m = [list(map(Fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det *= p
        for i in range(col + 1, n):
            if m[i][col]:
                factor = m[i][col] / p
                m[i] = [a - factor * b for a, b in zip(m[i], m[col])]
    return det


def numeric_rank(rows, tol: float = RANK_RELATIVE_TOL) -> int:
    """SVD rank after scaling every column to unit norm."""
    a = np.array([[float(x) for x in r] for r in rows], dtype=float)
    if a.size == 0:
        return 0
    norms = np.linalg.norm(a, axis=0)
    norms[norms == 0] = 1.0
    sv = np.linalg.svd(a / norms, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def default_basis(f: Polynomial) -> tuple:
    return tuple(range(f.degree + 2, 0, -1))


def realizes(k: PolyKnot, pattern: CrossingPattern) -> bool:
    try:
        if not is_embedding(k):
            return False
        dg = extract_diagram(k)
    except (DegenerateProjection, NonTransverseCrossing, UnresolvedCrossing):
        return False
    return len(dg) == len(pattern) and crossing_pattern(dg).e == pattern.e


def height_by_linear_system(f: Polynomial, g: Polynomial, pattern: CrossingPattern, basis=None, nodes=None) -> Polynomial:
    """Minimal-norm h = sum c_k t^k with h(t_i) - h(s_i) = e_i r_i at every crossing."""
    if nodes is None:
        nodes = _nodes(f, g)
    _check_length(nodes, pattern)
    if basis is None:
        basis = default_basis(f)
    system = height_system(nodes, pattern, basis)
    rank = exact_rank(system.matrix)
    aug_rank = exact_rank(system.augmented())
    if aug_rank > rank:
        raise NoSolution(rank, aug_rank)
    a = system.as_float()
    b = np.array([float(x) for x in system.rhs])
    if a.size:
        coeffs, *_ = np.linalg.lstsq(a, b, rcond=None)
    else:
        coeffs = np.zeros(len(basis))
    top = max(basis, default=0)
    dense = [Fraction(0)] * (top + 1)
    for k, c in zip(basis, coeffs):
        dense[k] = Fraction(float(c))
    h = Polynomial(tuple(dense))
    if not realizes(PolyKnot(f, g, h), pattern):
        raise VerificationFailed("the solved height does not realize the requested pattern")
    return h


# degree-6 obstruction

@dataclass(frozen=True)
class ObstructionResult:
    crossings: int
    obstructed: bool
    ranks: tuple  # (rank of the coefficient matrix, rank of the augmented matrix)
    det_if_square: Fraction | None = None
    minors: tuple = ()  # det(A_j), A with row j deleted
    expansion_holds: bool | None = None
    coarse_det: Fraction | None = None

    def to_json(self) -> dict:
        out = {"crossings": self.crossings, "obstructed": self.obstructed, "rank": list(self.ranks)}
        if self.det_if_square is not None:
            out["det"] = "nonzero" if self.det_if_square != 0 else "zero"
            out["det_value"] = float(self.det_if_square)
            out["expansion_holds"] = self.expansion_holds
        return out


def _obstruction_matrices(f, g, pattern, width):
    nodes = _nodes(f, g, width)
    if len(nodes) not in (5, 6):
        raise WrongShape(f"expected 5 or 6 crossings, found {len(nodes)}")
    _check_length(nodes, pattern)
    return height_system(nodes, pattern, OBSTRUCTION_BASIS)


def _square_case(system: HeightSystem):
    aug = system.augmented()
    det = exact_det(aug)
    n = len(aug)
    minors = []
    for j in range(n):
        minors.append(exact_det([row for i, row in enumerate(system.matrix) if i != j]))
    # cofactor expansion along the right-hand column (0-based row j, column n-1)
    expansion = sum((-1) ** (j + n - 1) * system.rhs[j] * minors[j] for j in range(n))
    return det, tuple(minors), expansion == det


def obstruction_deg6(f: Polynomial, g: Polynomial, pattern: CrossingPattern) -> ObstructionResult:
    if f.degree != 4 or g.degree != 5:
        raise WrongShape(f"need degrees (4, 5), got ({f.degree}, {g.degree})")
    fine = _obstruction_matrices(f, g, pattern, FINE_WIDTH)
    coarse = _obstruction_matrices(f, g, pattern, COARSE_WIDTH)
    k = len(fine.matrix)
    if k == 5:
        det, minors, holds = _square_case(fine)
        det_c, minors_c, _ = _square_case(coarse)

        def clear(d, ms):
            scale = sum(abs(float(r * m)) for r, m in zip(pattern.r_slacks, ms))
            return abs(float(d)) > DET_RELATIVE_TOL * scale and scale > 0

        obstructed = clear(det, minors) and clear(det_c, minors_c) and (det > 0) == (det_c > 0)
        ranks = (numeric_rank(fine.matrix), numeric_rank(fine.augmented()))
        return ObstructionResult(5, obstructed, ranks, det, minors, holds, det_c)
    ranks = (numeric_rank(fine.matrix), numeric_rank(fine.augmented()))
    ranks_c = (numeric_rank(coarse.matrix), numeric_rank(coarse.augmented()))
    obstructed = ranks[1] == 5 and ranks_c[1] == 5
    return ObstructionResult(6, obstructed, ranks)


def consistent_pattern(f: Polynomial, g: Polynomial, coeffs, basis=OBSTRUCTION_BASIS) -> CrossingPattern:
    """Pattern and slacks realized by the height sum c_k t^k, so the system is solvable."""
    nodes = _nodes(f, g)
    rhs = []
    for d in nodes:
        s, t = d.s_exact, d.t_exact
        rhs.append(sum(Fraction(c) * (t**k - s**k) for c, k in zip(coeffs, basis)))
    if any(x == 0 for x in rhs):
        raise ValueError("the height does not separate every crossing")
    return CrossingPattern(tuple(1 if x > 0 else -1 for x in rhs), tuple(abs(x) for x in rhs))


# lifting between strata

@dataclass(frozen=True)
class LiftResult:
    knot: PolyKnot
    epsilon: Fraction
    extra_crossings: int  # crossings of the lift outside the original parameter window

    @property
    def exact_gauss(self) -> bool:
        return self.extra_crossings == 0


def _window(dg: KnotDiagram) -> tuple[float, float]:
    params = [p for c in dg.crossings for p in (c.s, c.t)]
    if not params:
        return (-1.0, 1.0)
    lo, hi = min(params), max(params)
    w = max(1.0, (hi - lo) / 2)
    return (lo - w, hi + w)


def restricted_key(dg: KnotDiagram, lo: float, hi: float) -> tuple:
    """Gauss key of the crossings with both parameters in [lo, hi], relabeled by first visit."""
    inner = sorted((c for c in dg.crossings if lo <= c.s <= hi and lo <= c.t <= hi), key=lambda c: c.s)
    relabel = {c.index: i for i, c in enumerate(inner, start=1)}
    return tuple((relabel[v.crossing], v.over, v.sign) for v in dg.visits if v.crossing in relabel)


def lift_stratum(k: PolyKnot, n: int, start=None) -> LiftResult:
    """(eps t^(n-2) + f, eps t^(n-1) + g, eps t^n + h), topologically equivalent to k.

    eps is halved from start (default: a power of two below the smallest leading
    coefficient over the window radius) until the lift is an embedding whose crossings inside the
    original parameter window reproduce k's Gauss code and whose Jones polynomial
    matches k's.  Crossings created near |t| ~ 1/eps are reported, not rejected.
    """
    from .invariants import jones

    m = in_pd_tilde(k)
    if m is None:
        raise ValueError(f"degree sequence {k.degree_sequence} is not of the form (m-2, m-1, m)")
    if n <= m:
        raise ValueError(f"target degree {n} must exceed {m}")
    original = extract_diagram(k)
    lo, hi = _window(original)
    target = restricted_key(original, lo, hi)
    v0 = jones(original)
    if start is None:
        lead = min(abs(p.leading) for p in k.components)
        scale = lead / Fraction(max(1.0, abs(lo), abs(hi)))
        eps = Fraction(1)
        while eps > scale:
            eps /= 2
    else:
        eps = Fraction(start)
    while eps >= MIN_EPSILON:
        lifted = PolyKnot(
            k.f + Polynomial.monomial(n - 2, eps),
            k.g + Polynomial.monomial(n - 1, eps),
            k.h + Polynomial.monomial(n, eps),
            k.name,
        )
        try:
            if is_embedding(lifted):
                dg = extract_diagram(lifted)
                if restricted_key(dg, lo, hi) == target and jones(dg) == v0:
                    return LiftResult(lifted, eps, len(dg) - len(original))
        except (CannotCertify, DegenerateProjection, NonTransverseCrossing, UnresolvedCrossing):
            pass
        eps /= 2
    raise LiftFailed(f"no eps >= {MIN_EPSILON} preserves the diagram of {k.name or 'the knot'}")


def pattern_changes(nodes, pattern: CrossingPattern) -> int:
    return count_changes(visit_sequence(nodes, pattern.e))


__all__ = [
    "HeightSystem",
    "LiftResult",
    "ObstructionResult",
    "consistent_pattern",
    "exact_det",
    "exact_rank",
    "height_by_intervals",
    "height_by_linear_system",
    "height_system",
    "lift_stratum",
    "numeric_rank",
    "obstruction_deg6",
    "pattern_changes",
    "realizes",
    "default_basis",
]
