"""Exact Hilbert-Kunz density ``f`` and beta-density ``g`` of a toric pair.

``f(lam)`` is the (d-1)-volume of the height-``lam`` slice of the Eto region
and ``g(lam)`` is its outer boundary measure minus half of its whole boundary
measure.  Both are piecewise polynomial; :func:`piecewise_fit` recovers the
pieces by exact interpolation between candidate breakpoints and merges
neighbours that agree.  Integrating gives ``e_HK`` and ``beta``.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .polytope import product
from .region import (
    ToricPair,
    boundary_measures,
    breakpoint_superset,
    build_pair,
    slice_region,
    support_end,
)

Poly = tuple[Fraction, ...]  # ascending coefficients, no trailing zeros


class UnsupportedDimensionError(ValueError):
    pass


class MissingBreakpointError(RuntimeError):
    pass


# ------------------------------------------------------------------ polynomials
def poly_trim(p: Sequence) -> Poly:
    p = [Fraction(x) for x in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_eval(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def poly_sub(p: Poly, q: Poly) -> Poly:
    return poly_add(p, poly_neg(q))


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_antiderivative(p: Poly) -> Poly:
    return poly_trim([Fraction(0)] + [c / (i + 1) for i, c in enumerate(p)])


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Poly:
    """Lagrange interpolation with exact rational coefficients."""
    result: Poly = ()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis: Poly = (Fraction(1),)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = poly_mul(basis, (-xj, Fraction(1)))
                denom *= xi - xj
        result = poly_add(result, tuple(c * yi / denom for c in basis))
    return result


def poly_str(p: Poly, var: str = "x") -> str:
    if not p:
        return "0"
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        coef = str(c)
        terms.append(coef if not mono else f"{coef}*{mono}")
    return " + ".join(terms)


# ------------------------------------------------------------------ piecewise
@dataclass(frozen=True)
class PiecewisePolynomial:
    """Polynomial pieces on ``[b_i, b_{i+1})``; zero at and beyond ``b_k``."""

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.pieces) != max(len(self.breakpoints) - 1, 0):
            raise ValueError("need one piece per interval")

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        b = self.breakpoints
        if not b or x < b[0] or x >= b[-1]:
            return Fraction(0)
        i = bisect.bisect_right(b, x) - 1
        return poly_eval(self.pieces[i], x)

    def piece_at(self, x) -> Poly:
        x = Fraction(x)
        b = self.breakpoints
        if not b or x < b[0] or x >= b[-1]:
            return ()
        return self.pieces[bisect.bisect_right(b, x) - 1]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(p) - 1 for p in self.pieces)

    def merged(self) -> "PiecewisePolynomial":
        """Drop breakpoints between equal neighbouring pieces and zero tails."""
        bs = list(self.breakpoints)
        ps = list(self.pieces)
        while ps and ps[-1] == ():
            ps.pop()
            bs.pop()
        out_b, out_p = bs[:1], []
        for i, p in enumerate(ps):
            if out_p and out_p[-1] == p:
                out_b[-1] = bs[i + 1]
            else:
                out_p.append(p)
                out_b.append(bs[i + 1])
        if not out_p:
            return PiecewisePolynomial((), ())
        return PiecewisePolynomial(tuple(out_b), tuple(out_p))

    def refine(self, breakpoints: Sequence[Fraction]) -> "PiecewisePolynomial":
        bs = sorted(set(self.breakpoints) | set(breakpoints))
        ps = tuple(self.piece_at(a) for a in bs[:-1])
        return PiecewisePolynomial(tuple(bs), ps)


def integrate(pp: PiecewisePolynomial) -> Fraction:
    total = Fraction(0)
    for (a, b), p in zip(zip(pp.breakpoints, pp.breakpoints[1:]), pp.pieces):
        F = poly_antiderivative(p)
        total += poly_eval(F, b) - poly_eval(F, a)
    return total


def combine(parts: Sequence[PiecewisePolynomial | Poly],
            fn: Callable[..., Poly], tail_end: Fraction | None = None) -> PiecewisePolynomial:
    """Apply ``fn`` piece by piece on the common refinement of the inputs.

    Plain polynomials are global.  The result must vanish beyond the last
    breakpoint of the piecewise inputs.
    """
    bs = sorted({b for p in parts if isinstance(p, PiecewisePolynomial) for b in p.breakpoints})
    if not bs:
        return PiecewisePolynomial((), ())

    def at(p, x):
        return p.piece_at(x) if isinstance(p, PiecewisePolynomial) else p

    pieces = tuple(fn(*(at(p, a) for p in parts)) for a in bs[:-1])
    tail = fn(*(at(p, bs[-1]) for p in parts))
    if tail != ():
        raise ValueError("combination does not vanish past the support")
    return PiecewisePolynomial(tuple(bs), pieces).merged()


# ------------------------------------------------------------------ densities
def _check_dim(pair: ToricPair):
    if pair.d > 4 or pair.d < 2:
        raise UnsupportedDimensionError(f"exact slicing needs 2 <= d <= 4, got d={pair.d}")


def f_exact(pair: ToricPair, lam) -> Fraction:
    """Hilbert-Kunz density: (d-1)-volume of the slice at height ``lam``."""
    _check_dim(pair)
    region = slice_region(pair, lam)
    return sum((c.volume() for c in region.cells), Fraction(0))


def g_exact(pair: ToricPair, lam) -> Fraction:
    """beta-density ``outer - (outer + inner) / 2`` of the slice boundary."""
    _check_dim(pair)
    outer, inner = boundary_measures(slice_region(pair, lam))
    return (outer - inner) / 2


# Interior nodes as fractions of an interval; denominators avoid small primes.
_FIT_NODES = (Fraction(13, 101), Fraction(31, 101), Fraction(53, 101), Fraction(71, 101),
              Fraction(89, 101), Fraction(7, 103))
_CHECK_NODES = (Fraction(23, 107), Fraction(97, 109))


def _fit_interval(fn, a: Fraction, b: Fraction, degree: int) -> Poly | None:
    xs = [a + (b - a) * t for t in _FIT_NODES[: degree + 1]]
    poly = interpolate(xs, [fn(x) for x in xs])
    for t in _CHECK_NODES:
        x = a + (b - a) * t
        if poly_eval(poly, x) != fn(x):
            return None
    return poly


def _fit(pair: ToricPair, fn, degree: int, candidates: Sequence[Fraction]) -> PiecewisePolynomial:
    bs = list(candidates)
    pieces = []
    out_b = [bs[0]]
    for a, b in zip(bs, bs[1:]):
        poly = _fit_interval(fn, a, b, degree)
        if poly is not None:
            pieces.append(poly)
            out_b.append(b)
            continue
        mid = (a + b) / 2
        left = _fit_interval(fn, a, mid, degree)
        right = _fit_interval(fn, mid, b, degree)
        if left is None or right is None:
            raise MissingBreakpointError(f"no polynomial fits on [{a}, {b})")
        pieces.extend([left, right])
        out_b.extend([mid, b])
    return PiecewisePolynomial(tuple(out_b), tuple(pieces)).merged()


def candidate_breakpoints(pair: ToricPair) -> list[Fraction]:
    """Arrangement heights up to the end of the support."""
    cache = pair.__dict__.get("_candidates")
    if cache is None:
        cands = breakpoint_superset(pair)
        end = support_end(pair, cands)
        cache = [c for c in cands if c <= end]
        pair.__dict__["_candidates"] = cache
    return cache


def piecewise_fit(pair: ToricPair, which: str) -> PiecewisePolynomial:
    """Exact piecewise form of ``f`` (``which='f'``) or ``g`` (``which='g'``)."""
    _check_dim(pair)
    cands = candidate_breakpoints(pair)
    if which == "f":
        return _fit(pair, lambda x: f_exact(pair, x), pair.d - 1, cands)
    if which == "g":
        return _fit(pair, lambda x: g_exact(pair, x), pair.d - 2, cands)
    raise ValueError("which must be 'f' or 'g'")


@dataclass(frozen=True)
class HilbertDensity:
    """Leading Hilbert polynomial data and the densities F, G built from it."""

    d: int
    e0: Fraction
    e1: Fraction

    @property
    def F(self) -> Poly:
        return poly_trim([0] * (self.d - 1) + [self.e0 / factorial(self.d - 1)])

    @property
    def G(self) -> Poly:
        return poly_trim([0] * (self.d - 2) + [self.e1])


def hilbert_density(pair: ToricPair) -> HilbertDensity:
    """``e0 = (d-1)! vol(P)`` and ``e1 = (1/2) sum of facet lattice volumes``."""
    P = pair.P
    e0 = P.volume() * factorial(pair.d - 1)
    e1 = sum((F.relative_volume() for F in P.facet_polytopes()), Fraction(0)) / 2
    return HilbertDensity(pair.d, e0, e1)


@dataclass(frozen=True)
class DensityReport:
    f: PiecewisePolynomial
    g: PiecewisePolynomial
    e_hk: Fraction
    beta: Fraction
    breakpoints: tuple[Fraction, ...]
    discontinuities: tuple[Fraction, ...] = field(default=())

    @property
    def degrees(self) -> dict[str, tuple[int, ...]]:
        return {"f": self.f.degrees, "g": self.g.degrees}


def density_report(pair: ToricPair) -> DensityReport:
    f = piecewise_fit(pair, "f")
    g = piecewise_fit(pair, "g")
    bps = tuple(sorted(set(f.breakpoints) | set(g.breakpoints)))
    jumps = []
    for i, b in enumerate(g.breakpoints):
        right = poly_eval(g.pieces[i], b) if i < len(g.pieces) else Fraction(0)
        left = poly_eval(g.pieces[i - 1], b) if i > 0 else right
        if g_exact(pair, b) != right or left != right:
            jumps.append(b)
    return DensityReport(f, g, integrate(f), integrate(g), bps, tuple(jumps))


def product_pair(A: ToricPair, B: ToricPair) -> ToricPair:
    """Pair of the Segre product: the polytope ``P_A x P_B``."""
    return build_pair(product(A.P, B.P), name=f"{A.name}#{B.name}" if A.name or B.name else "")


def segre_g(fR: PiecewisePolynomial, gR: PiecewisePolynomial, HR: HilbertDensity,
            fS: PiecewisePolynomial, gS: PiecewisePolynomial, HS: HilbertDensity) -> PiecewisePolynomial:
    """beta-density of a Segre product from the factors' densities.

    ``g = G_R F_S + G_S F_R - (G_R - g_R)(F_S - f_S) - (G_S - g_S)(F_R - f_R)``.
    """
    if HR.d < 2 or HS.d < 2:
        raise ValueError("Segre factors need d >= 2")

    def fn(fr, gr, fs, gs):
        FR, GR, FS, GS = HR.F, HR.G, HS.F, HS.G
        out = poly_add(poly_mul(GR, FS), poly_mul(GS, FR))
        out = poly_sub(out, poly_mul(poly_sub(GR, gr), poly_sub(FS, fs)))
        out = poly_sub(out, poly_mul(poly_sub(GS, gs), poly_sub(FR, fr)))
        return out

    return combine([fR, gR, fS, gS], fn)
