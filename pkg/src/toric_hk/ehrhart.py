"""Ehrhart quasi-polynomials and two-polytope Minkowski counts.

Quasi-polynomials are recovered by exact interpolation on each residue class
and then verified on extra dilates.  The chamber-line machinery describes where
``#((r1 P1 + r2 P2) ∩ Z^d)`` can jump as a function of ``(r1, r2)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Iterable, Sequence

from .density import Poly, interpolate, poly_eval
from .linalg import hermite_normal_form, primitive, solve
from .polytope import (
    HalfSpace,
    Polytope,
    count_dilate,
    lattice_points,
    minkowski_sum,
    vertex_enumeration,
)


class PeriodTooSmallError(RuntimeError):
    pass


class InsufficientSamplesError(ValueError):
    pass


@dataclass(frozen=True)
class QuasiPolynomial:
    """``i(n) = sum_k C_k(n) n^k`` with coefficients periodic in ``n``.

    Attributes:
      degree: polynomial degree (dimension of the polytope).
      period: the coefficient lists repeat with this period.
      coefficients: residue class ``r`` maps to ``(C_0, ..., C_degree)``.
    """

    degree: int
    period: int
    coefficients: dict[int, Poly]

    def constituent(self, n: int) -> Poly:
        return self.coefficients[n % self.period]

    def coefficient(self, k: int, n: int) -> Fraction:
        c = self.constituent(n)
        return c[k] if k < len(c) else Fraction(0)

    def __call__(self, n: int) -> Fraction:
        return poly_eval(self.constituent(n), n)


def _fit_class(P: Polytope, r: int, period: int, degree: int, extra: int) -> Poly | None:
    ns = [r + period * k for k in range(1, degree + 2 + extra)]
    counts = [count_dilate(P, n) for n in ns]
    xs = [Fraction(n) for n in ns[: degree + 1]]
    poly = interpolate(xs, [Fraction(c) for c in counts[: degree + 1]])
    for n, c in zip(ns[degree + 1:], counts[degree + 1:]):
        if poly_eval(poly, n) != c:
            return None
    return poly


def ehrhart_qp(P: Polytope, period: int | None = None, grow: int = 3) -> QuasiPolynomial:
    """Ehrhart quasi-polynomial of a rational polytope.

    Args:
      P: nonempty polytope, ambient dimension at most 4.
      period: candidate period; defaults to the rational denominator of ``P``.
      grow: how many times the period may be doubled after a failed
        verification before giving up.

    Raises:
      PeriodTooSmallError: no tried period passed verification.
    """
    if P.is_empty:
        raise ValueError("empty polytope has no Ehrhart quasi-polynomial")
    tau = period or P.denominator()
    m = P.dim
    for _ in range(grow + 1):
        coeffs = {}
        for r in range(tau):
            poly = _fit_class(P, r, tau, m, extra=2)
            if poly is None:
                break
            coeffs[r] = poly
        else:
            return QuasiPolynomial(m, tau, coeffs)
        tau *= 2
    raise PeriodTooSmallError(f"period too small (tried up to {tau // 2})")


@dataclass
class ReciprocityReport:
    checked: int
    violations: list[tuple[int, int, Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def reciprocity_check(P: Polytope, n_max: int, qp: QuasiPolynomial | None = None) -> ReciprocityReport:
    """Compare interior counts of ``nP`` with ``(-1)^dim i(P, -n)`` for ``1 <= n <= n_max``."""
    qp = qp or ehrhart_qp(P)
    sign = -1 if P.dim % 2 else 1
    report = ReciprocityReport(0)
    for n in range(1, n_max + 1):
        inner = count_dilate(P, n, interior=True)
        predicted = sign * qp(-n)
        report.checked += 1
        if inner != predicted:
            report.violations.append((n, inner, predicted))
    return report


def dilate_sum(P1: Polytope, P2: Polytope, r1, r2) -> Polytope:
    """``r1 P1 + r2 P2`` with the convention ``0 P = {0}``."""
    return minkowski_sum(P1.scale(r1), P2.scale(r2))


def minkowski_count(P1: Polytope, P2: Polytope, r1, r2) -> int:
    """``#((r1 P1 + r2 P2) ∩ Z^d)`` for rationals ``r1, r2 >= 0``."""
    if Fraction(r1) < 0 or Fraction(r2) < 0:
        raise ValueError("dilation factors must be nonnegative")
    return len(lattice_points(dilate_sum(P1, P2, r1, r2)))


# ------------------------------------------------------------------ chambers
@dataclass(frozen=True)
class ChamberLine:
    """The line ``r1 h1 + r2 h2 = <z, v>`` in the ``(r1, r2)`` plane.

    ``h1, h2`` are the support values of the two polytopes at the outward
    facet normal ``v`` (index ``j`` among the facets of ``P1 + P2``).
    """

    j: int
    normal: tuple[int, ...]
    z: tuple[int, ...]
    h1: Fraction
    h2: Fraction

    @property
    def rhs(self) -> int:
        return sum(a * b for a, b in zip(self.z, self.normal))

    def side(self, r1, r2) -> int:
        s = self.h1 * r1 + self.h2 * r2 - self.rhs
        return (s > 0) - (s < 0)

    def key(self) -> tuple[int, ...]:
        """Canonical integer form of the point set ``{h1 r1 + h2 r2 - rhs = 0}``."""
        return primitive([self.h1, self.h2, -self.rhs])


def _unit_solution(v: Sequence[int]) -> tuple[int, ...]:
    """Integer ``z`` with ``<z, v> = 1`` for a primitive ``v``."""
    H, U = hermite_normal_form([[x] for x in v])
    assert H[0][0] == 1
    return tuple(U[0])


def period_rectangle(P1: Polytope, P2: Polytope) -> tuple[int, int]:
    return P1.denominator(), P2.denominator()


def chamber_lines(P1: Polytope, P2: Polytope) -> list[ChamberLine]:
    """All distinct lines ``L_j(z)`` meeting ``T = (0, t1] x (0, t2]``."""
    S = minkowski_sum(P1, P2)
    if S.dim != S.ambient_dim:
        raise ValueError("P1 + P2 must be full-dimensional")
    t1, t2 = period_rectangle(P1, P2)
    lines: dict[tuple, ChamberLine] = {}
    for j, f in enumerate(S.facets):
        v = tuple(-x for x in f.normal)  # outward
        h1, h2 = P1.support(v), P2.support(v)
        if h1 == 0 and h2 == 0:
            continue
        corners = [h1 * a + h2 * b for a in (0, t1) for b in (0, t2)]
        lo, hi = min(corners), max(corners)
        # The max is attained inside T only when both h's are >= 0 (T is
        # closed at the top-right), the min only when both are <= 0.
        k_lo = ceil(lo) if (h1 <= 0 and h2 <= 0) else floor(lo) + 1
        k_hi = floor(hi) if (h1 >= 0 and h2 >= 0) else ceil(hi) - 1
        z1 = _unit_solution(v)
        for k in range(k_lo, k_hi + 1):
            line = ChamberLine(j, v, tuple(k * x for x in z1), h1, h2)
            lines.setdefault(line.key(), line)
    return [lines[k] for k in sorted(lines)]


@dataclass
class ConstancyReport:
    samples: int
    cells: int
    violations: list[tuple] = field(default_factory=list)
    values: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


def cell_constancy_check(P1: Polytope, P2: Polytope, samples: int = 200, seed: int = 0,
                         denominator: int = 97,
                         shifts: Iterable[tuple[int, int]] = tuple((a, b) for a in range(3) for b in range(3)),
                         ) -> ConstancyReport:
    """Sample ``T`` minus the chamber lines and check the count is constant per cell.

    Components of ``T`` minus finitely many full lines are convex and are
    identified exactly by their sign vector.  Each sample ``r`` is also moved
    by ``u ⊙ (t1, t2)`` for every shift ``u``; the count must be constant on
    every (cell, shift) pair.  Samples landing on a line are redrawn.
    """
    rng = random.Random(seed)
    lines = chamber_lines(P1, P2)
    t1, t2 = period_rectangle(P1, P2)
    shifts = list(shifts)
    report = ConstancyReport(0, 0)
    drawn = 0
    while drawn < samples:
        r1 = Fraction(rng.randint(1, denominator), denominator) * t1
        r2 = Fraction(rng.randint(1, denominator), denominator) * t2
        signs = tuple(line.side(r1, r2) for line in lines)
        if 0 in signs:
            continue
        drawn += 1
        for u in shifts:
            s1, s2 = r1 + u[0] * t1, r2 + u[1] * t2
            c = minkowski_count(P1, P2, s1, s2)
            key = (signs, u)
            seen = report.values.setdefault(key, c)
            if seen != c:
                report.violations.append((key, (s1, s2), seen, c))
    report.samples = drawn
    report.cells = len({k[0] for k in report.values})
    return report


def minkowski_polynomial(P1: Polytope, P2: Polytope, r1, r2) -> dict[tuple[int, int], Fraction]:
    """Coefficients ``p_(l1,l2)`` of ``(n1, n2) -> Q(r + (n1 t1, n2 t2))``.

    Fitted exactly on the triangular grid ``n1 + n2 <= d`` and verified on the
    next layer ``n1 + n2 = d + 1``.

    Raises:
      PeriodTooSmallError: the counts are not a polynomial of degree ``d``.
    """
    d = P1.ambient_dim
    t1, t2 = period_rectangle(P1, P2)
    r1, r2 = Fraction(r1), Fraction(r2)
    monos = [(a, b) for a in range(d + 1) for b in range(d + 1 - a)]

    def count(n1, n2):
        return minkowski_count(P1, P2, r1 + n1 * t1, r2 + n2 * t2)

    A = [[Fraction(n1) ** a * Fraction(n2) ** b for a, b in monos] for n1, n2 in monos]
    sol = solve(A, [count(n1, n2) for n1, n2 in monos])
    coeffs = dict(zip(monos, sol))
    for n1 in range(d + 2):
        n2 = d + 1 - n1
        val = sum(c * n1 ** a * n2 ** b for (a, b), c in coeffs.items())
        if val != count(n1, n2):
            raise PeriodTooSmallError("Minkowski count is not polynomial on this cell")
    return coeffs


# ------------------------------------------------------------------ slices
def slice_polytope(P: Polytope, lam) -> Polytope:
    """``P ∩ {x_last = lam}``."""
    d = P.ambient_dim
    e = (0,) * (d - 1) + (1,)
    lam = Fraction(lam)
    hs = list(P.halfspaces) + [HalfSpace.make(e, -lam), HalfSpace.make([-x for x in e], lam)]
    return vertex_enumeration(hs, d)


@dataclass
class SliceScanReport:
    """Quasi-polynomial coefficients of the slices ``P_lam`` at dilates ``n``.

    ``table[lam][n]`` is ``(C_0, ..., C_m)`` evaluated at ``n``.
    """

    table: dict[Fraction, dict[int, tuple[Fraction, ...]]]
    max_abs: Fraction
    top_constant: dict[Fraction, bool]


def slice_coefficient_scan(P: Polytope, lambdas: Sequence, n_max: int) -> SliceScanReport:
    """Scan ``C_i(P_lam, n)`` over ``n <= n_max`` with ``n lam`` integral.

    Raises:
      InsufficientSamplesError: some ``lam`` admits no such ``n``.
    """
    table: dict[Fraction, dict[int, tuple[Fraction, ...]]] = {}
    top: dict[Fraction, bool] = {}
    biggest = Fraction(0)
    for lam in map(Fraction, lambdas):
        ns = [n for n in range(1, n_max + 1) if (n * lam).denominator == 1]
        if not ns:
            raise InsufficientSamplesError(f"no n <= {n_max} with n*{lam} integral")
        Q = slice_polytope(P, lam)
        if Q.is_empty:
            table[lam] = {n: () for n in ns}
            top[lam] = True
            continue
        qp = ehrhart_qp(Q)
        rows = {n: tuple(qp.coefficient(k, n) for k in range(qp.degree + 1)) for n in ns}
        table[lam] = rows
        tops = {row[-1] for row in rows.values()}
        top[lam] = len(tops) == 1
        biggest = max([biggest] + [abs(c) for row in rows.values() for c in row])
    return SliceScanReport(table, biggest, top)
