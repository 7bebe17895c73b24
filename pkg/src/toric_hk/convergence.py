"""Comparison of the counting approximants ``f_n, g_n`` with the exact densities."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .counting import f_n, g_n
from .density import DensityReport
from .region import ToricPair


def uniform_grid(end: Fraction, n: int) -> list[Fraction]:
    """``n`` equally spaced interior points of ``(0, end)``."""
    return [Fraction(end) * k / (n + 1) for k in range(1, n + 1)]


def near_breakpoint(lam: Fraction, breakpoints: Sequence[Fraction], margin: Fraction) -> Fraction | None:
    for b in breakpoints:
        if abs(lam - b) < margin:
            return b
    return None


def safe_grid(breakpoints: Sequence[Fraction], n: int, margin: Fraction = Fraction(1, 64)) -> list[Fraction]:
    """``n`` points spread evenly over the support, each at least ``margin`` from every breakpoint."""
    bs = sorted(breakpoints)
    spans = [(a + margin, b - margin) for a, b in zip(bs, bs[1:]) if b - a > 2 * margin]
    total = sum((b - a for a, b in spans), Fraction(0))
    out = []
    for k in range(n):
        t = total * (2 * k + 1) / (2 * n)
        for a, b in spans:
            if t <= b - a:
                out.append(a + t)
                break
            t -= b - a
    return out


@dataclass(frozen=True)
class ConvergenceRow:
    lam: Fraction
    q: int
    f: Fraction
    g: Fraction
    f_n: Fraction
    g_n: Fraction


def convergence_rows(pair: ToricPair, report: DensityReport, qs: Sequence[int],
                     grid: Sequence[Fraction], threads: int | None = None) -> list[ConvergenceRow]:
    """Rows ordered by ``(q, lambda)``; ``g_n`` uses the exact piecewise ``f``."""

    def row(args):
        q, lam = args
        return ConvergenceRow(lam, q, report.f(lam), report.g(lam),
                              f_n(pair, q, lam), g_n(pair, q, lam, f=report.f))

    jobs = [(q, lam) for q in qs for lam in grid]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(row, jobs))


def max_errors(rows: Sequence[ConvergenceRow]) -> dict[int, tuple[Fraction, Fraction]]:
    """``q -> (max |f_n - f|, max |g_n - g|)``."""
    out: dict[int, tuple[Fraction, Fraction]] = {}
    for r in rows:
        ef, eg = out.get(r.q, (Fraction(0), Fraction(0)))
        out[r.q] = (max(ef, abs(r.f_n - r.f)), max(eg, abs(r.g_n - r.g)))
    return out


def fitted_orders(errors: dict[int, Fraction]) -> dict[int, float | None]:
    """Observed order ``log(e_prev / e_q) / log(q / q_prev)`` for consecutive ``q``."""
    qs = sorted(errors)
    out: dict[int, float | None] = {qs[0]: None} if qs else {}
    for a, b in zip(qs, qs[1:]):
        ea, eb = errors[a], errors[b]
        out[b] = math.log(ea / eb) / math.log(b / a) if ea > 0 and eb > 0 else None
    return out


def riemann_f_error(f, q: int) -> Fraction:
    """``∫ f(floor(qx)/q) dx - ∫ f``: the step-function integral minus the exact one.

    ``f`` must be a :class:`~toric_hk.density.PiecewisePolynomial`.
    """
    from .density import integrate

    end = f.breakpoints[-1] if f.breakpoints else Fraction(0)
    steps = math.ceil(end * q)
    return sum((f(Fraction(m, q)) for m in range(steps)), Fraction(0)) / q - integrate(f)
