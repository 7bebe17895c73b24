"""Brute-force lattice point counts of the dilated Eto region.

``count_slice(pair, q, m)`` is the number of integer points ``x`` at height
``m`` that lie in the cone and in none of the cones ``(q u, q) + C``; this is
the length of the degree-``m`` part of ``R / m^[q]``.  The inner loop is pure
integer numpy arithmetic.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

import numpy as np

from .region import ToricPair


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(k for k in range(2, q + 1) if q % k == 0)
    while q % p == 0:
        q //= p
    return q == 1


class _Kernel:
    """Integer data for the membership tests of one pair."""

    def __init__(self, pair: ToricPair):
        P = pair.P
        self.normals = np.array([h.normal for h in P.facets], dtype=np.int64)  # (F, k)
        self.offsets = np.array([int(h.offset) for h in P.facets], dtype=np.int64)  # (F,)
        self.L = np.array(pair.L, dtype=np.int64)  # (n, k)
        self.Lv = self.L @ self.normals.T  # (n, F): <u, v_i>
        lo, hi = P.bbox
        self.lo = [int(x) for x in lo]
        self.hi = [int(x) for x in hi]
        self.k = P.ambient_dim

    def count(self, q: int, m: int) -> int:
        if m < 0:
            return 0
        ranges = [np.arange(m * a, m * b + 1, dtype=np.int64) for a, b in zip(self.lo, self.hi)]
        pts = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, self.k)
        V = pts @ self.normals.T  # (N, F)
        inside = np.all(V >= -self.offsets * m, axis=1)
        if m < q:
            return int(inside.sum())
        V = V[inside]
        alive = np.ones(len(V), dtype=bool)
        for row in self.Lv:
            # x - q u in (m - q) P  <=>  <x, v> >= q <u, v> - a (m - q)
            covered = np.all(V >= q * row - self.offsets * (m - q), axis=1)
            alive &= ~covered
        return int(alive.sum())


def _kernel(pair: ToricPair) -> _Kernel:
    k = pair.__dict__.get("_count_kernel")
    if k is None:
        k = _Kernel(pair)
        pair.__dict__["_count_kernel"] = k
    return k


def count_slice(pair: ToricPair, q: int, m: int) -> int:
    """Number of degree-``m`` lattice points of the ``q``-dilated Eto region."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    return _kernel(pair).count(q, m)


@dataclass
class CountTable:
    q: int
    per_degree: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.per_degree.values())


def count_table(pair: ToricPair, q: int, threads: int | None = None,
                strict: bool = False) -> CountTable:
    """All nonzero degree counts for ``q``.

    Scanning stops at the first zero count at a degree ``m >= d - 2``: for
    a lattice polytope of dimension ``n`` every lattice point of ``(m+1)P``
    splits as a point of ``mP`` plus a point of ``P`` once ``m >= n - 1``, so
    a fully covered degree stays covered from then on.
    """
    if strict and not _is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")
    if q < 1:
        raise ValueError("q must be a positive integer")
    kern = _kernel(pair)
    d = pair.d
    table = CountTable(q)
    threads = threads or os.cpu_count() or 1
    # Counts vanish past |L| * q at the latest; scan in blocks.
    block = max(threads, 8)
    m = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while True:
            ms = list(range(m, m + block))
            counts = list(pool.map(lambda mm: kern.count(q, mm), ms))
            for mm, c in zip(ms, counts):
                if c == 0 and mm >= max(d - 2, 1):
                    return table
                if c:
                    table.per_degree[mm] = c
            m += block


def hk_value(pair: ToricPair, q: int, threads: int | None = None) -> int:
    """Colength of the q-th Frobenius power of the maximal ideal."""
    return count_table(pair, q, threads).total


def f_n(pair: ToricPair, q: int, lam) -> Fraction:
    m = floor(Fraction(lam) * q)
    return Fraction(count_slice(pair, q, m), q ** (pair.d - 1))


def g_n(pair: ToricPair, q: int, lam, f=None) -> Fraction:
    """Second-order approximant ``(count - f(m/q) q^(d-1)) / q^(d-2)``.

    ``f`` is the exact density (a callable); defaults to the slice volume.
    """
    if f is None:
        from .density import f_exact

        def f(x):
            return f_exact(pair, x)
    m = floor(Fraction(lam) * q)
    c = count_slice(pair, q, m)
    return (c - f(Fraction(m, q)) * q ** (pair.d - 1)) / Fraction(q) ** (pair.d - 2)
