"""The cone over a lattice polytope and the height slices of its Eto region.

For a lattice polytope ``P`` in R^(d-1) the cone ``C`` is spanned by
``P x {1}``.  The Eto region is ``C`` minus the translated cones
``(u, 1) + C`` for the lattice points ``u`` of ``P``.  Because ``C`` is a cone,
the slice of a translate at height ``lam >= 1`` is ``u + (lam - 1) P``, so each
slice is computed directly as ``lam P`` with those translates removed.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import nullspace, primitive
from .polytope import HalfSpace, Polytope, as_point, dot, lattice_points, subtract


class NotLatticePolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class Cone:
    """``{(x, z) : z >= 0, <x, v_i> + a_i z >= 0}`` for the facets (v_i, a_i) of P."""

    halfspaces: tuple[HalfSpace, ...]

    def contains(self, x, z) -> bool:
        z = Fraction(z)
        if z < 0:
            return False
        return all(dot(x, h.normal) + h.offset * z >= 0 for h in self.halfspaces)

    def as_rows(self) -> list[tuple[tuple[int, ...], int]]:
        """Integer rows (normal over R^d, offset 0) including the height constraint."""
        rows = []
        for h in self.halfspaces:
            rows.append((h.normal + (int(h.offset),), 0))
        d = len(self.halfspaces[0].normal) + 1
        rows.append(((0,) * (d - 1) + (1,), 0))
        return rows


@dataclass(eq=False)
class ToricPair:
    """A lattice polytope together with its cone and lattice points.

    ``d`` is the dimension of the cone (and of the graded ring); the polytope
    lives in R^(d-1).
    """

    P: Polytope
    L: tuple[tuple[int, ...], ...]
    cone: Cone
    name: str = ""
    _slices: dict = field(default_factory=dict, repr=False)

    @property
    def d(self) -> int:
        return self.P.ambient_dim + 1


def build_pair(P: Polytope, name: str = "") -> ToricPair:
    """Cone and lattice points of a full-dimensional lattice polytope."""
    if P.is_empty or not P.is_lattice():
        raise NotLatticePolytopeError("P_D must be a lattice polytope")
    if P.dim != P.ambient_dim or P.dim < 1:
        raise ValueError("P_D must be full-dimensional of dimension at least 1")
    L = tuple(lattice_points(P))
    return ToricPair(P, L, Cone(tuple(P.facets)), name)


@dataclass
class SliceRegion:
    """Height-``lam`` slice of the closed Eto region.

    ``cells`` are full-dimensional convex pieces with pairwise intersections of
    measure zero.  Boundary pieces are (d-2)-dimensional polytopes, split into
    those on the boundary of ``lam P`` (outer) and those on translate facets
    (inner).
    """

    lam: Fraction
    d: int
    cells: list[Polytope]
    outer_boundary: list[Polytope]
    inner_boundary: list[Polytope]


def translates(pair: ToricPair, lam: Fraction) -> list[Polytope]:
    """The slices ``u + (lam - 1) P`` of the translated cones (empty list below 1)."""
    if lam <= 1:
        return []
    Q = pair.P.scale(lam - 1)
    return [Q.translate(u) for u in pair.L]


def slice_region(pair: ToricPair, lam) -> SliceRegion:
    """Exact slice ``closure(lam P minus the translates)`` with boundary census."""
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    cached = pair._slices.get(lam)
    if cached is not None:
        return cached
    k = pair.d - 1
    if lam == 0:
        region = SliceRegion(lam, pair.d, [], [], [])
        pair._slices[lam] = region
        return region
    base = pair.P.scale(lam)
    cells = [base]
    for T in translates(pair, lam):
        nxt = []
        for C in cells:
            nxt.extend(subtract(C, T))
        cells = nxt
        if not cells:
            break
    cells = [c for c in cells if c.dim == k]
    outer, inner = _boundary_census(cells, base, k)
    region = SliceRegion(lam, pair.d, cells, outer, inner)
    pair._slices[lam] = region
    return region


def _boundary_census(cells: list[Polytope], base: Polytope, k: int):
    # Group cell facets by supporting hyperplane and by the side the cell is on.
    groups: dict = defaultdict(lambda: ([], []))
    for C in cells:
        for h in C.facets:
            key = h.plane_key()
            side = 0 if key[0] == h.normal else 1
            groups[key][side].append(C.face(h))
    outer_keys = {h.plane_key() for h in base.facets}
    outer, inner = [], []
    for key in sorted(groups, key=_key_order):
        plus, minus = groups[key]
        pieces = _difference_all(plus, minus, k - 1) + _difference_all(minus, plus, k - 1)
        (outer if key in outer_keys else inner).extend(pieces)
    return outer, inner


def _key_order(key):
    return (key[0], key[1])


def _difference_all(A: list[Polytope], B: list[Polytope], dim: int) -> list[Polytope]:
    out = []
    for a in A:
        pieces = [a]
        for b in B:
            nxt = []
            for p in pieces:
                nxt.extend(subtract(p, b))
            pieces = nxt
            if not pieces:
                break
        out.extend(p for p in pieces if p.dim == dim)
    return out


def boundary_measures(region: SliceRegion) -> tuple[Fraction, Fraction]:
    """``(outer, inner)`` relative (d-2)-volumes of the slice boundary."""
    m = region.d - 2
    outer = sum((p.measure(m) for p in region.outer_boundary), Fraction(0))
    inner = sum((p.measure(m) for p in region.inner_boundary), Fraction(0))
    return outer, inner


def eto_member(pair: ToricPair, x: Sequence, z) -> bool:
    """Membership in the Eto region: in the closed cone, and outside every
    closed translated cone ``(u, 1) + C``."""
    x = as_point(x)
    z = Fraction(z)
    if not pair.cone.contains(x, z):
        return False
    if z < 1:
        return True
    T = pair.P.scale(z - 1)
    for u in pair.L:
        if T.contains([a - b for a, b in zip(x, u)]):
            return False
    return True


# ------------------------------------------------------------------ breakpoints
def _plane_family(pair: ToricPair) -> list[tuple[int, ...]]:
    """Integer rows (n_1..n_d, c) for hyperplanes <n, X> + c = 0 in R^d."""
    d = pair.d
    rows = set()
    facets = pair.P.facets
    for h in facets:
        a = int(h.offset)
        rows.add(h.normal + (a, 0))
    rows.add((0,) * (d - 1) + (1, 0))
    for u in pair.L:
        for h in facets:
            a = int(h.offset)
            # <x - u, v> + a (z - 1) = 0
            rows.add(h.normal + (a, -sum(p * q for p, q in zip(u, h.normal)) - a))
    # Planes through the origin, (g, 1) for g in a (d-3)-face, and (u, 1).
    if d >= 3:
        P = pair.P
        if d == 3:
            faces = [(v,) for v in P.vertices]
        elif d == 4:
            faces = [(P.vertices[i], P.vertices[j]) for i, j in P.edges]
        else:
            faces = []
        for face in faces:
            for u in pair.L:
                vecs = [list(g) + [1] for g in face] + [list(u) + [1]]
                ns = nullspace(vecs, d)
                if len(ns) == 1:
                    rows.add(primitive(ns[0]) + (0,))
    return sorted(rows)


def _det(M: np.ndarray) -> np.ndarray:
    """Determinants of a stack of small integer matrices, exactly (object-free int64)."""
    n = M.shape[-1]
    if n == 1:
        return M[..., 0, 0]
    if n == 2:
        return M[..., 0, 0] * M[..., 1, 1] - M[..., 0, 1] * M[..., 1, 0]
    total = np.zeros(M.shape[:-2], dtype=np.int64)
    for j in range(n):
        minor = np.delete(np.delete(M, 0, axis=-2), j, axis=-1)
        term = M[..., 0, j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def breakpoint_superset(pair: ToricPair, chunk: int = 200_000) -> list[Fraction]:
    """Heights of all vertices of the hyperplane arrangement lying in the cone.

    Every height at which the slice combinatorics can change is among these,
    and so is 0.
    """
    d = pair.d
    if d > 4:
        raise ValueError("breakpoint enumeration supports d <= 4")
    rows = np.array(_plane_family(pair), dtype=np.int64)
    A = rows[:, :d]
    c = rows[:, d]
    cone_rows = np.array([r for r, _ in pair.cone.as_rows()], dtype=np.int64)
    out = {Fraction(0)}
    combos = itertools.combinations(range(len(rows)), d)
    while True:
        block = np.array(list(itertools.islice(combos, chunk)), dtype=np.int64)
        if len(block) == 0:
            break
        M = A[block]  # (n, d, d)
        rhs = -c[block]  # (n, d)
        D = _det(M)
        keep = D != 0
        M, rhs, D = M[keep], rhs[keep], D[keep]
        if len(D) == 0:
            continue
        sol = np.empty((len(D), d), dtype=np.int64)
        for i in range(d):
            Mi = M.copy()
            Mi[:, :, i] = rhs
            sol[:, i] = _det(Mi)
        sign = np.where(D < 0, -1, 1)
        sol *= sign[:, None]
        D = D * sign
        # point = sol / D; keep those in the closed cone (z >= 0 included)
        inside = np.all(sol @ cone_rows.T >= 0, axis=1)
        for num, den in set(zip(sol[inside, -1].tolist(), D[inside].tolist())):
            out.add(Fraction(num, den))
    return sorted(out)


def support_end(pair: ToricPair, candidates: Sequence[Fraction] | None = None) -> Fraction:
    """Height beyond which every slice is empty (the largest breakpoint)."""
    if candidates is None:
        candidates = breakpoint_superset(pair)
    cands = sorted(candidates)
    for i in range(len(cands) - 1, 0, -1):
        mid = (cands[i - 1] + cands[i]) / 2
        if slice_region(pair, mid).cells:
            return cands[i]
    return cands[0]
