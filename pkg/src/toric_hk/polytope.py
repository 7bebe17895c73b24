"""Rational convex polytopes in low dimension, kept in dual representation.

A :class:`Polytope` stores its exact vertex list together with an
irredundant inequality description (one :class:`HalfSpace` per facet plus the
equations of its affine hull).  All arithmetic is exact; vertex enumeration is
by brute force over d-subsets of the constraints, which is fine for ambient
dimension at most 4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, floor, ceil, lcm
from typing import Iterable, Sequence

import numpy as np

from .linalg import (
    AffineLatticeFrame,
    det,
    lattice_coordinates,
    nullspace,
    primitive,
    rank,
    rref,
    saturated_lattice_basis,
    solve,
)

Point = tuple[Fraction, ...]


class UnboundedError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


def as_point(p: Iterable) -> Point:
    return tuple(Fraction(x) for x in p)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class HalfSpace:
    """The closed half-space ``{x : <x, normal> >= -offset}``.

    ``normal`` is always a primitive integer vector; rational input is rescaled
    by a positive factor, which does not change the set.
    """

    normal: tuple[int, ...]
    offset: Fraction

    @classmethod
    def make(cls, normal: Sequence, offset) -> "HalfSpace":
        nrm = [Fraction(x) for x in normal]
        if not any(nrm):
            raise ValueError("half-space normal must be nonzero")
        prim = primitive(nrm)
        # positive scale factor s with prim = s * nrm
        i = next(k for k, x in enumerate(nrm) if x)
        s = Fraction(prim[i]) / nrm[i]
        return cls(prim, Fraction(offset) * s)

    def value(self, x) -> Fraction:
        """Signed slack ``<x, normal> + offset`` (nonnegative inside)."""
        return dot(x, self.normal) + self.offset

    def contains(self, x) -> bool:
        return self.value(x) >= 0

    def flipped(self) -> "HalfSpace":
        """Closure of the complement."""
        return HalfSpace(tuple(-v for v in self.normal), -self.offset)

    def scaled_ints(self) -> tuple[tuple[int, ...], int, int]:
        """``(A, c, den)`` with ``den * value(x) = <A, x> + c`` all integers."""
        den = self.offset.denominator
        return tuple(v * den for v in self.normal), self.offset.numerator, den

    def plane_key(self) -> tuple:
        """Key identifying the bounding hyperplane regardless of orientation."""
        i = next(k for k, v in enumerate(self.normal) if v)
        if self.normal[i] < 0:
            return self.flipped().plane_key()
        return (self.normal, self.offset)


def equality_pair(h: HalfSpace) -> tuple[HalfSpace, HalfSpace]:
    return h, h.flipped()


def _affine_rank(points: Sequence[Point]) -> int:
    if not points:
        return -1
    if len(points) == 1:
        return 0
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    if len(points) == 2:
        return 1 if any(diffs[0]) else 0
    return rank(diffs)


def _hull_equalities(points: Sequence[Point], d: int) -> tuple[HalfSpace, ...]:
    """Canonical equations of the affine hull of ``points``."""
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    diffs = [v for v in diffs if any(v)]
    if diffs:
        perp = nullspace(diffs, d)
        if not perp:
            return ()
        ints = [list(primitive(w)) for w in perp]
        basis = saturated_lattice_basis(ints)
    else:
        basis = [[int(i == j) for j in range(d)] for i in range(d)]
    return tuple(HalfSpace(tuple(b), -dot(b, p0)) for b in basis)


class Polytope:
    """Bounded convex polytope with vertices and irredundant half-spaces.

    Instances are immutable.  Use :meth:`from_halfspaces`,
    :meth:`from_points` or the module-level helpers to build them.
    """

    def __init__(self, ambient_dim: int, vertices, facets, equalities, dim: int):
        self.ambient_dim = ambient_dim
        self.vertices: tuple[Point, ...] = tuple(vertices)
        self.facets: tuple[HalfSpace, ...] = tuple(facets)
        self.equalities: tuple[HalfSpace, ...] = tuple(equalities)
        self.dim = dim

    # ---------------------------------------------------------------- build
    @classmethod
    def empty(cls, ambient_dim: int) -> "Polytope":
        return cls(ambient_dim, (), (), (), -1)

    @classmethod
    def _canonical(cls, ambient_dim: int, vertices: Iterable[Point],
                   halfspaces: Iterable[HalfSpace]) -> "Polytope":
        verts = sorted(set(vertices))
        if not verts:
            return cls.empty(ambient_dim)
        dim = _affine_rank(verts)
        eqs = _hull_equalities(verts, ambient_dim) if dim < ambient_dim else ()
        facets = []
        if dim >= 1:
            seen = set()
            for h in halfspaces:
                tight = frozenset(i for i, v in enumerate(verts) if h.value(v) == 0)
                if len(tight) == len(verts) or tight in seen or len(tight) < dim:
                    continue
                if _affine_rank([verts[i] for i in tight]) == dim - 1:
                    seen.add(tight)
                    facets.append(h)
        return cls(ambient_dim, verts, facets, eqs, dim)

    @classmethod
    def from_halfspaces(cls, halfspaces: Iterable[HalfSpace], ambient_dim: int,
                        check_bounded: bool = True) -> "Polytope":
        return vertex_enumeration(list(halfspaces), ambient_dim, check_bounded)

    @classmethod
    def from_points(cls, points: Iterable[Sequence]) -> "Polytope":
        return convex_hull(points)

    # ---------------------------------------------------------------- views
    @property
    def intrinsic_dim(self) -> int:
        return self.dim

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def halfspaces(self) -> tuple[HalfSpace, ...]:
        """Facet inequalities followed by both orientations of each equation."""
        out = list(self.facets)
        for e in self.equalities:
            out.extend(equality_pair(e))
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        vs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"Polytope(dim={self.dim}, vertices=[{vs}])"

    def contains(self, x, strict: bool = False) -> bool:
        """Membership; ``strict`` tests the relative interior."""
        x = as_point(x)
        if any(e.value(x) != 0 for e in self.equalities):
            return False
        if strict:
            return all(h.value(x) > 0 for h in self.facets)
        return all(h.value(x) >= 0 for h in self.facets)

    @cached_property
    def bbox(self) -> tuple[Point, Point]:
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.ambient_dim))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.ambient_dim))
        return lo, hi

    @cached_property
    def _incidence(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(j for j, h in enumerate(self.facets) if h.value(v) == 0)
                     for v in self.vertices)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Index pairs of adjacent vertices."""
        n = len(self.vertices)
        if self.dim <= 0:
            return ()
        if self.dim == 1:
            return ((0, 1),)
        inc = self._incidence
        eq_normals = [list(e.normal) for e in self.equalities]
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                common = inc[i] & inc[j]
                if len(common) < self.dim - 1:
                    continue
                normals = eq_normals + [list(self.facets[k].normal) for k in common]
                if rank(normals) == self.ambient_dim - 1:
                    out.append((i, j))
        return tuple(out)

    def support(self, v) -> Fraction:
        """Support function ``max <v, x>`` over the polytope."""
        return max(dot(v, x) for x in self.vertices)

    def scale(self, t) -> "Polytope":
        t = Fraction(t)
        if t == 0:
            return point_polytope([0] * self.ambient_dim) if not self.is_empty else self
        if t < 0:
            raise ValueError("negative dilation")
        return Polytope(self.ambient_dim, [tuple(t * x for x in v) for v in self.vertices],
                        [HalfSpace(h.normal, h.offset * t) for h in self.facets],
                        [HalfSpace(h.normal, h.offset * t) for h in self.equalities], self.dim)

    def translate(self, w) -> "Polytope":
        w = as_point(w)
        return Polytope(self.ambient_dim, sorted(tuple(a + b for a, b in zip(v, w)) for v in self.vertices),
                        [HalfSpace(h.normal, h.offset - dot(h.normal, w)) for h in self.facets],
                        [HalfSpace(h.normal, h.offset - dot(h.normal, w)) for h in self.equalities],
                        self.dim)

    def linear_image(self, M, w=None) -> "Polytope":
        """Image under x -> M x + w (M square, invertible)."""
        pts = [tuple(dot(row, v) for row in M) for v in self.vertices]
        if w is not None:
            pts = [tuple(a + Fraction(b) for a, b in zip(p, w)) for p in pts]
        return convex_hull(pts)

    # ---------------------------------------------------------------- ops
    def clip(self, h: HalfSpace) -> "Polytope":
        """Intersection with one half-space."""
        if self.is_empty:
            return self
        vals = [h.value(v) for v in self.vertices]
        if all(x >= 0 for x in vals):
            return self
        if all(x < 0 for x in vals):
            return Polytope.empty(self.ambient_dim)
        pts = [v for v, x in zip(self.vertices, vals) if x >= 0]
        for i, j in self.edges:
            a, b = vals[i], vals[j]
            if (a > 0 and b < 0) or (a < 0 and b > 0):
                t = a / (a - b)
                v, w = self.vertices[i], self.vertices[j]
                pts.append(tuple(x + t * (y - x) for x, y in zip(v, w)))
        return Polytope._canonical(self.ambient_dim, pts, self.halfspaces + (h,))

    def face(self, h: HalfSpace) -> "Polytope":
        """The face cut out by the bounding hyperplane of a valid inequality ``h``."""
        pts = [v for v in self.vertices if h.value(v) == 0]
        return Polytope._canonical(self.ambient_dim, pts, self.halfspaces + (h, h.flipped()))

    def facet_polytopes(self) -> list["Polytope"]:
        return [self.face(h) for h in self.facets]

    # ---------------------------------------------------------------- measure
    def _face_facets(self, face: frozenset, fdim: int) -> list[frozenset]:
        inc_by_facet = self._facet_vertex_sets
        out = []
        seen = set()
        for s in inc_by_facet:
            sub = face & s
            if sub == face or sub in seen or len(sub) < fdim:
                continue
            if _affine_rank([self.vertices[i] for i in sub]) == fdim - 1:
                seen.add(sub)
                out.append(sub)
        # keep only maximal ones
        return [s for s in out if not any(s < t for t in out)]

    @cached_property
    def _facet_vertex_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(i for i, v in enumerate(self.vertices) if h.value(v) == 0)
                     for h in self.facets)

    def triangulation(self, reverse: bool = False) -> list[tuple[int, ...]]:
        """Pulling triangulation as tuples of vertex indices.

        ``reverse`` pulls from the largest vertex index instead of the smallest,
        giving a different triangulation of the same polytope.
        """
        if self.is_empty:
            return []

        def rec(face: frozenset, fdim: int):
            if fdim == 0:
                return [(next(iter(face)),)]
            apex = max(face) if reverse else min(face)
            out = []
            for sub in self._face_facets(face, fdim):
                if apex in sub:
                    continue
                for simplex in rec(sub, fdim - 1):
                    out.append((apex,) + simplex)
            return out

        return rec(frozenset(range(len(self.vertices))), self.dim)

    def volume(self, reverse: bool = False) -> Fraction:
        """Euclidean volume; zero unless the polytope is full-dimensional."""
        d = self.ambient_dim
        if self.dim < d or self.is_empty:
            return Fraction(0)
        if d == 1:
            return self.vertices[-1][0] - self.vertices[0][0]
        if d == 2:
            return _polygon_area(self.vertices)
        total = Fraction(0)
        for simplex in self.triangulation(reverse):
            v0 = self.vertices[simplex[0]]
            M = [[a - b for a, b in zip(self.vertices[k], v0)] for k in simplex[1:]]
            total += abs(Fraction(det(M)))
        return total / factorial(d)

    @cached_property
    def frame(self) -> AffineLatticeFrame:
        return AffineLatticeFrame.from_points(self.vertices)

    def relative_volume(self, reverse: bool = False) -> Fraction:
        """Volume normalised by the lattice of the affine hull.

        For an integral polytope this is the Euclidean volume after a map
        sending the hull lattice onto Z^m.  For a rational polytope the
        dilation rule rVol(Q) = rVol(nQ) / n^m reduces to the same computation,
        because the direction lattice of the hull does not depend on where the
        hull sits.  A single point has relative volume 1.
        """
        if self.is_empty:
            return Fraction(0)
        m = self.dim
        if m == 0:
            return Fraction(1)
        if m == self.ambient_dim:
            return self.volume(reverse)
        frame = self.frame
        coords = [lattice_coordinates(frame, v) for v in self.vertices]
        if m == 1:
            return max(c[0] for c in coords) - min(c[0] for c in coords)
        if m == 2:
            return _polygon_area(coords)
        total = Fraction(0)
        for simplex in self.triangulation(reverse):
            c0 = coords[simplex[0]]
            M = [[a - b for a, b in zip(coords[k], c0)] for k in simplex[1:]]
            total += abs(Fraction(det(M)))
        return total / factorial(m)

    def measure(self, k: int) -> Fraction:
        """``rVol_k``: relative volume if the polytope has dimension k, else 0."""
        if self.dim != k:
            return Fraction(0)
        return self.relative_volume()

    def denominator(self) -> int:
        """Rational denominator: least positive integer n with nP integral."""
        n = 1
        for v in self.vertices:
            for x in v:
                n = lcm(n, x.denominator)
        return n

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)


def _polygon_area(points: Sequence[Point]) -> Fraction:
    """Area of the convex hull of 2-d points given in any order."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return Fraction(0)
    hull = _convex_polygon_order(pts)
    s = Fraction(0)
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_polygon_order(pts: list[Point]) -> list[Point]:
    """Monotone-chain hull; input sorted, output counter-clockwise."""
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def point_polytope(p) -> Polytope:
    p = as_point(p)
    return Polytope(len(p), [p], (), _hull_equalities([p], len(p)), 0)


def vertex_enumeration(halfspaces: list[HalfSpace], ambient_dim: int,
                       check_bounded: bool = True) -> Polytope:
    """Exact vertices of ``{x : h(x) >= 0 for all h}``.

    Raises:
      UnboundedError: the region is nonempty and unbounded.
    """
    d = ambient_dim
    if any(len(h.normal) != d for h in halfspaces):
        raise DimensionMismatchError("half-space dimension does not match ambient_dim")
    hs = list(dict.fromkeys(halfspaces))
    normals = [list(h.normal) for h in hs]
    if rank(normals) < d if normals else True:
        # Nontrivial lineality space: either empty or unbounded.
        lin = nullspace(normals, d) if normals else [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        extra = []
        for l in lin:
            extra.extend(equality_pair(HalfSpace.make(l, 0)))
        inner = vertex_enumeration(hs + extra, d, check_bounded=False)
        if inner.is_empty:
            return inner
        raise UnboundedError("unbounded region")
    pts = set()
    for combo in itertools.combinations(range(len(hs)), d):
        A = [hs[i].normal for i in combo]
        if det(A) == 0:
            continue
        x = solve(A, [-hs[i].offset for i in combo])
        x = tuple(x)
        if x in pts:
            continue
        if all(h.value(x) >= 0 for h in hs):
            pts.add(x)
    if not pts:
        return Polytope.empty(d)
    if check_bounded:
        box = []
        for i in range(d):
            e = [int(i == j) for j in range(d)]
            box.append(HalfSpace.make(e, 1))
            box.append(HalfSpace.make([-x for x in e], 1))
        rec = vertex_enumeration([HalfSpace(h.normal, Fraction(0)) for h in hs] + box, d, False)
        if any(any(x) for x in rec.vertices):
            raise UnboundedError("unbounded region")
    return Polytope._canonical(d, pts, hs)


def convex_hull(points: Iterable[Sequence]) -> Polytope:
    """Convex hull of finitely many rational points, with facet inequalities."""
    pts = sorted(set(as_point(p) for p in points))
    if not pts:
        raise ValueError("convex hull of no points")
    d = len(pts[0])
    if len(pts) == 1:
        return point_polytope(pts[0])
    frame = AffineLatticeFrame.from_points(pts)
    m = frame.m
    eqs = _hull_equalities(pts, d) if m < d else ()
    # Left inverse of the frame basis, supported on pivot coordinates.
    B = frame.direction_basis
    _, piv = rref([list(b) for b in B])
    Bsq = [[B[j][i] for j in range(m)] for i in piv]  # m x m, columns = basis restricted
    inv_cols = []
    for k in range(m):
        e = [Fraction(int(k == j)) for j in range(m)]
        inv_cols.append(solve(Bsq, e))
    # coords(x) = Binv @ (x - base)[piv]; Binv[r][k] = inv_cols[k][r]
    Binv = [[inv_cols[k][r] for k in range(m)] for r in range(m)]
    base = frame.base_point
    coords = [tuple(dot(Binv[r], [p[i] - base[i] for i in piv]) for r in range(m)) for p in pts]

    facets_c = _hull_facets(coords, m)
    halfspaces = []
    for a, b in facets_c:  # <a, c> + b >= 0
        # <a, Binv (x - base)[piv]> + b
        normal = [Fraction(0)] * d
        for k, i in enumerate(piv):
            normal[i] = sum(a[r] * Binv[r][k] for r in range(m))
        off = b - dot(normal, base)
        halfspaces.append(HalfSpace.make(normal, off))
    vertices = []
    for p in pts:
        tight = [h for h in halfspaces if h.value(p) == 0]
        if m == 0 or rank([list(h.normal) for h in tight] + [list(e.normal) for e in eqs]) == d:
            vertices.append(p)
    poly = Polytope._canonical(d, vertices, halfspaces)
    return poly


def _hull_facets(coords: list[tuple[Fraction, ...]], m: int) -> list[tuple[tuple, Fraction]]:
    """Facets ``(a, b)`` (meaning <a,c> + b >= 0) of a full-dimensional point set in Q^m."""
    if m == 1:
        lo = min(c[0] for c in coords)
        hi = max(c[0] for c in coords)
        return [((Fraction(1),), -lo), ((Fraction(-1),), hi)]
    if m == 2:
        hull = _convex_polygon_order(sorted(set(coords)))
        out = []
        for i in range(len(hull)):
            p, q = hull[i], hull[(i + 1) % len(hull)]
            # counter-clockwise: interior on the left
            a = (-(q[1] - p[1]), q[0] - p[0])
            out.append((a, -dot(a, p)))
        return out
    seen = {}
    for combo in itertools.combinations(range(len(coords)), m):
        p0 = coords[combo[0]]
        diffs = [[a - b for a, b in zip(coords[k], p0)] for k in combo[1:]]
        ns = nullspace(diffs, m)
        if len(ns) != 1:
            continue
        a = primitive(ns[0])
        vals = [dot(a, c) for c in coords]
        v0 = dot(a, p0)
        if all(v >= v0 for v in vals):
            seen[(a, -v0)] = None
        elif all(v <= v0 for v in vals):
            seen[(tuple(-x for x in a), v0)] = None
    return [(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in seen]


def lattice_points(P: Polytope) -> list[tuple[int, ...]]:
    """All integer points of the closed polytope, sorted."""
    if P.is_empty:
        return []
    lo, hi = P.bbox
    ranges = [np.arange(ceil(a), floor(b) + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    if any(len(r) == 0 for r in ranges):
        return []
    grid = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, P.ambient_dim)
    mask = np.ones(len(grid), dtype=bool)
    for h in P.facets:
        A, c, _ = h.scaled_ints()
        mask &= grid @ np.array(A, dtype=np.int64) + c >= 0
    for h in P.equalities:
        A, c, _ = h.scaled_ints()
        mask &= grid @ np.array(A, dtype=np.int64) + c == 0
    return [tuple(int(x) for x in row) for row in grid[mask]]


def count_dilate(P: Polytope, n: int, interior: bool = False) -> int:
    """``#(nP ∩ Z^d)`` (or the relative interior when ``interior``), n >= 0.

    Counts column by column along the last coordinate with integer arithmetic.
    """
    if P.is_empty:
        return 0
    d = P.ambient_dim
    if n == 0:
        if interior and P.dim > 0:
            return 0
        return 1
    rows = []  # (A, c, is_eq, strict): <A,x> + c >= 0 (or == 0)
    for h in P.facets:
        A, c, _ = h.scaled_ints()
        rows.append((A, c * n, False, interior))
    for h in P.equalities:
        A, c, _ = h.scaled_ints()
        rows.append((A, c * n, True, False))
    lo, hi = P.bbox
    lo = [ceil(n * x) for x in lo]
    hi = [floor(n * x) for x in hi]
    if any(a > b for a, b in zip(lo, hi)):
        return 0
    if d == 1:
        ys = np.zeros((1, 0), dtype=np.int64)
    else:
        ranges = [np.arange(lo[i], hi[i] + 1, dtype=np.int64) for i in range(d - 1)]
        ys = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, d - 1)
    zlo = np.full(len(ys), lo[-1], dtype=np.int64)
    zhi = np.full(len(ys), hi[-1], dtype=np.int64)
    ok = np.ones(len(ys), dtype=bool)
    for A, c, is_eq, strict in rows:
        a = np.array(A[:-1], dtype=np.int64)
        b = A[-1]
        rhs = ys @ a + c  # need rhs + b z >= 0 (> 0 if strict; == 0 if eq)
        if strict:
            rhs = rhs - 1
        if is_eq:
            if b == 0:
                ok &= rhs == 0
            else:
                divisible = (-rhs) % b == 0
                ok &= divisible
                zval = (-rhs) // b
                zlo = np.maximum(zlo, zval)
                zhi = np.minimum(zhi, zval)
        elif b > 0:
            zlo = np.maximum(zlo, -((rhs) // b))  # ceil(-rhs / b)
        elif b < 0:
            zhi = np.minimum(zhi, rhs // (-b))  # floor(rhs / -b)
        else:
            ok &= rhs >= 0
    cnt = np.where(ok, np.maximum(zhi - zlo + 1, 0), 0)
    return int(cnt.sum())


def minkowski_sum(P1: Polytope, P2: Polytope) -> Polytope:
    if P1.ambient_dim != P2.ambient_dim:
        raise DimensionMismatchError("Minkowski sum of polytopes in different dimensions")
    if P1.is_empty or P2.is_empty:
        return Polytope.empty(P1.ambient_dim)
    return convex_hull(tuple(a + b for a, b in zip(v, w)) for v in P1.vertices for w in P2.vertices)


def intersect(P1: Polytope, P2: Polytope) -> Polytope:
    if P1.ambient_dim != P2.ambient_dim:
        raise DimensionMismatchError("intersection of polytopes in different dimensions")
    if P1.is_empty or P2.is_empty:
        return Polytope.empty(P1.ambient_dim)
    if not bbox_overlap(P1, P2):
        return Polytope.empty(P1.ambient_dim)
    out = P1
    for h in P2.halfspaces:
        out = out.clip(h)
        if out.is_empty:
            break
    return out


def bbox_overlap(P1: Polytope, P2: Polytope, strict: bool = False) -> bool:
    (l1, h1), (l2, h2) = P1.bbox, P2.bbox
    if strict:
        return all(a < d and c < b for a, b, c, d in zip(l1, h1, l2, h2))
    return all(a <= d and c <= b for a, b, c, d in zip(l1, h1, l2, h2))


def subtract(C: Polytope, T: Polytope) -> list[Polytope]:
    """Pieces of ``closure(C \\ T)`` of the same dimension as ``C``.

    The pieces have pairwise intersections of lower dimension.  ``T`` may be
    lower-dimensional as long as it lies in the affine hull of ``C``; only its
    facet inequalities are used for the split.
    """
    if C.is_empty:
        return []
    inter = intersect(C, T)
    if inter.dim < C.dim:
        return [C]
    pieces = []
    rest = C
    for f in T.facets:
        out = rest.clip(f.flipped())
        if out.dim == C.dim:
            pieces.append(out)
        rest = rest.clip(f)
        if rest.dim < C.dim:
            break
    return pieces


def product(P: Polytope, Q: Polytope) -> Polytope:
    """Cartesian product ``P x Q``."""
    d1, d2 = P.ambient_dim, Q.ambient_dim
    verts = [v + w for v in P.vertices for w in Q.vertices]
    hs = [HalfSpace(h.normal + (0,) * d2, h.offset) for h in P.halfspaces]
    hs += [HalfSpace((0,) * d1 + h.normal, h.offset) for h in Q.halfspaces]
    return Polytope._canonical(d1 + d2, verts, hs)


def box(lo: Sequence, hi: Sequence) -> Polytope:
    hs = []
    for i, (a, b) in enumerate(zip(lo, hi)):
        e = [int(i == j) for j in range(len(lo))]
        hs.append(HalfSpace.make(e, -Fraction(a)))
        hs.append(HalfSpace.make([-x for x in e], Fraction(b)))
    return vertex_enumeration(hs, len(lo), check_bounded=False)
