"""Exact integer and rational linear algebra.

Everything here works on plain Python ``int`` and ``fractions.Fraction``
values held in lists/tuples; nothing is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

IntMatrix = list[list[int]]


class DegenerateSpanError(ValueError):
    pass


class OffHullError(ValueError):
    pass


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(cols)] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def det(M) -> Fraction | int:
    """Exact determinant: cofactor expansion up to 3x3, Fraction elimination above."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        a, b, c = M
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    A = [list(map(Fraction, row)) for row in M]
    sign = 1
    result = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if A[r][i] != 0), None)
        if piv is None:
            return 0
        if piv != i:
            A[i], A[piv] = A[piv], A[i]
            sign = -sign
        result *= A[i][i]
        for r in range(i + 1, n):
            if A[r][i]:
                f = A[r][i] / A[i][i]
                A[r] = [x - f * y for x, y in zip(A[r], A[i])]
    return sign * result


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows, ncols: int | None = None) -> list[list[Fraction]]:
    """Rational basis of {x : A x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def primitive(v) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def solve(A, b) -> list[Fraction] | None:
    """Unique solution of a square system A x = b, or None when singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for i in range(n):
        piv = next((r for r in range(i, n) if M[r][i] != 0), None)
        if piv is None:
            return None
        M[i], M[piv] = M[piv], M[i]
        p = M[i][i]
        M[i] = [x / p for x in M[i]]
        for r in range(n):
            if r != i and M[r][i] != 0:
                f = M[r][i]
                M[r] = [x - f * y for x, y in zip(M[r], M[i])]
    return [M[i][n] for i in range(n)]


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Args:
      M: integer matrix (list of rows).

    Returns:
      ``(H, U)`` with ``U`` unimodular and ``U @ M == H``. ``H`` is in row
      echelon form, pivots are positive and the entries above each pivot lie
      in ``[0, pivot)``; zero rows sit at the bottom.
    """
    H = [list(map(int, row)) for row in M]
    m = len(H)
    n = len(H[0]) if m else 0
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid down the column until a single nonzero entry is left at row r.
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[i0] = H[i0], H[r]
            U[r], U[i0] = U[i0], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def is_hermite_normal_form(H) -> bool:
    last = -1
    seen_zero = False
    for k, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x != 0]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        for above in H[:k]:
            if not 0 <= above[p] < row[p]:
                return False
        last = p
    return True


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Basis of the integer lattice {x in Z^n : A x = 0}."""
    if not rows:
        return identity(ncols)
    At = transpose([list(map(int, r)) for r in rows])
    H, U = hermite_normal_form(At)
    return [U[i] for i in range(ncols) if not any(H[i])]


def saturated_lattice_basis(spanning: Sequence[Sequence]) -> IntMatrix:
    """Basis of (linear span of ``spanning``) intersected with Z^d.

    The result is returned in Hermite normal form, so it is canonical for the
    subspace.
    """
    vecs = [list(v) for v in spanning]
    if not vecs:
        raise DegenerateSpanError("degenerate span")
    d = len(vecs[0])
    if rank(vecs) == 0:
        raise DegenerateSpanError("degenerate span")
    perp = [list(primitive(w)) for w in nullspace(vecs, d)]
    basis = integer_kernel(perp, d)
    H, _ = hermite_normal_form(basis)
    return [row for row in H if any(row)]


@dataclass(frozen=True)
class AffineLatticeFrame:
    """Affine hull of a point set, with a Z-basis of its direction lattice."""

    base_point: tuple[Fraction, ...]
    direction_basis: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.direction_basis)

    @classmethod
    def from_points(cls, points: Sequence[Sequence]) -> "AffineLatticeFrame":
        pts = [tuple(Fraction(x) for x in p) for p in points]
        base = pts[0]
        diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
        diffs = [v for v in diffs if any(v)]
        if not diffs or rank(diffs) == 0:
            return cls(base, ())
        basis = saturated_lattice_basis(diffs)
        return cls(base, tuple(tuple(b) for b in basis))

    def point(self, coords: Sequence) -> tuple[Fraction, ...]:
        p = list(self.base_point)
        for c, b in zip(coords, self.direction_basis):
            p = [x + c * y for x, y in zip(p, b)]
        return tuple(p)


def lattice_coordinates(frame: AffineLatticeFrame, p: Sequence) -> tuple[Fraction, ...]:
    """Coordinates of ``p`` in the frame's basis: p = base + sum c_i b_i."""
    diff = [Fraction(x) - y for x, y in zip(p, frame.base_point)]
    if frame.m == 0:
        if any(diff):
            raise OffHullError("point outside affine hull")
        return ()
    B = frame.direction_basis
    # Pick m independent coordinates; the remaining ones are a consistency check.
    cols = _independent_rows(B)
    A = [[B[j][i] for j in range(len(B))] for i in cols]
    c = solve(A, [diff[i] for i in cols])
    if c is None:
        raise OffHullError("degenerate frame")
    back = list(frame.point(c))
    if back != [Fraction(x) for x in p]:
        raise OffHullError("point outside affine hull")
    return tuple(c)


def _independent_rows(B) -> list[int]:
    """Coordinate indices i such that the m x m minor of B on columns i is invertible."""
    # Pivots of the RREF of B (rows = basis vectors) are such column indices.
    _, piv = rref([list(b) for b in B])
    return piv
