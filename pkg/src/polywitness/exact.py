"""Exact rational geometry: points, hyperplanes, side and rank predicates.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator.  Linear algebra runs fraction-free on
integer rows so that pivoting is deterministic and nothing is ever rounded.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction
RationalPoint = tuple  # tuple[Fraction, ...]


class AffinelyDependent(ValueError):
    """The given points do not span a hyperplane."""


class DimensionMismatch(ValueError):
    pass


def as_point(coords: Iterable) -> RationalPoint:
    return tuple(Fraction(c) for c in coords)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def integer_row(row: Sequence) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    fr = [Fraction(x) for x in row]
    m = lcm(*(x.denominator for x in fr)) if fr else 1
    return [int(x * m) for x in fr]


def echelon(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan elimination over the integers.

    Pivots are chosen column by column, taking the first row (in current
    order) with a nonzero entry.  Returns the reduced nonzero rows and their
    pivot columns.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        if pr[c] < 0:
            pr[:] = [-x for x in pr]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                a, b = pr[c], m[i][c]
                row = [a * x - b * y for x, y in zip(m[i], pr)]
                g = _content(row)
                m[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_rank(rows: Sequence[Sequence]) -> int:
    return len(echelon([integer_row(r) for r in rows])[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of the right null space, one vector per free column."""
    red, pivots = echelon([integer_row(r) for r in rows])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        scale = 1
        for row, p in zip(red, pivots):
            if row[f]:
                scale = lcm(scale, row[p])
        vec = [0] * ncols
        vec[f] = scale
        for row, p in zip(red, pivots):
            vec[p] = -row[f] * scale // row[p]
        g = _content(vec)
        basis.append(tuple(x // g for x in vec))
    return basis


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    if not points:
        raise ValueError("affine_rank needs at least one point")
    p0 = [Fraction(x) for x in points[0]]
    diffs = [[Fraction(x) - y for x, y in zip(p, p0)] for p in points[1:]]
    if not diffs:
        return 0
    return matrix_rank(diffs)


@dataclass(frozen=True)
class Hyperplane:
    """The set ``{x : normal . x == offset}`` with integer, content-one coefficients.

    ``canonical`` additionally fixes the sign (first nonzero normal entry
    positive).  Facet planes produced by the hull are *oriented* instead:
    same content-one scaling, sign chosen so the polytope lies on the
    negative side.
    """

    normal: tuple[int, ...]
    offset: int

    def __post_init__(self):
        if not any(self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    @classmethod
    def from_rational(cls, normal: Sequence, offset, canonical: bool = True) -> "Hyperplane":
        row = integer_row(list(normal) + [offset])
        g = _content(row)
        row = [x // g for x in row]
        if canonical:
            lead = next(x for x in row[:-1] if x != 0)
            if lead < 0:
                row = [-x for x in row]
        return cls(tuple(row[:-1]), row[-1])

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def canonical(self) -> "Hyperplane":
        return Hyperplane.from_rational(self.normal, self.offset)

    def flipped(self) -> "Hyperplane":
        return Hyperplane(tuple(-x for x in self.normal), -self.offset)

    def value(self, p: Sequence) -> Fraction:
        return sum((a * Fraction(x) for a, x in zip(self.normal, p)), Fraction(0)) - self.offset

    def oriented_away_from(self, interior: Sequence) -> "Hyperplane":
        v = self.value(interior)
        if v == 0:
            raise ValueError("reference point lies on the hyperplane")
        return self if v < 0 else self.flipped()


def side_of(h: Hyperplane, p: Sequence) -> int:
    """Sign of ``normal . p - offset``."""
    if len(p) != h.dimension:
        raise DimensionMismatch(f"point of dimension {len(p)} vs hyperplane of dimension {h.dimension}")
    v = h.value(p)
    return (v > 0) - (v < 0)


def hyperplane_spanning(points: Sequence[Sequence]) -> Hyperplane:
    """Canonical hyperplane through a point set whose affine hull has codimension one."""
    d = len(points[0])
    p0 = [Fraction(x) for x in points[0]]
    diffs = [[Fraction(x) - y for x, y in zip(p, p0)] for p in points[1:]]
    basis = nullspace(diffs, d) if diffs else [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
    if len(basis) != 1:
        raise AffinelyDependent(f"points span an affine space of codimension {len(basis)}")
    n = basis[0]
    return Hyperplane.from_rational(n, sum(a * x for a, x in zip(n, p0)))


def hyperplane_through(points: Sequence[Sequence]) -> Hyperplane:
    """Unique hyperplane through exactly d affinely independent points in dimension d."""
    if not points:
        raise AffinelyDependent("no points")
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise DimensionMismatch("points of mixed dimension")
    if len(points) != d:
        raise ValueError(f"need exactly {d} points in dimension {d}, got {len(points)}")
    return hyperplane_spanning(points)
