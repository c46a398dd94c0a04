"""Exact incremental (beneath-beyond) convex hull in any fixed dimension.

Points are inserted in input order after an initial simplex built from the
first affinely independent points.  Facets are stored as (vertex bitmask,
integer hyperplane) with the polytope on the negative side.  Points lying on
a facet plane extend that facet instead of spawning a coplanar duplicate, so
non-simplicial facets come out whole.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Sequence

from .exact import Hyperplane, as_point, affine_rank, nullspace, side_of


class DegenerateInput(ValueError):
    """The points do not affinely span the ambient space."""


@dataclass(frozen=True)
class Facet:
    vertices: frozenset
    hyperplane: Hyperplane  # oriented: interior strictly negative


@dataclass(frozen=True)
class HullResult:
    dimension: int
    vertices: tuple
    facets: tuple
    ridges: tuple

    def facet_sets(self, relabel: bool = True) -> tuple:
        """Facet vertex sets as sorted tuples, optionally renumbered to 0..f0-1."""
        if not relabel:
            return tuple(tuple(sorted(f.vertices)) for f in self.facets)
        pos = {v: i for i, v in enumerate(self.vertices)}
        return tuple(sorted(tuple(sorted(pos[v] for v in f.vertices)) for f in self.facets))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _plane(pts: list[tuple[int, ...]], d: int):
    p0 = pts[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in pts[1:]]
    basis = nullspace(diffs, d)
    if len(basis) != 1:
        return None
    n = basis[0]
    return n, _dot(n, p0)


def _is_ridge(i: int, j: int, masks: list[int], d: int) -> bool:
    inter = masks[i] & masks[j]
    if inter.bit_count() < d - 1:
        return False
    for k, m in enumerate(masks):
        if k != i and k != j and m & inter == inter:
            return False
    return True


def convex_hull(points: Sequence[Sequence]) -> HullResult:
    pts = [as_point(p) for p in points]
    if not pts:
        raise DegenerateInput("no points")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DegenerateInput("points of mixed dimension")
    if len(pts) < d + 1 or affine_rank(pts) < d:
        raise DegenerateInput(f"points do not span dimension {d}")

    scale = lcm(*(c.denominator for p in pts for c in p))
    ip = [tuple(int(c * scale) for c in p) for p in pts]

    basis = [0]
    for i in range(1, len(ip)):
        if affine_rank([ip[j] for j in basis] + [ip[i]]) == len(basis):
            basis.append(i)
            if len(basis) == d + 1:
                break
    # centroid of the initial simplex, scaled by d+1 to stay integral
    centre = tuple(sum(ip[j][k] for j in basis) for k in range(d))

    def orient(n, off):
        v = _dot(n, centre) - off * (d + 1)
        return (n, off) if v < 0 else (tuple(-x for x in n), -off)

    masks: list[int] = []
    planes: list[tuple] = []
    for skip in basis:
        face = [j for j in basis if j != skip]
        masks.append(sum(1 << j for j in face))
        planes.append(orient(*_plane([ip[j] for j in face], d)))
    current = sum(1 << j for j in basis)

    in_basis = set(basis)
    for idx in range(len(ip)):
        if idx in in_basis:
            continue
        p = ip[idx]
        sides = [_dot(n, p) - off for n, off in planes]
        visible = [i for i, s in enumerate(sides) if s > 0]
        if not visible:
            continue
        vis = set(visible)
        new_planes: dict = {}
        existing = {pl for i, pl in enumerate(planes) if i not in vis}
        for i in visible:
            for j in range(len(masks)):
                if j in vis or sides[j] == 0:
                    continue
                if not _is_ridge(i, j, masks, d):
                    continue
                ridge = masks[i] & masks[j]
                pl = _plane([ip[k] for k in _bits(ridge)] + [p], d)
                if pl is None:
                    raise AssertionError("horizon ridge and new point are affinely dependent")
                pl = orient(*pl)
                if pl not in existing:
                    new_planes[pl] = None
        current |= 1 << idx
        verts = list(_bits(current))
        kept_masks = []
        kept_planes = []
        for i, (m, pl) in enumerate(zip(masks, planes)):
            if i in vis:
                continue
            kept_masks.append(m | (1 << idx) if sides[i] == 0 else m)
            kept_planes.append(pl)
        for n, off in new_planes:
            kept_masks.append(sum(1 << v for v in verts if _dot(n, ip[v]) == off))
            kept_planes.append((n, off))
        masks, planes = kept_masks, kept_planes
        # drop points that stopped being vertices
        for v in verts:
            bit = 1 << v
            inter = -1
            for m in masks:
                if m & bit:
                    inter &= m
            if inter != bit:
                current &= ~bit
        masks = [m & current for m in masks]

    order = sorted(range(len(masks)), key=lambda i: tuple(_bits(masks[i])))
    masks = [masks[i] for i in order]
    planes = [planes[i] for i in order]
    facets = tuple(
        Facet(frozenset(_bits(m)), Hyperplane.from_rational([x * scale for x in n], off, canonical=False))
        for m, (n, off) in zip(masks, planes)
    )
    ridges = tuple((i, j) for i in range(len(masks)) for j in range(i + 1, len(masks)) if _is_ridge(i, j, masks, d))
    return HullResult(d, tuple(_bits(current)), facets, ridges)


def beyond_set(hull: HullResult, p: Sequence) -> frozenset:
    """Indices of facets whose outer open half-space contains p."""
    return frozenset(i for i, f in enumerate(hull.facets) if side_of(f.hyperplane, p) > 0)
