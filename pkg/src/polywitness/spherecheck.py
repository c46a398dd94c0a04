"""Executable necessary conditions for simplicial spheres and balls.

None of these decide sphere-ness; they are the counting facts (h-vectors,
upper/lower bounds, missing faces) used when ruling out edge counts.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .lattice import FaceLattice, facet_shapes, h_vector


class UnsupportedDimension(ValueError):
    pass


class Unclassifiable(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    n_vertices: int
    facets: tuple  # sorted tuple of sorted vertex tuples

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], n_vertices: int | None = None) -> "SimplicialComplex":
        fs = sorted({tuple(sorted(f)) for f in facets})
        maximal = [f for f in fs if not any(f != g and set(f) <= set(g) for g in fs)]
        n = n_vertices if n_vertices is not None else 1 + max((v for f in fs for v in f), default=-1)
        return cls(n, tuple(maximal))

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def faces(self) -> set:
        out = {()}
        for f in self.facets:
            for r in range(1, len(f) + 1):
                out.update(combinations(f, r))
        return out

    def h_vector(self) -> tuple:
        return h_vector(self.facets)

    def to_json(self) -> str:
        return json.dumps({"n": self.n_vertices, "facets": [list(f) for f in self.facets]})

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        doc = json.loads(text)
        return cls.from_facets(doc["facets"], int(doc["n"]))


def cycle(n: int, offset: int = 0) -> SimplicialComplex:
    return SimplicialComplex.from_facets(((offset + i, offset + (i + 1) % n) for i in range(n)), offset + n)


def simplex_boundary(k: int) -> SimplicialComplex:
    """Boundary of the k-simplex on vertices 0..k."""
    return SimplicialComplex.from_facets(combinations(range(k + 1), k), k + 1)


def is_neighbourly(K: SimplicialComplex) -> bool:
    edges = {e for f in K.facets for e in combinations(f, 2)}
    used = sorted({v for f in K.facets for v in f})
    return all(e in edges for e in combinations(used, 2))


def lbt_min_facets_3sphere(n: int) -> int:
    if n < 5:
        raise ValueError("a simplicial 3-sphere has at least 5 vertices")
    return max(5, 3 * n - 10)


def ubt_max_facets_3sphere(n: int) -> int:
    if n < 5:
        raise ValueError("a simplicial 3-sphere has at least 5 vertices")
    return n * (n - 3) // 2


@dataclass(frozen=True)
class BallReport:
    h: tuple
    failures: tuple = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failures


def ball_h_checks(K: SimplicialComplex | Sequence[int], n_facets: int | None = None) -> BallReport:
    """Check h0 = 1, h_{d+1} = 0, sum h = #facets and h >= 0 for a candidate ball.

    Accepts a complex, or a bare h-vector together with its facet count.
    """
    if isinstance(K, SimplicialComplex):
        h = K.h_vector()
        n_facets = len(K.facets)
    else:
        h = tuple(K)
        if n_facets is None:
            raise ValueError("a bare h-vector needs its facet count")
    failures = []
    if h[0] != 1 or h[-1] != 0:
        failures.append("(i) h_0 = 1 and h_{d+1} = 0")
    if sum(h) != n_facets:
        failures.append("(ii) sum of h equals the number of facets")
    if any(x < 0 for x in h):
        failures.append("(iii) h_i >= 0")
    return BallReport(h, tuple(failures))


def boundary_h_from_ball(h: Sequence[int]) -> tuple:
    """h-vector of the boundary sphere of a ball with h-vector (h_0, ..., h_{d+1})."""
    h = list(h)
    if h[0] != 1 or h[-1] != 0:
        raise ValueError("not the h-vector of a ball: need h_0 = 1 and h_{d+1} = 0")
    d = len(h) - 2  # ball dimension
    out = []
    total = 0
    for i in range(d + 1):
        total += h[i] - (h[d + 1 - i] if i > 0 else 0)
        out.append(total)
    return tuple(out)


def missing_faces(K: SimplicialComplex, min_dim: int = 0) -> list[tuple]:
    """Minimal non-faces of dimension >= min_dim, by exhaustive subset search."""
    faces = K.faces()
    verts = sorted({v for f in K.facets for v in f})
    top = K.dimension + 2  # a missing face has at most dim + 2 vertices
    out = []
    for size in range(max(min_dim + 1, 2), top + 1):
        for s in combinations(verts, size):
            if s in faces:
                continue
            if all(t in faces for t in combinations(s, size - 1)):
                out.append(s)
    return out


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Join, with K2's vertices shifted past K1's."""
    shift = K1.n_vertices
    facets = [f + tuple(v + shift for v in g) for f in K1.facets for g in K2.facets]
    return SimplicialComplex.from_facets(facets, K1.n_vertices + K2.n_vertices)


def pm_boundary_min_facets(boundary_vertex_count: int, interior_vertex_count: int, d: int) -> int:
    """Facet lower bound for a 4-dimensional pseudomanifold with boundary."""
    if d != 4:
        raise UnsupportedDimension("only the 4-dimensional instance of this bound is available")
    return boundary_vertex_count + d * interior_vertex_count - d


def is_pseudomanifold(K: SimplicialComplex) -> bool:
    """Pure, every ridge in at most two facets, strongly connected."""
    if not K.is_pure():
        return False
    ridges = Counter(r for f in K.facets for r in combinations(f, len(f) - 1))
    if any(c > 2 for c in ridges.values()):
        return False
    seen = {0}
    stack = [0]
    by_ridge: dict = {}
    for i, f in enumerate(K.facets):
        for r in combinations(f, len(f) - 1):
            by_ridge.setdefault(r, []).append(i)
    while stack:
        i = stack.pop()
        for r in combinations(K.facets[i], len(K.facets[i]) - 1):
            for j in by_ridge[r]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == len(K.facets)


def pseudomanifold_boundary(K: SimplicialComplex) -> SimplicialComplex:
    ridges = Counter(r for f in K.facets for r in combinations(f, len(f) - 1))
    return SimplicialComplex.from_facets((r for r, c in ridges.items() if c == 1), K.n_vertices)


SIX_FACET_TYPES = {
    "P_A": Counter({"square pyramid": 2, "simplex": 4}),
    "P_B": Counter({"square pyramid": 3, "triangular prism": 1, "simplex": 2}),
    "P_C": Counter({"triangular prism": 4, "simplex": 2}),
    "P_D": Counter({"triangular prism": 6}),
}


def classify_6facet_4polytope(L: FaceLattice) -> str:
    if L.dimension != 4 or len(L.facets) != 6:
        raise Unclassifiable("not a 4-polytope with 6 facets")
    shapes = Counter(facet_shapes(L))
    for tag, expected in SIX_FACET_TYPES.items():
        if shapes == expected:
            return tag
    raise Unclassifiable(f"facet shapes {dict(shapes)} match none of the four types")


def boundary_complex(L: FaceLattice) -> SimplicialComplex:
    """Boundary complex of a simplicial polytope."""
    from .lattice import bits
    facets = [bits(f) for f in L.facets]
    if any(len(f) != L.dimension for f in facets):
        raise ValueError("polytope is not simplicial")
    return SimplicialComplex.from_facets(facets, L.n_vertices)
