"""Face lattices from vertex-facet incidences, and the statistics read off them.

Faces are vertex bitmasks (bit i set iff vertex i lies on the face).  The
lattice is built top-down: the faces covered by a face G are the
inclusion-maximal sets among ``G & F`` for facets F not containing G.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

import pynauty

from .exact import as_point, format_rational, parse_rational


class NotALattice(ValueError):
    """The incidence data is not the face lattice of a polytope."""


class NotPure(ValueError):
    pass


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class VertexFacetIncidence:
    dimension: int
    n_vertices: int
    facets: tuple  # sorted tuple of sorted vertex tuples

    @classmethod
    def from_facets(cls, dimension: int, n_vertices: int, facets: Iterable[Iterable[int]]) -> "VertexFacetIncidence":
        return cls(dimension, n_vertices, tuple(sorted(tuple(sorted(f)) for f in facets)))

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @property
    def matrix(self) -> list[list[bool]]:
        """The n_vertices x n_facets incidence bit matrix."""
        sets = [set(f) for f in self.facets]
        return [[v in s for s in sets] for v in range(self.n_vertices)]

    def masks(self) -> list[int]:
        return [to_mask(f) for f in self.facets]

    def transpose(self) -> "VertexFacetIncidence":
        stars = [[j for j, f in enumerate(self.facets) if v in f] for v in range(self.n_vertices)]
        return VertexFacetIncidence.from_facets(self.dimension, self.n_facets, stars)

    def check(self) -> None:
        d, n = self.dimension, self.n_vertices
        if len(set(self.facets)) != len(self.facets):
            raise NotALattice("two facets share a vertex set")
        for f in self.facets:
            if len(f) == n:
                raise NotALattice("a facet contains every vertex")
            if len(f) < d:
                raise NotALattice(f"facet {f} has fewer than {d} vertices")
            if any(not 0 <= v < n for v in f):
                raise NotALattice(f"facet {f} has an out-of-range vertex")
        stars = self.transpose().facets
        if len(stars) != n or any(len(s) < d for s in stars):
            raise NotALattice(f"some vertex lies on fewer than {d} facets")
        if len(set(stars)) != n:
            raise NotALattice("two vertices lie on the same facets")


@dataclass(frozen=True, eq=False)
class FaceLattice:
    """Graded face poset; ``faces[k + 1]`` holds the k-faces, k = -1..d.

    Within a rank, faces are ordered lexicographically by sorted vertex
    tuple, so facet i here is facet i of the incidence.
    """

    dimension: int
    n_vertices: int
    faces: tuple
    covers: dict = field(repr=False)  # face mask -> masks of the faces it covers

    def rank_of(self, mask: int) -> int:
        return self._rank[mask]

    @cached_property
    def _rank(self) -> dict:
        return {m: k - 1 for k, level in enumerate(self.faces) for m in level}

    def k_faces(self, k: int) -> tuple:
        return self.faces[k + 1]

    @property
    def facets(self) -> tuple:
        return self.faces[self.dimension]

    @property
    def edges(self) -> tuple:
        return self.faces[2] if self.dimension >= 1 else ()

    def incidence(self) -> VertexFacetIncidence:
        return VertexFacetIncidence.from_facets(self.dimension, self.n_vertices, (bits(m) for m in self.facets))

    def faces_below(self, mask: int) -> list[list[int]]:
        """Faces contained in ``mask`` grouped by rank -1..rank(mask)."""
        r = self.rank_of(mask)
        return [[g for g in self.faces[k + 1] if g & mask == g] for k in range(-1, r + 1)]

    def __eq__(self, other):
        return (isinstance(other, FaceLattice) and self.dimension == other.dimension
                and self.n_vertices == other.n_vertices and self.faces == other.faces)

    def __hash__(self):
        return hash((self.dimension, self.n_vertices, self.faces))


def lattice_from_incidence(inc: VertexFacetIncidence) -> FaceLattice:
    inc.check()
    d, n = inc.dimension, inc.n_vertices
    full = (1 << n) - 1
    facet_masks = inc.masks()
    levels = {d: [full], d - 1: list(facet_masks)}
    covers = {full: tuple(facet_masks)}
    seen = {full: d}
    for m in facet_masks:
        seen[m] = d - 1
    for k in range(d - 1, -1, -1):
        nxt = set()
        for g in levels[k]:
            cands = {g & f for f in facet_masks if g & f != g}
            maximal = [c for c in cands if not any(c != o and c & o == c for o in cands)]
            covers[g] = tuple(sorted(maximal, key=bits))
            nxt.update(maximal)
        for m in nxt:
            if seen.setdefault(m, k - 1) != k - 1:
                raise NotALattice("face appears at two different ranks")
        levels[k - 1] = sorted(nxt, key=bits)
    if levels[-1] != [0]:
        raise NotALattice("bottom of the poset is not the empty face")
    if sorted(levels[0]) != [1 << v for v in range(n)]:
        raise NotALattice("vertices are not exactly the rank-0 faces")
    covers[0] = ()
    _check_diamond(levels, covers, d)
    faces = tuple(tuple(levels[k]) for k in range(-1, d + 1))
    return FaceLattice(d, n, faces, covers)


def _check_diamond(levels: dict, covers: dict, d: int) -> None:
    for k in range(1, d + 1):
        for z in levels[k]:
            count: dict = {}
            for y in covers[z]:
                for x in covers[y]:
                    count[x] = count.get(x, 0) + 1
            if any(c != 2 for c in count.values()):
                raise NotALattice(f"diamond property fails below a {k}-face")


def f_vector(L: FaceLattice) -> tuple:
    return tuple(len(L.faces[k + 1]) for k in range(L.dimension))


def euler_characteristic_holds(fvec: Sequence[int], d: int) -> bool:
    return sum((-1) ** i * f for i, f in enumerate(fvec)) == 1 - (-1) ** d


def dual(L: FaceLattice) -> FaceLattice:
    return lattice_from_incidence(L.incidence().transpose())


def vertex_degrees(L: FaceLattice) -> list[int]:
    deg = [0] * L.n_vertices
    for e in L.edges:
        for v in bits(e):
            deg[v] += 1
    return deg


def degree_sequence(L: FaceLattice) -> tuple:
    return tuple(sorted(vertex_degrees(L), reverse=True))


def simple_vertices(L: FaceLattice) -> frozenset:
    return frozenset(v for v, k in enumerate(vertex_degrees(L)) if k == L.dimension)


def neighbours(L: FaceLattice, v: int) -> list[int]:
    bit = 1 << v
    return sorted(bits(e & ~bit)[0] for e in L.edges if e & bit)


def ridges_of(L: FaceLattice, facet_mask: int) -> tuple:
    return L.covers[facet_mask]


def boundary_of_facet_set(L: FaceLattice, S: Iterable[int]) -> tuple:
    """Ridges of the complex generated by facets ``S`` (indices) lying in exactly one of them."""
    S = sorted(set(S))
    if not S:
        raise ValueError("empty facet set")
    count: dict = {}
    for i in S:
        for r in L.covers[L.facets[i]]:
            count[r] = count.get(r, 0) + 1
    return tuple(sorted(tuple(bits(r)) for r, c in count.items() if c == 1))


def face_f_vector(L: FaceLattice, face: int | Iterable[int]) -> tuple:
    mask = face if isinstance(face, int) else to_mask(face)
    below = L.faces_below(mask)
    return tuple(len(level) for level in below[1:-1])


def facet_shape(L: FaceLattice, face: int | Iterable[int]) -> str:
    """Name the combinatorial type of a face; unknown types are tagged by f-vector."""
    mask = face if isinstance(face, int) else to_mask(face)
    k = L.rank_of(mask)
    fv = face_f_vector(L, mask)
    if not fv or fv[0] == k + 1:
        return "simplex"
    if k == 2 and fv[0] == 4:
        return "square"
    if k == 3:
        two_faces = [bin(g).count("1") for g in L.faces[3] if g & mask == g]
        squares = two_faces.count(4)
        if fv == (5, 8, 5) and squares == 1:
            return "square pyramid"
        if fv == (6, 9, 5) and squares == 3:
            return "triangular prism"
        if fv == (5, 9, 6) and squares == 0:
            return "triangular bipyramid"
    return "other(" + ",".join(map(str, fv)) + ")"


def facet_shapes(L: FaceLattice) -> list[str]:
    return [facet_shape(L, f) for f in L.facets]


def is_isomorphic(a: FaceLattice, b: FaceLattice) -> bool:
    """Combinatorial equivalence, via canonical forms of the vertex-facet incidence graph."""
    if a.dimension != b.dimension or f_vector(a) != f_vector(b):
        return False
    return canonical_form(a) == canonical_form(b)


def canonical_form(L: FaceLattice) -> bytes:
    """nauty certificate of the incidence graph, vertices and facets kept in separate colour classes."""
    n, m = L.n_vertices, len(L.facets)
    adjacency = {n + j: bits(f) for j, f in enumerate(L.facets)}
    g = pynauty.Graph(n + m, adjacency_dict=adjacency,
                      vertex_coloring=[set(range(n)), set(range(n, n + m))])
    return pynauty.certificate(g)


def h_vector(facets: Sequence[Iterable[int]]) -> tuple:
    """h-vector of a pure simplicial complex given by its facets."""
    facets = [frozenset(f) for f in facets]
    sizes = {len(f) for f in facets}
    if len(sizes) != 1:
        raise NotPure(f"facets of sizes {sorted(sizes)}")
    d = sizes.pop()
    faces = [set() for _ in range(d + 1)]
    faces[0].add(frozenset())
    for f in facets:
        _add_subsets(f, faces)
    fv = [len(level) for level in faces]  # fv[j] = f_{j-1}
    return tuple(
        sum((-1) ** (i - j) * comb(d - j, i - j) * fv[j] for j in range(i + 1))
        for i in range(d + 1)
    )


def _add_subsets(f: frozenset, faces: list) -> None:
    from itertools import combinations
    for r in range(1, len(f) + 1):
        faces[r].update(frozenset(c) for c in combinations(sorted(f), r))


# --- polytope JSON ---------------------------------------------------------

def polytope_to_dict(inc: VertexFacetIncidence, coords: Sequence | None = None) -> dict:
    doc = {"dim": inc.dimension, "n_vertices": inc.n_vertices, "facets": [list(f) for f in inc.facets]}
    if coords is not None:
        doc["coords"] = [[format_rational(x) for x in p] for p in coords]
    return doc


def polytope_from_dict(doc: dict) -> tuple[VertexFacetIncidence, list | None]:
    inc = VertexFacetIncidence.from_facets(int(doc["dim"]), int(doc["n_vertices"]), doc["facets"])
    coords = doc.get("coords")
    if coords is not None:
        coords = [as_point(parse_rational(str(x)) for x in p) for p in coords]
    return inc, coords


def dumps(doc: dict) -> str:
    return json.dumps(doc, separators=(", ", ": "), sort_keys=False) + "\n"
