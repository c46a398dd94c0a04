"""Polytope recipes and their two semantics.

A :class:`Recipe` is a small AST.  ``combinatorial(r)`` evaluates it with
incidence rules only; ``realize(r)`` builds rational coordinates and checks
every step against the exact hull.  Vertex numbering is the same on both
sides (pyramid apex last, product vertex ``(i, j) -> i * n_Q + j``, dual
vertices in facet order, new vertices appended), so the two results can be
compared facet for facet, not just by f-vector.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Sequence

from .exact import RationalPoint
from .hull import HullResult, beyond_set, convex_hull
from .lattice import (
    FaceLattice,
    VertexFacetIncidence,
    bits,
    degree_sequence,
    euler_characteristic_holds,
    f_vector,
    lattice_from_incidence,
    neighbours,
    simple_vertices,
    to_mask,
)

MAX_DIM = 6
MAX_HALVINGS = 60


class ConstructionError(ValueError):
    pass


class BadDimension(ConstructionError):
    pass


class NotSimple(ConstructionError):
    pass


class NotASimplexFacet(ConstructionError):
    pass


class PlacementFailed(ConstructionError):
    pass


class CrossCheckMismatch(AssertionError):
    """Combinatorial and geometric semantics disagree (internal inconsistency)."""


class RecipeSyntaxError(ValueError):
    pass


# --- AST ------------------------------------------------------------------

class Recipe:
    def __str__(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class Simplex(Recipe):
    d: int

    def __str__(self):
        return f"(simplex {self.d})"


@dataclass(frozen=True)
class Cyclic(Recipe):
    d: int
    n: int

    def __str__(self):
        return f"(cyclic {self.d} {self.n})"


@dataclass(frozen=True)
class Pyramid(Recipe):
    inner: Recipe

    def __str__(self):
        return f"(pyr {self.inner})"


@dataclass(frozen=True)
class Dual(Recipe):
    inner: Recipe

    def __str__(self):
        return f"(dual {self.inner})"


@dataclass(frozen=True)
class TruncateSimpleVertex(Recipe):
    inner: Recipe
    vertex: int | None = None

    def __str__(self):
        sel = "" if self.vertex is None else f" {self.vertex}"
        return f"(trunc {self.inner}{sel})"


@dataclass(frozen=True)
class StackOnSimplexFacet(Recipe):
    inner: Recipe
    facet: int | None = None

    def __str__(self):
        sel = "" if self.facet is None else f" {self.facet}"
        return f"(stack {self.inner}{sel})"


@dataclass(frozen=True)
class Product(Recipe):
    left: Recipe
    right: Recipe

    def __str__(self):
        return f"(prod {self.left} {self.right})"


@dataclass(frozen=True)
class PlaceBeyond(Recipe):
    inner: Recipe
    facets: tuple

    def __str__(self):
        return f"(beyond {self.inner} ({' '.join(map(str, self.facets))}))"


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_recipe(text: str) -> Recipe:
    tokens = _TOKEN.findall(text)
    pos = 0

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            raise RecipeSyntaxError(f"expected {tok!r} at token {pos}")
        pos += 1

    def integer():
        nonlocal pos
        if pos >= len(tokens) or not re.fullmatch(r"\d+", tokens[pos]):
            raise RecipeSyntaxError(f"expected an integer at token {pos}")
        pos += 1
        return int(tokens[pos - 1])

    def optional_int():
        if pos < len(tokens) and re.fullmatch(r"\d+", tokens[pos]):
            return integer()
        return None

    def node() -> Recipe:
        nonlocal pos
        expect("(")
        if pos >= len(tokens):
            raise RecipeSyntaxError("unexpected end of recipe")
        head = tokens[pos]
        pos += 1
        if head == "simplex":
            r = Simplex(integer())
        elif head == "cyclic":
            r = Cyclic(integer(), integer())
        elif head == "pyr":
            r = Pyramid(node())
        elif head == "dual":
            r = Dual(node())
        elif head == "trunc":
            r = TruncateSimpleVertex(node(), optional_int())
        elif head == "stack":
            r = StackOnSimplexFacet(node(), optional_int())
        elif head == "prod":
            r = Product(node(), node())
        elif head == "beyond":
            inner = node()
            expect("(")
            sel = []
            while pos < len(tokens) and tokens[pos] != ")":
                sel.append(integer())
            expect(")")
            r = PlaceBeyond(inner, tuple(sel))
        else:
            raise RecipeSyntaxError(f"unknown constructor {head!r}")
        expect(")")
        return r

    r = node()
    if pos != len(tokens):
        raise RecipeSyntaxError("trailing tokens after recipe")
    return r


# --- combinatorial rules ----------------------------------------------------

def gale_facets(d: int, n: int) -> list[tuple]:
    """d-subsets of range(n) satisfying Gale's evenness condition."""
    out = []
    for s in combinations(range(n), d):
        members = set(s)
        outside = [i for i in range(n) if i not in members]
        if all(sum(1 for k in s if a < k < b) % 2 == 0 for a, b in zip(outside, outside[1:])):
            out.append(s)
    return out


def simplex_incidence(d: int) -> VertexFacetIncidence:
    return VertexFacetIncidence.from_facets(d, d + 1, combinations(range(d + 1), d))


def cyclic_incidence(d: int, n: int) -> VertexFacetIncidence:
    return VertexFacetIncidence.from_facets(d, n, gale_facets(d, n))


def pyramid_incidence(inc: VertexFacetIncidence) -> VertexFacetIncidence:
    n = inc.n_vertices
    facets = [tuple(range(n))] + [f + (n,) for f in inc.facets]
    return VertexFacetIncidence.from_facets(inc.dimension + 1, n + 1, facets)


def dual_incidence(inc: VertexFacetIncidence) -> VertexFacetIncidence:
    return inc.transpose()


def product_incidence(p: VertexFacetIncidence, q: VertexFacetIncidence) -> VertexFacetIncidence:
    nq = q.n_vertices
    facets = [[i * nq + j for i in f for j in range(nq)] for f in p.facets]
    facets += [[i * nq + j for i in range(p.n_vertices) for j in g] for g in q.facets]
    return VertexFacetIncidence.from_facets(p.dimension + q.dimension, p.n_vertices * nq, facets)


def select_simple_vertex(L: FaceLattice, v: int | None) -> int:
    simple = simple_vertices(L)
    if v is None:
        if not simple:
            raise NotSimple("polytope has no simple vertex")
        return min(simple)
    if v not in simple:
        raise NotSimple(f"vertex {v} is not simple")
    return v


def truncate_incidence(L: FaceLattice, v: int) -> VertexFacetIncidence:
    n, d = L.n_vertices, L.dimension
    nbrs = neighbours(L, v)
    new = {u: n - 1 + k for k, u in enumerate(nbrs)}

    def old(w):
        return w if w < v else w - 1

    facets = []
    for f in L.incidence().facets:
        if v in f:
            facets.append([old(w) for w in f if w != v] + [new[u] for u in nbrs if u in f])
        else:
            facets.append([old(w) for w in f])
    facets.append(sorted(new.values()))
    return VertexFacetIncidence.from_facets(d, n - 1 + len(nbrs), facets)


def select_simplex_facet(inc: VertexFacetIncidence, f: int | None) -> int:
    d = inc.dimension
    if f is None:
        for i, facet in enumerate(inc.facets):
            if len(facet) == d:
                return i
        raise NotASimplexFacet("polytope has no simplex facet")
    if not 0 <= f < inc.n_facets or len(inc.facets[f]) != d:
        raise NotASimplexFacet(f"facet {f} is not a simplex")
    return f


def stack_incidence(inc: VertexFacetIncidence, f: int) -> VertexFacetIncidence:
    n = inc.n_vertices
    target = inc.facets[f]
    facets = [g for i, g in enumerate(inc.facets) if i != f]
    facets += [tuple(w for w in target if w != u) + (n,) for u in target]
    return VertexFacetIncidence.from_facets(inc.dimension, n + 1, facets)


def beyond_incidence(L: FaceLattice, S: Sequence[int]) -> VertexFacetIncidence:
    """Generic placement of a new vertex beyond exactly the facets ``S``."""
    n, d = L.n_vertices, L.dimension
    S = set(S)
    if not S or any(not 0 <= i < len(L.facets) for i in S):
        raise ConstructionError(f"bad facet subset {sorted(S)}")
    in_s = {L.facets[i] for i in S}
    horizon = set()
    for i in S:
        for r in L.covers[L.facets[i]]:
            if any(f & r == r and f not in in_s for f in L.facets):
                horizon.add(r)
    kept = [m for m in L.facets if m not in in_s]
    new_masks = kept + [r | (1 << n) for r in horizon]
    alive = sorted(set().union(*(bits(m) for m in new_masks)))
    relabel = {v: i for i, v in enumerate(alive)}
    facets = [[relabel[v] for v in bits(m)] for m in new_masks]
    return VertexFacetIncidence.from_facets(d, len(alive), facets)


# --- realized polytopes -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class Polytope:
    """Incidence plus rational coordinates, hull-verified to agree exactly."""

    incidence: VertexFacetIncidence
    coords: tuple

    @property
    def dimension(self) -> int:
        return self.incidence.dimension

    @property
    def n_vertices(self) -> int:
        return self.incidence.n_vertices

    @cached_property
    def lattice(self) -> FaceLattice:
        return lattice_from_incidence(self.incidence)

    @cached_property
    def hull(self) -> HullResult:
        return convex_hull(self.coords)

    @property
    def f_vector(self) -> tuple:
        return f_vector(self.lattice)


def hull_incidence(coords: Sequence[RationalPoint]) -> tuple[VertexFacetIncidence, HullResult]:
    h = convex_hull(coords)
    return VertexFacetIncidence(h.dimension, len(h.vertices), h.facet_sets()), h


def _certify(predicted: VertexFacetIncidence, coords: list) -> Polytope | None:
    inc, h = hull_incidence(coords)
    if inc != predicted:
        return None
    vertices = [coords[i] for i in h.vertices]
    p = Polytope(predicted, tuple(vertices))
    p.__dict__["hull"] = h if len(vertices) == len(coords) else convex_hull(vertices)
    return p


def _require(predicted, coords, what) -> Polytope:
    p = _certify(predicted, coords)
    if p is None:
        raise CrossCheckMismatch(f"{what}: hull of the realization disagrees with the incidence rule")
    return p


def _barycenter(points: Sequence[RationalPoint]) -> RationalPoint:
    k = len(points)
    return tuple(sum(c) / k for c in zip(*points))


def simplex(d: int) -> Polytope:
    if not 1 <= d <= MAX_DIM:
        raise BadDimension(f"simplex dimension {d} outside 1..{MAX_DIM}")
    coords = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)] + [tuple(Fraction(0) for _ in range(d))]
    return _require(simplex_incidence(d), coords, "simplex")


def cyclic(d: int, n: int) -> Polytope:
    if not 2 <= d <= MAX_DIM:
        raise BadDimension(f"cyclic dimension {d} outside 2..{MAX_DIM}")
    if n < d + 1:
        raise ConstructionError(f"cyclic({d}, {n}) needs at least {d + 1} vertices")
    coords = [tuple(Fraction(t ** k) for k in range(1, d + 1)) for t in range(1, n + 1)]
    return _require(cyclic_incidence(d, n), coords, "cyclic")


def pyramid(P: Polytope) -> Polytope:
    if P.dimension >= MAX_DIM:
        raise BadDimension("pyramid would exceed the supported dimension")
    base = [p + (Fraction(0),) for p in P.coords]
    apex = _barycenter(P.coords) + (Fraction(1),)
    return _require(pyramid_incidence(P.incidence), base + [apex], "pyramid")


def product(P: Polytope, Q: Polytope) -> Polytope:
    if P.dimension + Q.dimension > MAX_DIM:
        raise BadDimension("product would exceed the supported dimension")
    coords = [p + q for p in P.coords for q in Q.coords]
    return _require(product_incidence(P.incidence, Q.incidence), coords, "product")


def dual(P: Polytope) -> Polytope:
    """Polar dual about the vertex barycenter; dual vertex j is facet j of P."""
    c = _barycenter(P.coords)
    pts = []
    for facet in P.hull.facets:
        a = facet.hyperplane.normal
        b = facet.hyperplane.offset - sum(x * y for x, y in zip(a, c))
        pts.append(tuple(Fraction(x) / b for x in a))
    return _require(dual_incidence(P.incidence), pts, "dual")


def truncate_simple_vertex(P: Polytope, v: int | None = None) -> Polytope:
    L = P.lattice
    v = select_simple_vertex(L, v)
    predicted = truncate_incidence(L, v)
    x = P.coords[v]
    nbrs = neighbours(L, v)
    rest = [p for i, p in enumerate(P.coords) if i != v]
    t = Fraction(1, 2)
    for _ in range(MAX_HALVINGS):
        cut = [tuple(a + t * (b - a) for a, b in zip(x, P.coords[u])) for u in nbrs]
        out = _certify(predicted, rest + cut)
        if out is not None:
            return out
        t /= 2
    raise PlacementFailed(f"no truncation depth reproduces the predicted lattice at vertex {v}")


def stack_on_simplex_facet(P: Polytope, f: int | None = None) -> Polytope:
    f = select_simplex_facet(P.incidence, f)
    predicted = stack_incidence(P.incidence, f)
    facet = P.hull.facets[f]
    b = _barycenter([P.coords[i] for i in sorted(facet.vertices)])
    n = facet.hyperplane.normal
    s = Fraction(1, max(abs(a) for a in n))
    for _ in range(MAX_HALVINGS):
        p = tuple(x + s * a for x, a in zip(b, n))
        if beyond_set(P.hull, p) == {f}:
            out = _certify(predicted, list(P.coords) + [p])
            if out is not None:
                return out
        s /= 2
    raise PlacementFailed(f"could not place a point beyond facet {f} alone")


def place_beyond(P: Polytope, S: Sequence[int]) -> Polytope:
    S = tuple(sorted(set(S)))
    predicted = beyond_incidence(P.lattice, S)
    target = frozenset(S)
    for p in _beyond_candidates(P, S):
        if beyond_set(P.hull, p) != target:
            continue
        out = _certify(predicted, list(P.coords) + [p])
        if out is not None:
            return out
    raise PlacementFailed(f"no point found beyond exactly facets {list(S)}")


def _beyond_candidates(P: Polytope, S: tuple):
    """Halving walk off the common face of S, then a max-margin LP point."""
    hull = P.hull
    masks = [to_mask(hull.facets[i].vertices) for i in S]
    common = masks[0]
    for m in masks[1:]:
        common &= m
    anchor = bits(common) or sorted(set().union(*(hull.facets[i].vertices for i in S)))
    base = _barycenter([P.coords[i] for i in anchor])
    direction = [Fraction(0)] * P.dimension
    for i in S:
        n = hull.facets[i].hyperplane.normal
        top = max(abs(a) for a in n)
        direction = [x + Fraction(a, top) for x, a in zip(direction, n)]
    s = Fraction(1)
    for _ in range(MAX_HALVINGS // 2):
        yield tuple(x + s * a for x, a in zip(base, direction))
        s /= 2
    yield from _lp_candidates(P, S)


def _lp_candidates(P: Polytope, S: tuple):
    import numpy as np
    from scipy.optimize import linprog

    hull = P.hull
    d = P.dimension
    A, ub = [], []
    for i, f in enumerate(hull.facets):
        n = np.array([float(a) for a in f.hyperplane.normal])
        norm = float(np.linalg.norm(n))
        sign = -1.0 if i in S else 1.0
        A.append(list(sign * n / norm) + [1.0])
        ub.append(sign * float(f.hyperplane.offset) / norm)
    lo = [float(min(c)) for c in zip(*P.coords)]
    hi = [float(max(c)) for c in zip(*P.coords)]
    span = max(h - l for l, h in zip(lo, hi)) or 1.0
    bounds = [(l - 4 * span, h + 4 * span) for l, h in zip(lo, hi)] + [(None, span)]
    res = linprog(c=[0.0] * d + [-1.0], A_ub=A, b_ub=ub, bounds=bounds, method="highs")
    if res.status != 0 or res.x[-1] <= 1e-12:
        return
    for den in (10, 10**3, 10**6, 10**9, 10**12):
        yield tuple(Fraction(float(x)).limit_denominator(den) for x in res.x[:d])


# --- recipe evaluation ------------------------------------------------------

@lru_cache(maxsize=None)
def combinatorial(r: Recipe) -> VertexFacetIncidence:
    """Rule-only semantics: no coordinates are ever consulted."""
    if isinstance(r, Simplex):
        if not 1 <= r.d <= MAX_DIM:
            raise BadDimension(f"simplex dimension {r.d} outside 1..{MAX_DIM}")
        return simplex_incidence(r.d)
    if isinstance(r, Cyclic):
        if not 2 <= r.d <= MAX_DIM or r.n < r.d + 1:
            raise BadDimension(f"bad cyclic parameters ({r.d}, {r.n})")
        return cyclic_incidence(r.d, r.n)
    if isinstance(r, Pyramid):
        inner = combinatorial(r.inner)
        if inner.dimension >= MAX_DIM:
            raise BadDimension("pyramid would exceed the supported dimension")
        return pyramid_incidence(inner)
    if isinstance(r, Dual):
        return dual_incidence(combinatorial(r.inner))
    if isinstance(r, TruncateSimpleVertex):
        L = lattice_from_incidence(combinatorial(r.inner))
        return truncate_incidence(L, select_simple_vertex(L, r.vertex))
    if isinstance(r, StackOnSimplexFacet):
        inner = combinatorial(r.inner)
        return stack_incidence(inner, select_simplex_facet(inner, r.facet))
    if isinstance(r, Product):
        a, b = combinatorial(r.left), combinatorial(r.right)
        if a.dimension + b.dimension > MAX_DIM:
            raise BadDimension("product would exceed the supported dimension")
        return product_incidence(a, b)
    if isinstance(r, PlaceBeyond):
        return beyond_incidence(lattice_from_incidence(combinatorial(r.inner)), r.facets)
    raise TypeError(f"not a recipe: {r!r}")


@lru_cache(maxsize=None)
def realize(r: Recipe) -> Polytope:
    """Geometric semantics, each step certified against the exact hull."""
    if isinstance(r, Simplex):
        return simplex(r.d)
    if isinstance(r, Cyclic):
        return cyclic(r.d, r.n)
    if isinstance(r, Pyramid):
        return pyramid(realize(r.inner))
    if isinstance(r, Dual):
        return dual(realize(r.inner))
    if isinstance(r, TruncateSimpleVertex):
        return truncate_simple_vertex(realize(r.inner), r.vertex)
    if isinstance(r, StackOnSimplexFacet):
        return stack_on_simplex_facet(realize(r.inner), r.facet)
    if isinstance(r, Product):
        return product(realize(r.left), realize(r.right))
    if isinstance(r, PlaceBeyond):
        return place_beyond(realize(r.inner), r.facets)
    raise TypeError(f"not a recipe: {r!r}")


@dataclass(frozen=True, eq=False)
class Evaluation:
    recipe: Recipe
    polytope: Polytope
    f_vector: tuple
    checks: dict = field(default_factory=dict)

    @property
    def lattice(self) -> FaceLattice:
        return self.polytope.lattice

    @property
    def coords(self) -> tuple:
        return self.polytope.coords


def evaluate(r: Recipe | str) -> Evaluation:
    """Run both semantics and cross-check the full f-vector."""
    if isinstance(r, str):
        r = parse_recipe(r)
    comb_inc = combinatorial(r)
    comb_f = f_vector(lattice_from_incidence(comb_inc))
    P = realize(r)
    hull_inc, _ = hull_incidence(P.coords)
    hull_L = lattice_from_incidence(hull_inc)
    hull_f = f_vector(hull_L)
    if comb_f != hull_f:
        raise CrossCheckMismatch(f"{r}: combinatorial f-vector {comb_f} vs hull f-vector {hull_f}")
    d = hull_L.dimension
    checks = {
        "combinatorial_f_vector": list(comb_f),
        "hull_f_vector": list(hull_f),
        "f_vectors_agree": True,
        "incidence_identical": comb_inc == hull_inc,
        "euler": euler_characteristic_holds(hull_f, d),
        "degree_sum": sum(degree_sequence(hull_L)) == 2 * hull_f[1] if d >= 2 else True,
    }
    return Evaluation(r, P, hull_f, checks)
