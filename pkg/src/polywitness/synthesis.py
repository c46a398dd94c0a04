"""Witness synthesis for E^3, E^4, E^5 and independent verification.

The 5-dimensional synthesizer follows the sufficiency argument directly:
a short table of special witnesses, pyramids over 4-polytopes in the band
e >= 3v - 3, and otherwise truncation of a simple vertex of a witness for
(v - 4, e - 10).  The 3- and 4-dimensional synthesizers are engineering
ladders; every witness, whoever found it, is certified by the hull.
"""
from __future__ import annotations

import json
import threading
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable

from .constructions import (
    ConstructionError,
    CrossCheckMismatch,
    Cyclic,
    Dual,
    PlaceBeyond,
    Product,
    Pyramid,
    Recipe,
    Simplex,
    StackOnSimplexFacet,
    TruncateSimpleVertex,
    cyclic_incidence,
    evaluate,
    hull_incidence,
    parse_recipe,
)
from .lattice import (
    NotALattice,
    VertexFacetIncidence,
    degree_sequence,
    euler_characteristic_holds,
    f_vector,
    lattice_from_incidence,
    polytope_from_dict,
    polytope_to_dict,
)
from .membership import Reason, in_E


class NotInE(ValueError):
    def __init__(self, d: int, v: int, e: int, reason: Reason):
        super().__init__(f"({v}, {e}) is not in E^{d}: {reason.value}")
        self.d, self.v, self.e, self.reason = d, v, e, reason


class NotInE3(NotInE):
    pass


class NotInE4(NotInE):
    pass


class NotInE5(NotInE):
    pass


_NOT_IN = {3: NotInE3, 4: NotInE4, 5: NotInE5}


class Unreachable(RuntimeError):
    """The strategy ladder and search found no witness for an admissible pair."""


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class SynthesisConfig:
    bfs_max_nodes: int = 400
    bfs_max_vertices_slack: int = 0


DEFAULT_CONFIG = SynthesisConfig()


@dataclass(frozen=True)
class WitnessCertificate:
    dimension: int
    target: tuple
    recipe: Recipe
    f_vector: tuple
    checks: dict
    coords: tuple | None = None
    facets: tuple | None = None

    def to_dict(self, with_coords: bool = False) -> dict:
        doc = {
            "dim": self.dimension,
            "v": self.target[0],
            "e": self.target[1],
            "recipe": str(self.recipe),
            "f_vector": list(self.f_vector),
            "checks": self.checks,
        }
        if with_coords and self.coords is not None:
            inc = VertexFacetIncidence(self.dimension, len(self.coords), self.facets)
            doc.update(polytope_to_dict(inc, self.coords))
        return doc

    def to_json(self, with_coords: bool = False) -> str:
        return json.dumps(self.to_dict(with_coords), indent=1) + "\n"


# --- memo -------------------------------------------------------------------

_memo: dict = {}
_memo_lock = threading.Lock()


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


def _remember(key, build: Callable[[], Recipe]) -> Recipe:
    with _memo_lock:
        if key in _memo:
            return _memo[key]
    r = build()
    with _memo_lock:
        return _memo.setdefault(key, r)  # first writer wins


def _check(d: int, v: int, e: int) -> None:
    verdict = in_E(d, v, e)
    if not verdict.inside:
        raise _NOT_IN[d](d, v, e, verdict.reason)


# --- dimension 3 --------------------------------------------------------------

def recipe3(v: int, e: int) -> Recipe:
    """Pyramid over an n-gon with a stacked triangles, or the dual of one."""
    _check(3, v, e)
    return _remember((3, v, e), lambda: _recipe3(v, e))


def _recipe3(v: int, e: int) -> Recipe:
    if e < 2 * v - 2:
        return Dual(recipe3(e - v + 2, e))
    n = 3 * v - e - 3
    r: Recipe = Simplex(3) if n == 3 else Pyramid(Cyclic(2, n))
    for _ in range(e - 2 * v + 2):
        r = StackOnSimplexFacet(r)
    return r


# --- dimension 4 --------------------------------------------------------------

SPECIAL4 = {
    (9, 18): "(prod (simplex 2) (simplex 2))",
    # dual of an almost simplicial polytope with one bipyramid facet
    (11, 23): "(dual (beyond (pyr (stack (simplex 3))) (1 2)))",
    # dual of a simplicial polytope with 13 facets
    (13, 26): "(dual (beyond (cyclic 4 6) (0 1)))",
}


def recipe4(v: int, e: int, config: SynthesisConfig = DEFAULT_CONFIG) -> Recipe:
    _check(4, v, e)
    return _remember((4, v, e), lambda: _recipe4(v, e, config))


@lru_cache(maxsize=None)
def _cyclic4_index(n: int) -> dict:
    return {f: i for i, f in enumerate(cyclic_incidence(4, n).facets)}


def _edge_chain(n: int, m: int) -> tuple:
    """Facets {0,1,j,j+1}, j = 2..m-2, of cyclic(4, n): a stacked ball on m vertices."""
    idx = _cyclic4_index(n)
    return tuple(sorted(idx[(0, 1, j, j + 1)] for j in range(2, m - 1)))


def _recipe4(v: int, e: int, config: SynthesisConfig) -> Recipe:
    if (v, e) in SPECIAL4:
        return parse_recipe(SPECIAL4[(v, e)])
    if v == 5:
        return Simplex(4)
    if e == comb(v, 2):
        return Cyclic(4, v)
    if 2 * e >= 5 * v - 5 and e <= 4 * v - 10:
        return Pyramid(recipe3(v - 1, e - v + 1))
    if 2 * e < 5 * v - 5:
        # average degree < 5, so the smaller witness has a simple vertex
        try:
            return TruncateSimpleVertex(recipe4(v - 3, e - 6, config))
        except NotInE:
            return search4(v, e, config)
    m = e - comb(v - 1, 2)
    if m >= 5:
        return PlaceBeyond(Cyclic(4, v - 1), _edge_chain(v - 1, m))
    return StackOnSimplexFacet(recipe4(v - 1, e - 4, config))


def search4(v: int, e: int, config: SynthesisConfig = DEFAULT_CONFIG) -> Recipe:
    """Breadth-first search over recipe moves, every node hull-verified.

    Fallback for pairs the ladder does not reach.  Seeds are simplex(4),
    cyclic(4, k) for k ascending, pyramids and prisms over 3-polytopes; moves
    (stack, truncate, dual, place beyond an adjacent facet pair) are tried in
    a fixed order, so the result is deterministic.
    """
    seeds: list[Recipe] = [Simplex(4)] + [Cyclic(4, k) for k in range(6, v + 1)]
    small3 = [(v3, e3) for v3 in range(4, v) for e3 in range((3 * v3 + 1) // 2, 3 * v3 - 5)]
    seeds += [Pyramid(recipe3(v3, e3)) for v3, e3 in small3]
    seeds += [Product(Simplex(1), recipe3(v3, e3)) for v3, e3 in small3 if 2 * v3 <= v]
    queue = deque(seeds)
    seen = set()
    explored = 0
    while queue and explored < config.bfs_max_nodes:
        r = queue.popleft()
        key = str(r)
        if key in seen:
            continue
        seen.add(key)
        try:
            ev = evaluate(r)
        except (ConstructionError, CrossCheckMismatch, NotALattice):
            continue
        explored += 1
        f0, f1 = ev.f_vector[:2]
        if (f0, f1) == (v, e):
            return r
        if f0 > v + config.bfs_max_vertices_slack:
            continue
        for nxt in _moves4(r, ev):
            if str(nxt) not in seen:
                queue.append(nxt)
    raise Unreachable(f"no 4-dimensional witness found for ({v}, {e})")


def _moves4(r: Recipe, ev) -> list[Recipe]:
    L = ev.lattice
    out: list[Recipe] = [StackOnSimplexFacet(r), TruncateSimpleVertex(r), Dual(r)]
    out += [PlaceBeyond(r, pair) for pair in _adjacent_pairs(L)]
    return out


def _adjacent_pairs(L) -> list[tuple]:
    index = {m: i for i, m in enumerate(L.facets)}
    pairs = set()
    for r in L.faces[L.dimension - 1]:
        owners = [index[f] for f in L.facets if f & r == r]
        if len(owners) == 2:
            pairs.add(tuple(owners))
    return sorted(pairs)


# --- dimension 5 --------------------------------------------------------------

SPECIAL5 = {
    (12, 30): "(dual (cyclic 5 7))",
    (17, 45): "(stack (trunc (dual (cyclic 5 7))))",
}


def recipe5(v: int, e: int, config: SynthesisConfig = DEFAULT_CONFIG) -> Recipe:
    _check(5, v, e)
    return _remember((5, v, e), lambda: _recipe5(v, e, config))


def _recipe5(v: int, e: int, config: SynthesisConfig) -> Recipe:
    if (v, e) in SPECIAL5:
        return parse_recipe(SPECIAL5[(v, e)])
    if e >= 3 * v - 3 and (v, e) not in {(7, 18), (8, 21), (9, 25), (11, 30)}:
        return Pyramid(recipe4(v - 1, e - v + 1, config))
    # e - 10 <= 3(v - 4) - 1, so the smaller witness has a simple vertex
    return TruncateSimpleVertex(recipe5(v - 4, e - 10, config))


RECIPES = {3: recipe3, 4: recipe4, 5: recipe5}


def recipe_for(d: int, v: int, e: int) -> Recipe:
    if d not in RECIPES:
        raise ValueError(f"no synthesizer for dimension {d}")
    return RECIPES[d](v, e)


def synthesize(d: int, v: int, e: int, with_coords: bool = False) -> WitnessCertificate:
    r = recipe_for(d, v, e)
    ev = evaluate(r)
    if ev.f_vector[:2] != (v, e):
        raise CrossCheckMismatch(f"{r} certifies {ev.f_vector[:2]}, expected {(v, e)}")
    if not all(x for x in ev.checks.values() if isinstance(x, bool)):
        raise CrossCheckMismatch(f"{r}: failed checks {ev.checks}")
    return WitnessCertificate(
        d, (v, e), r, ev.f_vector, ev.checks,
        coords=ev.coords if with_coords else None,
        facets=ev.polytope.incidence.facets if with_coords else None,
    )


def synthesize3(v: int, e: int, with_coords: bool = False) -> WitnessCertificate:
    return synthesize(3, v, e, with_coords)


def synthesize4(v: int, e: int, with_coords: bool = False) -> WitnessCertificate:
    return synthesize(4, v, e, with_coords)


def synthesize5(v: int, e: int, with_coords: bool = False) -> WitnessCertificate:
    return synthesize(5, v, e, with_coords)


# --- atlas --------------------------------------------------------------------

STATUS = {
    Reason.OK: "IN",
    Reason.InL: "L",
    Reason.InG: "G",
    Reason.Grunbaum4Exception: "EXC4",
}


@dataclass(frozen=True)
class AtlasRow:
    v: int
    e: int
    status: str
    recipe: str


def atlas_row(d: int, v: int, with_recipes: bool = True) -> list[AtlasRow]:
    rows = []
    for e in range((d * v + 1) // 2 - 1, comb(v, 2) + 2):
        verdict = in_E(d, v, e)
        status = STATUS.get(verdict.reason, "BOUND")
        recipe = ""
        if verdict.inside and with_recipes:
            recipe = str(synthesize(d, v, e).recipe)
        rows.append(AtlasRow(v, e, status, recipe))
    return rows


def atlas(d: int, v_max: int, with_recipes: bool = True, workers: int = 1) -> list[AtlasRow]:
    if v_max < d + 1:
        raise ValueError(f"v_max must be at least {d + 1}")
    vs = list(range(d + 1, v_max + 1))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(atlas_row, [d] * len(vs), vs, [with_recipes] * len(vs)))
    else:
        chunks = [atlas_row(d, v, with_recipes) for v in vs]
    return sorted((r for c in chunks for r in c), key=lambda r: (r.v, r.e))


def atlas_csv(rows: list[AtlasRow]) -> str:
    lines = ["v,e,status,recipe"]
    lines += [f'{r.v},{r.e},{r.status},"{r.recipe}"' if r.recipe else f"{r.v},{r.e},{r.status}," for r in rows]
    return "\n".join(lines) + "\n"


PLOT_CLASSES = {"IN": "inside", "L": "L", "G": "G", "EXC4": "excluded", "BOUND": "bound"}


def atlas_plotdata(rows: list[AtlasRow]) -> dict:
    """Point classes for a scatter plot: black dots, white circles (L), triangles (G)."""
    out = {name: [] for name in PLOT_CLASSES.values()}
    for r in rows:
        out[PLOT_CLASSES[r.status]].append([r.v, r.e])
    return out


# --- verification -------------------------------------------------------------

def verify_document(doc: dict) -> dict:
    """Re-check a certificate or polytope document; returns check name -> bool."""
    checks: dict = {}
    if "recipe" in doc:
        try:
            r = parse_recipe(doc["recipe"])
        except ValueError as ex:
            raise ParseError(str(ex)) from ex
        ev = evaluate(r)
        checks["recipe_f_vector"] = list(ev.f_vector) == list(doc.get("f_vector", []))
        if "v" in doc:
            checks["target"] = tuple(ev.f_vector[:2]) == (doc["v"], doc["e"])
        checks["membership"] = in_E(ev.lattice.dimension, *ev.f_vector[:2]).inside if ev.lattice.dimension in (3, 4, 5) else True
        checks["semantics_agree"] = bool(ev.checks["f_vectors_agree"])
        if "facets" not in doc:
            checks["euler"] = bool(ev.checks["euler"])
            checks["degree_sum"] = bool(ev.checks["degree_sum"])
            return checks
    try:
        inc, coords = polytope_from_dict(doc)
    except (KeyError, TypeError, ValueError) as ex:
        raise ParseError(f"not a polytope document: {ex}") from ex
    try:
        L = lattice_from_incidence(inc)
    except NotALattice:
        checks["lattice"] = False
        return checks
    checks["lattice"] = True
    fv = f_vector(L)
    checks["euler"] = euler_characteristic_holds(fv, L.dimension)
    checks["degree_sum"] = sum(degree_sequence(L)) == 2 * fv[1] if L.dimension >= 2 else True
    if "f_vector" in doc:
        checks["f_vector"] = list(fv) == list(doc["f_vector"])
    if coords is not None:
        try:
            hinc, _ = hull_incidence(coords)
        except ValueError as ex:
            raise CrossCheckMismatch(f"coordinates do not span a {inc.dimension}-polytope: {ex}") from ex
        if hinc != inc:
            raise CrossCheckMismatch("hull of the coordinates disagrees with the facet list")
        checks["hull_cross_check"] = True
    return checks


def verify_text(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as ex:
        raise ParseError(str(ex)) from ex
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object")
    return verify_document(doc)
