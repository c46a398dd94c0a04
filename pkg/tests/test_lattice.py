import json
from itertools import combinations

import pytest
from hypothesis import given, settings

from polywitness.constructions import cyclic_incidence, evaluate, simplex_incidence
from polywitness.lattice import (
    NotALattice,
    NotPure,
    VertexFacetIncidence,
    boundary_of_facet_set,
    degree_sequence,
    dual,
    dumps,
    euler_characteristic_holds,
    f_vector,
    facet_shape,
    facet_shapes,
    h_vector,
    is_isomorphic,
    lattice_from_incidence,
    polytope_from_dict,
    polytope_to_dict,
    simple_vertices,
    vertex_degrees,
)

from .recipes import recipe_strategy

P_A = "(pyr (pyr (prod (simplex 1) (simplex 1))))"
P_D = "(prod (simplex 2) (simplex 2))"


def test_simplex5():
    L = lattice_from_incidence(simplex_incidence(5))
    assert f_vector(L) == (6, 15, 20, 15, 6)
    assert degree_sequence(L) == (5,) * 6
    assert simple_vertices(L) == frozenset(range(6))
    assert f_vector(dual(L)) == f_vector(L)
    assert set(facet_shapes(L)) == {"simplex"}


def test_cyclic_5_7_lattice():
    L = lattice_from_incidence(cyclic_incidence(5, 7))
    assert f_vector(L) == (7, 21, 34, 30, 12)
    assert simple_vertices(L) == frozenset()
    D = dual(L)
    assert f_vector(D)[:2] == (12, 30)
    assert sum(vertex_degrees(D)) == 60
    assert simple_vertices(D) == frozenset(range(12))


def test_product_of_triangles():
    L = evaluate(P_D).lattice
    assert f_vector(L) == (9, 18, 15, 6)
    assert facet_shapes(L) == ["triangular prism"] * 6


def test_pyramid_over_square_pyramid_shapes():
    L = evaluate(P_A).lattice
    assert f_vector(L)[3] == 6
    assert sorted(facet_shapes(L)) == ["simplex"] * 4 + ["square pyramid"] * 2


def test_shapes_of_small_faces():
    sq = evaluate("(cyclic 2 4)").lattice
    pyr = evaluate("(pyr (pyr (cyclic 2 4)))").lattice
    assert facet_shape(pyr, pyr.facets[0]) in {"simplex", "square pyramid"}
    assert facet_shape(evaluate("(pyr (cyclic 2 4))").lattice, (0, 1, 2, 3)) == "square"
    assert f_vector(sq) == (4, 4)
    bip = evaluate("(pyr (stack (simplex 3)))").lattice
    assert "triangular bipyramid" in facet_shapes(bip)
    assert facet_shape(evaluate("(pyr (cyclic 3 7))").lattice, tuple(range(7))) == "other(7,15,10)"


def test_h_vector_examples():
    assert h_vector(list(combinations(range(5), 4))) == (1, 1, 1, 1, 1)
    assert h_vector([range(5)]) == (1, 0, 0, 0, 0, 0)
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    c4 = [(5 + i, 5 + (i + 1) % 4) for i in range(4)]
    assert h_vector([a + b for a in c5 for b in c4]) == (1, 5, 8, 5, 1)
    with pytest.raises(NotPure):
        h_vector([(0, 1), (1, 2, 3)])


def test_boundary_of_facet_set():
    L = lattice_from_incidence(simplex_incidence(4))
    assert boundary_of_facet_set(L, range(len(L.facets))) == ()
    one = boundary_of_facet_set(L, [0])
    assert one == tuple(sorted(combinations(L.incidence().facets[0], 3)))


def test_boundary_of_side_facets_of_prism_is_two_disjoint_simplex_boundaries():
    # simplex(4) x segment: the five side facets bound two disjoint copies of
    # the boundary of a 4-simplex (the two end caps)
    L = evaluate("(prod (simplex 4) (simplex 1))").lattice
    shapes = facet_shapes(L)
    side = [i for i, s in enumerate(shapes) if s != "simplex"]
    assert len(side) == 5
    ridges = boundary_of_facet_set(L, side)
    # product labels vertex (i, j) as 2i + j, so the caps are the even and odd vertices
    caps = [[v for v in range(10) if v % 2 == k] for k in (0, 1)]
    assert ridges == tuple(sorted(r for cap in caps for r in combinations(cap, 4)))


@pytest.mark.parametrize("bad", [
    VertexFacetIncidence.from_facets(2, 4, [(0, 1), (1, 2), (2, 3)]),
    VertexFacetIncidence.from_facets(3, 4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2)]),
    VertexFacetIncidence.from_facets(3, 5, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3, 4)]),
])
def test_not_a_lattice(bad):
    with pytest.raises(NotALattice):
        lattice_from_incidence(bad)


def test_json_round_trip():
    ev = evaluate("(trunc (simplex 3))")
    doc = polytope_to_dict(ev.polytope.incidence, ev.coords)
    inc, coords = polytope_from_dict(json.loads(dumps(doc)))
    assert inc == ev.polytope.incidence and tuple(coords) == tuple(ev.coords)
    assert all("/" in x for p in doc["coords"] for x in p)


@settings(max_examples=50, deadline=None)
@given(recipe_strategy())
def test_lattice_invariants_on_random_recipes(r):
    L = evaluate(r).lattice
    fv = f_vector(L)
    assert euler_characteristic_holds(fv, L.dimension)
    assert sum(vertex_degrees(L)) == 2 * fv[1]
    assert f_vector(dual(L)) == fv[::-1]
    assert is_isomorphic(dual(dual(L)), L)
    assert lattice_from_incidence(L.incidence()) == L


def test_dehn_sommerville_on_simplicial_fixtures():
    for r in ["(cyclic 5 7)", "(cyclic 5 9)", "(stack (cyclic 5 8))", "(cyclic 4 8)"]:
        L = evaluate(r).lattice
        h = h_vector(L.incidence().facets)
        assert h == h[::-1]


def test_isomorphism_distinguishes():
    a = evaluate("(trunc (simplex 4))").lattice
    b = evaluate("(pyr (prod (simplex 1) (simplex 2)))").lattice
    assert not is_isomorphic(a, b)
    assert is_isomorphic(a, evaluate("(trunc (simplex 4) 3)").lattice)
