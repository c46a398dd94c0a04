import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from polywitness.constructions import gale_facets
from polywitness.exact import affine_rank
from polywitness.hull import DegenerateInput, beyond_set, convex_hull
from polywitness.lattice import VertexFacetIncidence, euler_characteristic_holds, f_vector, lattice_from_incidence


def moment(t, d):
    return tuple(Fraction(t) ** k for k in range(1, d + 1))


def unit_simplex(d):
    return [tuple(int(i == j) for j in range(d)) for i in range(d)] + [(0,) * d]


def brute_force_facets(points):
    """Facets of a simplicial polytope: d-subsets with every other point on one side."""
    d = len(points[0])
    out = []
    for s in combinations(range(len(points)), d):
        signs = set()
        for q in range(len(points)):
            if q in s:
                continue
            rows = [[1, *points[i]] for i in s] + [[1, *points[q]]]
            signs.add(sympy.sign(sympy.Matrix(rows).det()))
        if len(signs) == 1 and 0 not in signs:
            out.append(s)
    return out


def hull_f_vector(points):
    H = convex_hull(points)
    inc = VertexFacetIncidence.from_facets(H.dimension, len(H.vertices), H.facet_sets())
    return f_vector(lattice_from_incidence(inc))


def test_unit_simplex_dim5():
    H = convex_hull(unit_simplex(5))
    assert len(H.facets) == 6 and all(len(f.vertices) == 5 for f in H.facets)


def test_moment_curve_5_7():
    assert hull_f_vector([moment(t, 5) for t in range(1, 8)]) == (7, 21, 34, 30, 12)


def test_moment_curve_4_6_has_nine_facets_matching_brute_force():
    pts = [moment(t, 4) for t in range(1, 7)]
    H = convex_hull(pts)
    brute = brute_force_facets(pts)
    assert len(H.facets) == len(brute) == 9
    assert set(H.facet_sets(relabel=False)) == set(brute)


@pytest.mark.parametrize("d,n", [(4, 7), (4, 8), (5, 8), (5, 9)])
def test_moment_curve_facets_satisfy_gale_evenness(d, n):
    H = convex_hull([moment(t, d) for t in range(1, n + 1)])
    assert set(H.facet_sets(relabel=False)) == set(gale_facets(d, n))


def test_facets_sorted_and_ridges_shared_by_two():
    H = convex_hull([moment(t, 4) for t in range(1, 9)])
    sets = H.facet_sets(relabel=False)
    assert list(sets) == sorted(sets)
    d = H.dimension
    for i, j in H.ridges:
        common = H.facets[i].vertices & H.facets[j].vertices
        assert len(common) >= d - 1


def test_degenerate_input():
    with pytest.raises(DegenerateInput):
        convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])


def test_coplanar_points_merge_into_one_facet():
    cube = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    H = convex_hull(cube)
    assert len(H.facets) == 6 and all(len(f.vertices) == 4 for f in H.facets)


def test_interior_points_are_not_vertices():
    pts = unit_simplex(3) + [(Fraction(1, 5),) * 3, (Fraction(1, 10), Fraction(1, 10), 0)]
    H = convex_hull(pts)
    assert H.vertices == (0, 1, 2, 3)


def test_beyond_set_examples():
    H = convex_hull(unit_simplex(5))
    assert beyond_set(H, (Fraction(1, 6),) * 5) == frozenset()
    far = (Fraction(3, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    (i,) = beyond_set(H, far)
    assert H.facets[i].vertices == frozenset(range(5))
    on_facet = (Fraction(1, 5),) * 5
    assert beyond_set(H, on_facet) == frozenset()


def test_idempotent_on_vertices():
    pts = [moment(t, 4) for t in range(1, 9)] + [(Fraction(10),) * 4]
    H = convex_hull(pts)
    H2 = convex_hull([pts[v] for v in H.vertices])
    assert H2.facet_sets() == H.facet_sets()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(*[st.integers(-6, 6)] * 3), min_size=4, max_size=12, unique=True),
       st.randoms(use_true_random=False))
def test_permutation_invariance_and_euler(pts, rnd):
    if affine_rank(pts) < 3:
        with pytest.raises(DegenerateInput):
            convex_hull(pts)
        return
    H = convex_hull(pts)
    perm = list(range(len(pts)))
    rnd.shuffle(perm)
    H2 = convex_hull([pts[i] for i in perm])
    relabelled = {tuple(sorted(perm[i] for i in f)) for f in H2.facet_sets(relabel=False)}
    assert relabelled == set(H.facet_sets(relabel=False))
    for f in H.facets:
        for q, p in enumerate(pts):
            s = f.hyperplane.value(p)
            assert s <= 0
            if q in H.vertices:  # a non-vertex boundary point may sit on a facet plane
                assert (s == 0) == (q in f.vertices)
    inc = VertexFacetIncidence.from_facets(3, len(H.vertices), H.facet_sets())
    assert euler_characteristic_holds(f_vector(lattice_from_incidence(inc)), 3)


def test_random_dim6_simplex_plus_points():
    rnd = random.Random(0)
    pts = unit_simplex(6) + [tuple(Fraction(rnd.randint(-3, 3), 7) for _ in range(6)) for _ in range(4)]
    H = convex_hull(pts)
    inc = VertexFacetIncidence.from_facets(6, len(H.vertices), H.facet_sets())
    assert euler_characteristic_holds(f_vector(lattice_from_incidence(inc)), 6)
