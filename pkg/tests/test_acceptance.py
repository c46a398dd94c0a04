"""The acceptance suite: one pass/fail line per criterion.

Run under pytest (lines are printed in the terminal summary) or directly
with ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from contextlib import contextmanager
from math import comb
from pathlib import Path

import pytest

if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from polywitness.constructions import evaluate
from polywitness.lattice import (
    degree_sequence,
    dual,
    euler_characteristic_holds,
    facet_shapes,
    is_isomorphic,
)
from polywitness.membership import Reason, column, in_E, phi
from polywitness.spherecheck import boundary_h_from_ball, classify_6facet_4polytope, cycle, join
from polywitness.synthesis import NotInE, synthesize, synthesize5

from tests.recipes import apply_move, random_chain

RESULTS: list = []


@contextmanager
def criterion(n: int, title: str, budget: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException as ex:
        RESULTS.append(f"criterion {n:2d} FAIL  {title}: {type(ex).__name__}: {ex}")
        raise
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed >= budget:
        line = f"criterion {n:2d} FAIL  {title} ({elapsed:.2f}s, budget {budget:g}s)"
        RESULTS.append(line)
        raise AssertionError(line)
    RESULTS.append(f"criterion {n:2d} PASS  {title} ({elapsed:.2f}s)")


def test_01_cyclic_fixture():
    with criterion(1, "f(cyclic(5,7)) = (7,21,34,30,12) via the hull", 1.0):
        ev = evaluate("(cyclic 5 7)")
        assert ev.checks["hull_f_vector"] == [7, 21, 34, 30, 12]


def test_02_dual_fixture():
    with criterion(2, "dual(cyclic(5,7)) has (f0, f1) = (12, 30)", 1.0):
        assert evaluate("(dual (cyclic 5 7))").f_vector[:2] == (12, 30)


def test_03_17_45_chain():
    with criterion(3, "(stack (trunc (dual (cyclic 5 7)))) certifies (17, 45)", 5.0):
        ev = evaluate("(stack (trunc (dual (cyclic 5 7))))")
        assert ev.f_vector[:2] == (17, 45)
        assert ev.checks["f_vectors_agree"] and ev.checks["incidence_identical"]


def test_04_membership_table():
    with criterion(4, "membership table for d = 3, 4, 5", 1.0):
        G = {(8, 20), (9, 25), (13, 35)}
        for v in range(6, 41):
            outside = {e for e in range(comb(v, 2) + 3) if not in_E(5, v, e).inside}
            bounds = {e for e in range(comb(v, 2) + 3) if 2 * e < 5 * v or e > comb(v, 2)}
            L = {(5 * v + 2) // 2} if v >= 7 else set()
            assert outside == bounds | L | {e for (w, e) in G if w == v}, v
        exceptions = set()
        for v in range(5, 41):
            for e in range(comb(v, 2) + 3):
                in_bounds = 4 * v <= 2 * e <= 2 * comb(v, 2)
                if in_bounds and not in_E(4, v, e).inside:
                    exceptions.add((v, e))
                    assert in_E(4, v, e).reason is Reason.Grunbaum4Exception
        assert exceptions == {(6, 12), (7, 14), (8, 17), (10, 20)}
        for v in range(4, 41):
            for e in range(comb(v, 2) + 3):
                assert in_E(3, v, e).inside == (3 * v <= 2 * e and e <= 3 * v - 6)


def test_05_all_of_e5_up_to_13():
    with criterion(5, "every (v, e) in E^5 with v <= 13 certified in full", 600.0):
        failures = []
        count = 0
        for v in range(6, 14):
            for e in column(5, v):
                c = synthesize5(v, e)
                count += 1
                if c.f_vector[:2] != (v, e) or c.checks["combinatorial_f_vector"] != c.checks["hull_f_vector"]:
                    failures.append((v, e))
        assert not failures and count > 0


def test_06_row_v9():
    with criterion(6, "inside set of column v = 9 is {24, 26, ..., 36}"):
        assert column(5, 9) == [24] + list(range(26, 37))


def test_07_phi_consistency():
    with criterion(7, "min edges = phi(v, 5) for 6 <= v <= 10"):
        for v in range(6, 11):
            assert min(column(5, v)) == phi(v, 5)


SIX_FACET = {
    "P_A": ("(pyr (pyr (prod (simplex 1) (simplex 1))))", {"square pyramid": 2, "simplex": 4}),
    "P_B": ("(pyr (prod (simplex 1) (simplex 2)))", {"square pyramid": 3, "triangular prism": 1, "simplex": 2}),
    "P_C": ("(trunc (simplex 4))", {"triangular prism": 4, "simplex": 2}),
    "P_D": ("(prod (simplex 2) (simplex 2))", {"triangular prism": 6}),
}


def test_08_six_facet_fixtures():
    with criterion(8, "four non-isomorphic 6-facet 4-polytopes, shapes and tags match"):
        lattices = {}
        for tag, (recipe, shapes) in SIX_FACET.items():
            L = evaluate(recipe).lattice
            assert L.dimension == 4 and len(L.facets) == 6
            counts = {s: facet_shapes(L).count(s) for s in set(facet_shapes(L))}
            assert counts == shapes, tag
            assert classify_6facet_4polytope(L) == tag
            lattices[tag] = L
        tags = list(lattices)
        for i, a in enumerate(tags):
            for b in tags[i + 1:]:
                assert not is_isomorphic(lattices[a], lattices[b])


def test_09_h_vector_pipeline():
    with criterion(9, "h(join(C5, C4)) = (1,5,8,5,1) = boundary_h_from_ball((1,4,3,0,0,0))"):
        assert join(cycle(5), cycle(4)).h_vector() == (1, 5, 8, 5, 1)
        assert boundary_h_from_ball((1, 4, 3, 0, 0, 0)) == (1, 5, 8, 5, 1)


DELTAS = {"trunc": lambda d: (d - 1, comb(d, 2)), "stack": lambda d: (1, d)}


def test_10_property_suites():
    with criterion(10, "Euler, dual involution, degree sum, truncation and stacking deltas on 100 chains", 300.0):
        violations = []
        for seed in range(100):
            r, steps = random_chain(random.Random(seed))
            ev = evaluate(r)
            L, fv, d = ev.lattice, ev.f_vector, ev.lattice.dimension
            if not euler_characteristic_holds(fv, d):
                violations.append((seed, "euler"))
            if sum(degree_sequence(L)) != 2 * fv[1]:
                violations.append((seed, "degree sum"))
            if not is_isomorphic(dual(dual(L)), L):
                violations.append((seed, "dual involution"))
            for move, inner in steps:
                if move not in DELTAS:
                    continue
                before = evaluate(inner).f_vector
                after = evaluate(apply_move(inner, move)).f_vector
                delta = (after[0] - before[0], after[1] - before[1])
                if delta != DELTAS[move](len(before)):
                    violations.append((seed, move, delta))
        assert not violations, violations


def test_11_negative_controls():
    with criterion(11, "synthesize refuses G, L (v <= 40) and the E^4 exceptions with correct reasons"):
        expected = [((5, v, e), Reason.InG) for v, e in [(8, 20), (9, 25), (13, 35)]]
        expected += [((5, v, (5 * v + 2) // 2), Reason.InL) for v in range(7, 41)]
        expected += [((4, v, e), Reason.Grunbaum4Exception) for v, e in [(6, 12), (7, 14), (8, 17), (10, 20)]]
        for (d, v, e), reason in expected:
            with pytest.raises(NotInE) as info:
                synthesize(d, v, e)
            assert info.value.reason is reason, (d, v, e)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except BaseException:
                failed += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
