"""Record every face lattice built during the session and check Euler on each."""
import pytest

import polywitness.constructions as constructions
import polywitness.lattice as lattice
import polywitness.synthesis as synthesis

BUILT: list = []


def _recording(fn):
    def wrapper(inc):
        L = fn(inc)
        BUILT.append((L.dimension, lattice.f_vector(L)))
        return L
    return wrapper


@pytest.fixture(autouse=True, scope="session")
def record_lattices():
    original = lattice.lattice_from_incidence
    wrapped = _recording(original)
    for mod in (lattice, constructions, synthesis):
        mod.lattice_from_incidence = wrapped
    yield BUILT
    for mod in (lattice, constructions, synthesis):
        mod.lattice_from_incidence = original
    bad = [(d, fv) for d, fv in BUILT if not lattice.euler_characteristic_holds(fv, d)]
    assert not bad, f"Euler relation fails for {bad[:5]}"


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
