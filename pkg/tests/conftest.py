from fractions import Fraction

import pytest

from capelli.roots import build_datum, rho_vector

SAMPLES = [
    (Fraction(1, 5), Fraction(3, 7)),
    (Fraction(2, 3), Fraction(5, 11)),
    (Fraction(17, 13), Fraction(1, 2)),
]
GRID = [("classical", 2), ("classical", 3), ("semiclassical", 2), ("semiclassical", 3)]

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_RESULTS: dict[int, tuple[bool, float, str]] = {}


def make(case: str, n: int, r=0, s=Fraction(1, 3)):
    datum = build_datum(case, n)
    return datum, rho_vector(datum, r, s)


@pytest.fixture(params=[(c, n, r, s) for c, n in GRID for r, s in SAMPLES],
                ids=lambda p: f"{p[0]}{p[1]}-r{p[2]}-s{p[3]}")
def grid_point(request):
    case, n, r, s = request.param
    return make(case, n, r, s)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, seconds, label = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {seconds:6.2f}s  {label}")
