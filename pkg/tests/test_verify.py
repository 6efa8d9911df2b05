from fractions import Fraction

import pytest

from capelli.errors import NotStronglyDominant, UnsupportedCase
from capelli.poly import MultiPoly
from capelli.roots import build_datum, rho_vector
from capelli.verify import SCHEMA, SUITES, SuiteReport, run_suite, suite_names

from conftest import SAMPLES, make

LIGHT = ["interpolation", "virtual_dimension", "transposition", "evaluation", "symmetry", "pieri_ell",
         "binomial"]


@pytest.mark.parametrize("suite", LIGHT)
def test_light_suites_pass_on_grid(suite, grid_point):
    datum, rho = grid_point
    rep = run_suite(suite, datum, rho, 3)
    assert rep.checks > 0
    assert rep.passed, rep.failures[:3]


@pytest.mark.parametrize("suite", ["hat", "eigen", "sl2", "scalar_product"])
@pytest.mark.parametrize("case,n", [("classical", 2), ("semiclassical", 2), ("semiclassical", 3)])
def test_heavy_suites_small_window(suite, case, n):
    datum, rho = make(case, n, *SAMPLES[2])
    rep = run_suite(suite, datum, rho, 1 if suite == "scalar_product" and n == 3 else 2)
    assert rep.passed, rep.failures[:3]


@pytest.mark.parametrize("s", [Fraction(1, 3), Fraction(3, 2), Fraction(5, 7)])
def test_every_suite_in_rank_one(s):
    datum = build_datum("rank-one")
    rho = rho_vector(datum, 0, s)
    for name in suite_names(datum):
        rep = run_suite(name, datum, rho, 4)
        assert rep.passed, (name, rep.failures[:3])


def test_integral_rho_runs_where_allowed():
    # r = 1 is integral but still dominant; interpolation needs only dominance
    datum, rho = make("classical", 3, 1, Fraction(1, 2))
    assert run_suite("interpolation", datum, rho, 3).passed
    assert run_suite("eigen", datum, rho, 2).passed


def test_registry():
    assert "rank_one_closed_forms" not in suite_names(build_datum("classical", 2))
    assert suite_names(build_datum("rank-one"))[-1] == "rank_one_closed_forms"
    assert set(suite_names(build_datum("rank-one"))) == set(SUITES)
    datum, rho = make("classical", 2, *SAMPLES[0])
    with pytest.raises(KeyError):
        run_suite("nope", datum, rho, 2)
    with pytest.raises(UnsupportedCase):
        run_suite("rank_one_closed_forms", datum, rho, 2)
    one = build_datum("rank-one")
    with pytest.raises(NotStronglyDominant):
        run_suite("pieri_ell", one, rho_vector(one, 0, -1), 2)


def test_failures_carry_exact_residuals():
    rep = SuiteReport("demo", "classical", 2, Fraction(1, 5), Fraction(3, 7), 2)
    assert rep.equal("scalar", [(1, 0)], Fraction(1, 3), Fraction(1, 3))
    assert not rep.equal("scalar", [(1, 0)], Fraction(1, 2), Fraction(1, 3))
    assert not rep.equal("vector", [], {(0, 0): 1}, {(0, 0): 1, (1, 0): Fraction(2, 5)})
    z = MultiPoly.variable(0, 2)
    assert not rep.equal("poly", [], z, z + 1)
    assert not rep.holds("flag", [3], False, "why")
    assert rep.checks == 5 and not rep.passed
    residuals = [f["residual"] for f in rep.failures]
    assert residuals == ["1/6", "[1, 0]: -2/5", "-1", "why"]
    data = rep.to_json()
    assert data["schema"] == SCHEMA and data["failures"][0]["indices"] == [[1, 0]]
    assert data["r"] == "1/5" and data["passed"] is False
    assert rep.dumps() == rep.dumps()
