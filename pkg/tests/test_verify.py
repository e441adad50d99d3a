"""Test verify module"""

import numpy as np
import pytest

from hypercauchy.config import scenario_from_dict
from hypercauchy.verify import (
    CLAIMS,
    TRIAL_POINTS,
    CheckReport,
    FDGrid,
    LazyField,
    apply_operator,
    certify,
    certify_all,
    check_factorizations,
    estimate_order,
    operator_field,
    pair_operator_residuals,
    summarize,
)

GRID = FDGrid(h=1e-3, points=TRIAL_POINTS)


def _quadratic(pts):
    out = np.zeros((len(pts), 4), dtype=np.complex128)
    out[:, 0] = pts[:, 0] ** 2 + pts[:, 1] ** 2
    return out


def _x_squared_i2(pts):
    out = np.zeros((len(pts), 4), dtype=np.complex128)
    out[:, 2] = pts[:, 0] ** 2
    return out


def _exp_i1(pts):
    out = np.zeros((len(pts), 4), dtype=np.complex128)
    out[:, 1] = np.exp(pts[:, 0])
    return out


def test_grid_validation():
    """Test spacing, stencil and clearance checks"""
    with pytest.raises(ValueError):
        FDGrid(h=0)
    with pytest.raises(ValueError):
        FDGrid(h=1e-3, stencil="7-point")
    with pytest.raises(ValueError):
        FDGrid(h=1e-3, clearance=1e-3)
    assert GRID.with_spacing(5e-4).h == 5e-4
    assert GRID.array.shape == (3, 2)


def test_laplace_of_quadratic():
    """Test Delta(x^2 + y^2) = 4"""
    for stencil in ("3-point", "5-point"):
        grid = FDGrid(h=1e-3, stencil=stencil, points=TRIAL_POINTS)
        np.testing.assert_allclose(apply_operator("laplace", _quadratic, grid), [[4, 0, 0, 0]] * 3, atol=1e-5)


def test_first_derivatives():
    """Test d1 and d2 against exact derivatives"""
    np.testing.assert_allclose(apply_operator("d1", _exp_i1, GRID), _exp_i1(GRID.array), atol=1e-6)
    np.testing.assert_allclose(apply_operator("d2", _exp_i1, GRID), 0, atol=1e-12)
    np.testing.assert_allclose(apply_operator("st_d", lambda pts: np.ones((len(pts), 4)), GRID), 0, atol=1e-12)


def test_left_dirac_squared_is_minus_laplace():
    """Test st_d(st_d(x^2 i2)) = -Delta(x^2 i2) = -2 i2"""
    inner = operator_field("st_d", _x_squared_i2, GRID.h)
    twice = apply_operator("st_d", inner, GRID)
    np.testing.assert_allclose(twice, [[0, 0, -2, 0]] * 3, atol=1e-6)
    np.testing.assert_allclose(apply_operator("laplace", _x_squared_i2, GRID), -twice, atol=1e-6)


def test_multiplication_side():
    """Test that st_d multiplies from the left and d_st from the right"""
    left = apply_operator("st_d", _x_squared_i2, GRID)
    right = apply_operator("d_st", _x_squared_i2, GRID)
    x = GRID.array[:, 0]
    # i1 i2 = i3 and i2 i1 = -i3
    np.testing.assert_allclose(left[:, 3], 2 * x, atol=1e-9)
    np.testing.assert_allclose(right[:, 3], -2 * x, atol=1e-9)


def test_unknown_operator():
    """Test ValueError for an unknown operator id"""
    with pytest.raises(ValueError):
        operator_field("curl", _quadratic, 1e-3)


def test_lazy_field_caches_points():
    """Test that repeated points are evaluated once"""
    calls = []

    def func(pts):
        calls.append(len(pts))
        return _quadratic(pts)

    lazy = LazyField(func)
    lazy([[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]])
    lazy([[1.0, 0.0]])
    assert calls == [2]
    assert len(lazy) == 2


def test_factorizations():
    """Test the Helmholtz factorisations and their second-order convergence"""
    report = check_factorizations(1 + 0.5j, FDGrid(h=1e-2, points=TRIAL_POINTS))
    assert report.name == "factorization"
    assert report.passed
    assert 1.6 <= report.order <= 2.4
    assert report.residuals[1] < report.residuals[0]
    assert report.details["order_band"] == [1.6, 2.4]


def test_pair_system_on_a_solution():
    """Test div and rot residuals of x i1 - y i2 at beta = 0"""

    def func(pts):
        out = np.zeros((len(pts), 4), dtype=np.complex128)
        out[:, 1] = pts[:, 0]
        out[:, 2] = -pts[:, 1]
        return out

    residuals = pair_operator_residuals(func, GRID, 0j)
    assert residuals["div"] < 1e-9
    assert residuals["rot"] < 1e-9


def test_estimate_order():
    """Test the observed order and the rounding floor"""
    assert estimate_order([0.1, 0.05], [4e-2, 1e-2]) == pytest.approx(2.0)
    assert estimate_order([0.1, 0.05], [1e-14, 1e-15]) is None
    assert estimate_order([0.1], [1e-2]) is None


def test_check_report_to_dict():
    """Test sorted keys and plain floats"""
    report = CheckReport("lemma1", "abc", [10], [np.float64(0.5)], 1.0, True)
    payload = report.to_dict()
    assert list(payload) == sorted(payload)
    assert payload["residuals"] == [0.5]
    assert report.residual == 0.5


def test_certify_lemma1(scenario):
    """Test the product norm bound claim"""
    report = certify("lemma1", scenario)
    assert report.passed
    assert report.digest == scenario.digest()
    assert report.details["scenario"] == "unit-test"
    assert report.details["max_ratio"] <= np.sqrt(2) + 1e-12


@pytest.mark.parametrize("alpha", [{"re": 0.0, "im": 0.0}, {"re": 1.0, "im": 0.5}])
def test_certify_definition1(scenario_dict, alpha):
    """Test that the Cauchy kernel is annihilated from both sides"""
    scenario = scenario_from_dict({**scenario_dict, "alpha": alpha})
    report = certify("definition1", scenario)
    assert report.passed
    assert report.details["pair_form_gap"] < 1e-9


def test_certify_cheap_claims(scenario):
    """Test claims that hold exactly for f = 1 at alpha = 0"""
    reports = certify_all(scenario, ["pair_jump", "lemma3", "hyperholomorphy"])
    assert [r.name for r in reports] == ["lemma3", "pair_jump", "hyperholomorphy"]
    assert all(r.passed for r in reports)


def test_certify_unknown_claim(scenario):
    """Test ValueError for an unknown claim id"""
    with pytest.raises(ValueError):
        certify("lemma9", scenario)
    assert len(CLAIMS) == 11


def test_summarize(scenario):
    """Test the markdown summary"""
    reports = [certify("lemma1", scenario), CheckReport("lemma2", "abc", [1], [0.5], 0.1, False)]
    text = summarize(reports)
    assert "| lemma1 | unit-test |" in text
    assert "FAIL" in text
    assert text.endswith("1 of 2 checks passed.\n")


@pytest.fixture(name="wave_scenario")
def wave_scenario(scenario_dict):
    """Return the scenario with alpha = 1 and the first Fourier mode"""
    return scenario_from_dict(
        {
            **scenario_dict,
            "name": "unit-test-a1",
            "alpha": {"re": 1.0, "im": 0.0},
            "density": {"builtin": "fourier", "params": {"k": 1}},
            "quadrature": {"boundary_nodes": 1024, "area_resolution": 256},
            "fd": {"h": 0.001, "stencil": "3-point", "clearance": 0.3},
        }
    )


@pytest.mark.parametrize(
    "claim", ["lemma2", "lemma3", "lemma4", "theorem_jump", "vector_jump", "hyperholomorphy", "system1", "system2"]
)
def test_claims_at_alpha_one(wave_scenario, claim):
    """Test each boundary and interior claim for a non-constant density at alpha = 1"""
    report = certify(claim, wave_scenario)
    assert report.name == claim
    assert report.passed
    assert np.isfinite(report.residual)
    assert report.residual < report.tolerance


def test_hyperholomorphy_checks_the_order(wave_scenario):
    """Test that the observed second order is required, not only reported"""
    report = certify("hyperholomorphy", wave_scenario)
    assert report.details["order_band"] == [1.6, 2.4]
    assert report.details["order_checked"]
    assert 1.6 <= report.order <= 2.4


def test_hyperholomorphy_fails_outside_the_order_band(wave_scenario, mocker):
    """Test that a residual converging at the wrong rate fails the claim"""
    mocker.patch("hypercauchy.verify.estimate_order", return_value=1.0)
    report = certify("hyperholomorphy", wave_scenario)
    assert report.residual < report.tolerance
    assert not report.passed
