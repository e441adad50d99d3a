"""Test config module"""

import json

import pytest

from hypercauchy.config import load_scenario, load_scenarios, scenario_from_dict
from hypercauchy.exceptions import ConfigError
from hypercauchy.geometry import Curve


def test_minimal_scenario(scenario):
    """Test the built objects of a valid scenario"""
    assert scenario.alpha_value == 0
    assert scenario.kernel_ctx().is_degenerate
    assert scenario.build_curve() == Curve.circle((0.0, 0.0), 1.0)
    assert scenario.quad_spec().boundary_nodes == 512
    assert scenario.quad_spec().area_resolution == 128
    assert scenario.fd.stencil == "3-point"
    assert scenario.build_density().values([0.5, 0.5]).tolist() == [1, 0, 0, 0]


def test_digest_is_stable(scenario, scenario_dict):
    """Test that the digest depends on content, not on key order"""
    reordered = dict(reversed(list(scenario_dict.items())))
    assert scenario_from_dict(reordered).digest() == scenario.digest()
    assert len(scenario.digest()) == 64
    changed = scenario_from_dict({**scenario_dict, "seed": 4})
    assert changed.digest() != scenario.digest()
    assert json.loads(scenario.canonical_json())["seed"] == 3


def test_series_validity_gate(scenario_dict):
    """Test that |alpha| * diam > 8 is refused with a remedy"""
    with pytest.raises(ConfigError) as excinfo:
        scenario_from_dict({**scenario_dict, "alpha": {"re": 5.0, "im": 0.0}})
    assert "exceeds" in str(excinfo.value)
    assert scenario_from_dict({**scenario_dict, "alpha": {"re": 4.0, "im": 0.0}}).alpha_value == 4


@pytest.mark.parametrize(
    "change",
    [
        {"density": {"builtin": "constant", "expression": "x", "params": {"value": [1, 0, 0, 0]}}},
        {"density": {"expression": "x $ y"}},
        {"density": {"builtin": "gaussian"}},
        {"curve": {"kind": "polygon"}},
        {"curve": {"kind": "circle", "radius": -1}},
        {"fd": {"h": 0.2, "clearance": 0.3}},
        {"quadrature": {"boundary_nodes": 4}},
        {"quadrature": {"delta_schedule": [0.1, 0.2]}},
        {"unexpected": True},
    ],
)
def test_invalid_scenarios(scenario_dict, change):
    """Test that malformed scenarios raise ConfigError"""
    with pytest.raises(ConfigError):
        scenario_from_dict({**scenario_dict, **change})


def test_expression_density(scenario_dict):
    """Test a scenario with an expression density"""
    scenario = scenario_from_dict({**scenario_dict, "density": {"expression": "x*i1 - y*i2", "holder_hint": 1}})
    assert scenario.build_density().describe() == {"expression": "x * i1 - y * i2"}


def test_load_scenario(scenario_file, tmp_path, scenario_dict):
    """Test loading single scenarios and one-element sets"""
    assert load_scenario(scenario_file).name == "unit-test"
    set_file = tmp_path / "set.json"
    set_file.write_text(json.dumps({"scenarios": [scenario_dict]}), encoding="utf-8")
    assert load_scenario(str(set_file)).name == "unit-test"
    assert len(load_scenarios(str(set_file))) == 1
    set_file.write_text(json.dumps({"scenarios": [scenario_dict, scenario_dict]}), encoding="utf-8")
    with pytest.raises(ConfigError):
        load_scenario(str(set_file))


def test_unreadable_files(tmp_path):
    """Test missing and malformed files"""
    with pytest.raises(ConfigError):
        load_scenario(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_scenario(str(broken))
    listed = tmp_path / "list.json"
    listed.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_scenario(str(listed))


def test_reference_scenarios():
    """Test the shipped reference set"""
    scenarios = load_scenarios("reference")
    assert len(scenarios) == 12
    assert len({s.name for s in scenarios}) == 12
    assert {s.alpha_value for s in scenarios} == {0, 1, 1 + 0.5j, -2}
    assert all(s.quad_spec().boundary_nodes == 2048 and s.quad_spec().area_resolution == 512 for s in scenarios)
