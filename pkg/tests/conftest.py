"""Configure the test suite"""

import json

import numpy as np
import pytest

from hypercauchy.config import scenario_from_dict
from hypercauchy.geometry import Curve
from hypercauchy.kernel import KernelCtx
from hypercauchy.potential import QuadSpec


@pytest.fixture(name="unit_circle")
def unit_circle():
    """Return the unit circle centred at the origin"""
    return Curve.circle((0.0, 0.0), 1.0)


@pytest.fixture(name="quad")
def quad():
    """Return quadrature settings small enough for unit tests"""
    return QuadSpec(boundary_nodes=1024, area_resolution=256)


@pytest.fixture(name="ctx0")
def ctx0():
    """Return the kernel context for alpha = 0"""
    return KernelCtx(0j)


@pytest.fixture(name="ctx1")
def ctx1():
    """Return the kernel context for alpha = 1"""
    return KernelCtx(1.0)


@pytest.fixture(name="rng")
def rng():
    """Return a seeded random generator"""
    return np.random.default_rng(20240611)


@pytest.fixture(name="scenario_dict")
def scenario_dict():
    """Return a minimal valid scenario mapping"""
    return {
        "name": "unit-test",
        "alpha": {"re": 0.0, "im": 0.0},
        "curve": {"kind": "circle", "center": [0, 0], "radius": 1},
        "density": {"builtin": "constant", "params": {"value": [1, 0, 0, 0]}},
        "quadrature": {"boundary_nodes": 512, "area_resolution": 128},
        "fd": {"h": 0.001},
        "seed": 3,
    }


@pytest.fixture(name="scenario")
def scenario(scenario_dict):
    """Return the minimal scenario, validated"""
    return scenario_from_dict(scenario_dict)


@pytest.fixture(name="scenario_file")
def scenario_file(tmp_path, scenario_dict):
    """Return the path of the minimal scenario written to disk"""
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(scenario_dict), encoding="utf-8")
    return str(path)
