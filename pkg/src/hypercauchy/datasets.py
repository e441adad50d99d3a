"""The datasets module"""

import importlib.resources
import json
from functools import lru_cache


def get_scenario_dir() -> str:
    """
    :returns: Path to the directory of shipped scenario sets
    """
    res = str(importlib.resources.files("hypercauchy.data")) + "/scenarios"
    return res


def get_reference_scenarios() -> str:
    """
    :returns: Path to the reference scenario set used by `certify reference`
    """
    return get_scenario_dir() + "/reference.json"


@lru_cache(maxsize=1)
def load_tolerances() -> dict:
    """
    :returns: The versioned per-claim tolerance table
    :notes: Keys are `version`, `claims` (claim id to tolerance),
        `membership` (scalar defect accepted as membership) and `order_band`
        (accepted finite-difference order estimates).
    """
    path = importlib.resources.files("hypercauchy.data") / "tolerances.json"
    with path.open("r", encoding="utf-8") as table:
        return json.load(table)
