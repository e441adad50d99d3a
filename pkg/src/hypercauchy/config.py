"""The config module

Scenario files describe one computation: wave parameter, curve, density,
quadrature overrides and finite-difference settings. They are JSON documents
validated by pydantic models; a scenario set is ``{"scenarios": [...]}``.
"""

import hashlib
import json
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from hypercauchy.datasets import get_reference_scenarios
from hypercauchy.density import Density, builtin, parse
from hypercauchy.exceptions import ConfigError, DensityError
from hypercauchy.geometry import Curve
from hypercauchy.kernel import KernelCtx
from hypercauchy.potential import QuadSpec
from hypercauchy.specfun import SERIES_RADIUS

Point = Tuple[float, float]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class AlphaModel(_Strict):
    """Complex wave parameter"""

    re: float = 0.0
    im: float = 0.0

    @property
    def value(self) -> complex:
        """The parameter as a complex number"""
        return complex(self.re, self.im)


class CurveModel(_Strict):
    """Curve descriptor"""

    kind: Literal["circle", "ellipse", "polygon"]
    center: Point = (0.0, 0.0)
    radius: Optional[float] = Field(default=None, gt=0)
    semi_axes: Optional[Tuple[float, float]] = None
    vertices: Optional[List[Point]] = None
    nodes_hint: int = Field(default=2048, ge=8)

    @model_validator(mode="after")
    def _needs_shape(self):
        required = {"circle": "radius", "ellipse": "semi_axes", "polygon": "vertices"}[self.kind]
        if getattr(self, required) is None:
            raise ValueError(f"a {self.kind} needs '{required}'")
        return self

    def build(self) -> Curve:
        """The `Curve` this descriptor names"""
        if self.kind == "circle":
            return Curve.circle(self.center, self.radius, self.nodes_hint)
        if self.kind == "ellipse":
            return Curve.ellipse(self.center, self.semi_axes, self.nodes_hint)
        return Curve.polygon(self.vertices, self.nodes_hint)


class DensityModel(_Strict):
    """Density descriptor: a built-in family or an expression"""

    builtin: Optional[str] = None
    params: dict = Field(default_factory=dict)
    expression: Optional[str] = None
    holder_hint: Optional[float] = Field(default=None, gt=0, le=1)

    @model_validator(mode="after")
    def _one_source(self):
        if (self.builtin is None) == (self.expression is None):
            raise ValueError("give exactly one of 'builtin' and 'expression'")
        return self

    def build(self) -> Density:
        """The `Density` this descriptor names"""
        if self.expression is not None:
            return parse(self.expression, holder_hint=self.holder_hint)
        return builtin(self.builtin, holder_hint=self.holder_hint, **self.params)


class QuadratureModel(_Strict):
    """Overrides of the `QuadSpec` defaults"""

    boundary_nodes: Optional[int] = None
    delta_schedule: Optional[List[float]] = None
    area_resolution: Optional[int] = None
    exclusion_radius: Optional[float] = None
    extrapolation: Optional[Literal["richardson", "none"]] = None
    richardson_order: Optional[int] = None
    refine_factor: Optional[int] = None
    near_factor: Optional[float] = None
    approach_heights: Optional[List[float]] = None

    def build(self) -> QuadSpec:
        """A `QuadSpec` with the given fields replaced"""
        overrides = self.model_dump(exclude_none=True)
        for key in ("delta_schedule", "approach_heights"):
            if key in overrides:
                overrides[key] = tuple(overrides[key])
        return QuadSpec(**overrides)


class FDModel(_Strict):
    """Finite-difference settings"""

    h: float = Field(default=1e-3, gt=0)
    stencil: Literal["3-point", "5-point"] = "3-point"
    clearance: float = Field(default=0.3, gt=0)


class Scenario(_Strict):
    """One computation: parameter, curve, density and numerics"""

    name: str = "scenario"
    alpha: AlphaModel = AlphaModel()
    curve: CurveModel
    density: DensityModel
    quadrature: QuadratureModel = QuadratureModel()
    fd: FDModel = FDModel()
    seed: int = 0

    @model_validator(mode="after")
    def _series_validity(self):
        diameter = self.curve.build().diameter
        size = abs(self.alpha.value) * diameter
        if size > SERIES_RADIUS:
            raise ValueError(
                f"|alpha| * diam = {size:.3g} exceeds {SERIES_RADIUS:g}, where the Hankel "
                f"series lose accuracy; use |alpha| <= {SERIES_RADIUS / diameter:.3g} or a smaller curve"
            )
        if not self.fd.clearance > 2 * self.fd.h:
            raise ValueError("fd.clearance must exceed 2 * fd.h")
        return self

    @property
    def alpha_value(self) -> complex:
        """The wave parameter"""
        return self.alpha.value

    def kernel_ctx(self) -> KernelCtx:
        """Kernel context for the scenario's parameter"""
        return KernelCtx(self.alpha.value)

    def build_curve(self) -> Curve:
        """The scenario's curve"""
        return self.curve.build()

    def build_density(self) -> Density:
        """The scenario's density"""
        return self.density.build()

    def quad_spec(self) -> QuadSpec:
        """The scenario's quadrature settings"""
        return self.quadrature.build()

    def canonical_json(self) -> str:
        """Compact JSON with sorted keys"""
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        """SHA-256 of the canonical JSON"""
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()


def _validate(payload: dict, source: str) -> Scenario:
    try:
        scenario = Scenario.model_validate(payload)
        # build eagerly so bad densities and quadrature surface as config errors
        scenario.build_density()
        scenario.quad_spec()
    except ValidationError as exc:
        raise ConfigError(f"invalid scenario in {source}: {exc}") from exc
    except (DensityError, ValueError) as exc:
        raise ConfigError(f"invalid scenario in {source}: {exc}") from exc
    return scenario


def _read_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as config:
            return json.load(config)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc


def scenario_from_dict(payload: dict, source: str = "<dict>") -> Scenario:
    """Validate a scenario mapping

    :raises ConfigError: When the mapping does not describe a valid scenario.
    """
    return _validate(payload, source)


def load_scenario(path: str) -> Scenario:
    """Load one scenario file

    A set file with exactly one scenario is accepted too.

    :raises ConfigError: On unreadable, malformed or invalid files.
    """
    payload = _read_json(path)
    if isinstance(payload, dict) and "scenarios" in payload:
        scenarios = payload["scenarios"]
        if len(scenarios) != 1:
            raise ConfigError(f"{path} holds {len(scenarios)} scenarios; expected one")
        payload = scenarios[0]
    if not isinstance(payload, dict):
        raise ConfigError(f"{path} must hold a JSON object")
    return _validate(payload, path)


def load_scenarios(path: Union[str, None]) -> List[Scenario]:
    """Load a scenario set

    :param path: A set file, a single-scenario file, or "reference" for the
        shipped reference set.
    :raises ConfigError: On unreadable, malformed or invalid files.
    """
    if path is None or path == "reference":
        path = get_reference_scenarios()
    payload = _read_json(path)
    if isinstance(payload, dict) and "scenarios" in payload:
        items = payload["scenarios"]
    else:
        items = [payload]
    if not isinstance(items, list) or not all(isinstance(item, dict) for item in items):
        raise ConfigError(f"{path} must hold a scenario object or a list under 'scenarios'")
    return [_validate(item, f"{path}[{index}]") for index, item in enumerate(items)]
