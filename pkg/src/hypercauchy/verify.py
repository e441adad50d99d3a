"""The verify module

Finite-difference realisations of the differential operators acting on
quaternion fields in the plane, and the certification suite that checks the
claims of the theory numerically on a scenario.

Operator ids:

=========== =========================================================
``d1``      partial derivative in x
``d2``      partial derivative in y
``d``       d1 - i d2 (i the complex unit)
``dbar``    d1 + i d2
``st_d``    i1 d1 f + i2 d2 f (left multiplication)
``st_dbar`` conj(i1) d1 f + conj(i2) d2 f
``d_st``    d1 f i1 + d2 f i2 (right multiplication)
``dbar_st`` d1 f conj(i1) + d2 f conj(i2)
``alpha_d`` d_st f + alpha f
``d_alpha`` st_d f + f alpha
``laplace`` d1^2 f + d2^2 f
``helmholtz`` laplace f + alpha^2 f
=========== =========================================================

A field is any callable mapping points of shape (N, 2) to quaternion values
of shape (N, 4).
"""

import hashlib
import logging
from dataclasses import dataclass, field, replace
from math import log, sqrt
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from hypercauchy.datasets import load_tolerances
from hypercauchy.density import Density, builtin, constant, parse
from hypercauchy.exceptions import BoundaryError, DensityError
from hypercauchy.geometry import INTERIOR, Curve, boundary_probes, classify, nodes
from hypercauchy.kernel import KernelCtx, cauchy_kernel
from hypercauchy.potential import (
    area_integral,
    boundary_limit,
    cauchy_integral_many,
    davydov_uniformity,
    jump_report,
    membership_defect,
    plemelj_rhs,
    plemelj_rhs_pair,
    singular_integral,
    vector_plemelj_rhs,
)
from hypercauchy.quat import I1, I2, ONE, CQuat, product_norm_ratio, qconj, qmul, qnorm

logger = logging.getLogger(__name__)

OPERATORS = (
    "d1",
    "d2",
    "d",
    "dbar",
    "st_d",
    "st_dbar",
    "d_st",
    "dbar_st",
    "alpha_d",
    "d_alpha",
    "laplace",
    "helmholtz",
)

CLAIMS = (
    "lemma1",
    "lemma2",
    "lemma3",
    "lemma4",
    "theorem_jump",
    "pair_jump",
    "vector_jump",
    "hyperholomorphy",
    "system1",
    "system2",
    "definition1",
)

# (offset, weight) pairs of the central stencils, before division by h or h^2
_FIRST = {
    "3-point": ((1, 0.5), (-1, -0.5)),
    "5-point": ((2, -1 / 12), (1, 8 / 12), (-1, -8 / 12), (-2, 1 / 12)),
}
_SECOND = {
    "3-point": ((1, 1.0), (0, -2.0), (-1, 1.0)),
    "5-point": ((2, -1 / 12), (1, 16 / 12), (0, -30 / 12), (-1, 16 / 12), (-2, -1 / 12)),
}

_I1 = I1.to_array()
_I2 = I2.to_array()

# residuals below this are rounding noise and carry no order information
_NOISE_FLOOR = 1e-13
# finite-difference residuals of quadrature fields below this carry no order
_ORDER_FLOOR = 1e-9


@dataclass(frozen=True)
class FDGrid:
    """Sample points and stencil for finite differences

    :param h: Spacing, positive.
    :param stencil: "3-point" (second order) or "5-point" (fourth order)
        per axis.
    :param points: Sample points as (x, y) pairs.
    :param clearance: Distance the sample points keep from singularities
        and from the curve; must exceed 2h.
    """

    h: float
    stencil: str = "3-point"
    points: tuple = ((0.0, 0.0),)
    clearance: float = 0.3

    def __post_init__(self):
        object.__setattr__(self, "points", tuple((float(x), float(y)) for x, y in self.points))
        if not self.h > 0:
            raise ValueError(f"spacing must be positive, got {self.h}")
        if self.stencil not in _FIRST:
            raise ValueError(f"unknown stencil {self.stencil!r}")
        if not self.clearance > 2 * self.h:
            raise ValueError(f"clearance {self.clearance} must exceed 2h = {2 * self.h}")
        if not self.points:
            raise ValueError("at least one sample point is needed")

    @property
    def array(self) -> np.ndarray:
        """Sample points as an (N, 2) array"""
        return np.array(self.points, dtype=np.float64)

    def with_spacing(self, h: float) -> "FDGrid":
        """Same points and stencil at another spacing"""
        return replace(self, h=h)


class LazyField:
    """A field evaluated on demand, remembering every point it has seen

    Stencils of nested operators revisit the same points; each is evaluated
    once, in one batched call per request.
    """

    def __init__(self, func: Callable):
        self._func = func
        self._cache: Dict[tuple, np.ndarray] = {}

    def __call__(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        keys = [(float(x), float(y)) for x, y in pts]
        missing = [k for k in dict.fromkeys(keys) if k not in self._cache]
        if missing:
            values = np.asarray(self._func(np.array(missing)), dtype=np.complex128)
            for key, value in zip(missing, values.reshape(len(missing), 4)):
                self._cache[key] = value
        return np.array([self._cache[k] for k in keys]).reshape(len(keys), 4)

    def __len__(self) -> int:
        return len(self._cache)


def _lazy(func: Callable) -> LazyField:
    return func if isinstance(func, LazyField) else LazyField(func)


def _stencil(func: LazyField, pts: np.ndarray, axis: int, h: float, taps: Sequence) -> np.ndarray:
    shifts = np.zeros((len(taps), 1, 2))
    for row, (offset, _) in enumerate(taps):
        shifts[row, 0, axis] = offset * h
    values = func((pts[None, :, :] + shifts).reshape(-1, 2)).reshape(len(taps), len(pts), 4)
    weights = np.array([w for _, w in taps])
    return np.tensordot(weights, values, axes=1)


def _left(unit: np.ndarray, values: np.ndarray) -> np.ndarray:
    return qmul(unit, values)


def _right(values: np.ndarray, unit: np.ndarray) -> np.ndarray:
    return qmul(values, unit)


def _evaluate(name: str, func: LazyField, pts: np.ndarray, h: float, stencil: str, alpha: complex) -> np.ndarray:
    if name in ("laplace", "helmholtz"):
        out = (_stencil(func, pts, 0, h, _SECOND[stencil]) + _stencil(func, pts, 1, h, _SECOND[stencil])) / h**2
        if name == "helmholtz":
            out = out + alpha * alpha * func(pts)
        return out
    d1 = _stencil(func, pts, 0, h, _FIRST[stencil]) / h
    d2 = _stencil(func, pts, 1, h, _FIRST[stencil]) / h
    if name == "d1":
        return d1
    if name == "d2":
        return d2
    if name == "d":
        return d1 - 1j * d2
    if name == "dbar":
        return d1 + 1j * d2
    if name == "st_d":
        return _left(_I1, d1) + _left(_I2, d2)
    if name == "st_dbar":
        return _left(qconj(_I1), d1) + _left(qconj(_I2), d2)
    if name == "d_st":
        return _right(d1, _I1) + _right(d2, _I2)
    if name == "dbar_st":
        return _right(d1, qconj(_I1)) + _right(d2, qconj(_I2))
    if name == "alpha_d":
        return _right(d1, _I1) + _right(d2, _I2) + alpha * func(pts)
    return _left(_I1, d1) + _left(_I2, d2) + func(pts) * alpha


def operator_field(name: str, func: Callable, h: float, stencil: str = "3-point", alpha: complex = 0j) -> LazyField:
    """The field obtained by applying an operator to a field

    :param name: One of `OPERATORS`.
    :param func: Field to differentiate.
    :param h: Spacing.
    :param stencil: "3-point" or "5-point".
    :param alpha: Parameter of alpha_d, d_alpha and helmholtz.
    :returns: A `LazyField`; nothing is evaluated until it is called, so
        operators compose without storing a grid.
    """
    if name not in OPERATORS:
        raise ValueError(f"unknown operator {name!r}; choose from {', '.join(OPERATORS)}")
    if stencil not in _FIRST:
        raise ValueError(f"unknown stencil {stencil!r}")
    inner = _lazy(func)
    alpha = complex(alpha)
    return LazyField(lambda pts: _evaluate(name, inner, pts, h, stencil, alpha))


def apply_operator(name: str, func: Callable, grid: FDGrid, alpha: complex = 0j) -> np.ndarray:
    """Apply an operator to a field at the grid's sample points

    :returns: Quaternion array of shape (N, 4).
    :raises BoundaryError: When a stencil point falls on the curve of a
        field defined by a Cauchy-type integral.
    """
    return operator_field(name, func, grid.h, grid.stencil, alpha)(grid.array)


def pair_operator_residuals(func: Callable, grid: FDGrid, beta: complex) -> dict:
    """Residuals of the scalar-vector system with parameter beta

    div f - beta f0 and rot f + beta f + grad f0, where for fields in the plane
    div f = d1 f1 + d2 f2, rot f = (d2 f3, -d1 f3, d1 f2 - d2 f1) and
    grad f0 = (d1 f0, d2 f0, 0).

    :returns: Dict with the largest "div" and "rot" residual norms over the
        sample points.
    """
    inner = _lazy(func)
    pts = grid.array
    d1 = _stencil(inner, pts, 0, grid.h, _FIRST[grid.stencil]) / grid.h
    d2 = _stencil(inner, pts, 1, grid.h, _FIRST[grid.stencil]) / grid.h
    values = inner(pts)
    div = d1[:, 1] + d2[:, 2] - beta * values[:, 0]
    rot = np.stack([d2[:, 3], -d1[:, 3], d1[:, 2] - d2[:, 1]], axis=-1)
    grad = np.stack([d1[:, 0], d2[:, 0], np.zeros(len(pts))], axis=-1)
    rot = rot + beta * values[:, 1:] + grad
    return {
        "div": float(np.max(np.abs(div))),
        "rot": float(np.max(np.sqrt(np.sum(np.abs(rot) ** 2, axis=-1)))),
    }


def pair_form_d_alpha(func: Callable, grid: FDGrid, alpha: complex) -> np.ndarray:
    """d_alpha written in pair form: (alpha f0 - div f, rot f + alpha f + grad f0)"""
    inner = _lazy(func)
    pts = grid.array
    d1 = _stencil(inner, pts, 0, grid.h, _FIRST[grid.stencil]) / grid.h
    d2 = _stencil(inner, pts, 1, grid.h, _FIRST[grid.stencil]) / grid.h
    values = inner(pts)
    out = np.zeros_like(values)
    out[:, 0] = alpha * values[:, 0] - (d1[:, 1] + d2[:, 2])
    out[:, 1] = d2[:, 3] + alpha * values[:, 1] + d1[:, 0]
    out[:, 2] = -d1[:, 3] + alpha * values[:, 2] + d2[:, 0]
    out[:, 3] = d1[:, 2] - d2[:, 1] + alpha * values[:, 3]
    return out


def _exp_field(coeffs: tuple, unit: np.ndarray) -> Callable:
    def func(pts):
        return np.exp(pts[:, 0] * coeffs[0] + pts[:, 1] * coeffs[1])[:, None] * unit

    return func


TRIAL_FIELDS = {
    "exp(x) i1": _exp_field((1.0, 0.0), _I1),
    "exp(0.3x - 0.7y) (1 + i3)": _exp_field((0.3, -0.7), np.array([1, 0, 0, 1], dtype=np.complex128)),
    "exp(0.5x + 0.2iy) (i2 + 0.5i i3)": _exp_field((0.5, 0.2j), np.array([0, 0, 1, 0.5j], dtype=np.complex128)),
}

TRIAL_POINTS = ((0.1, 0.2), (-0.3, 0.4), (0.5, -0.2))


def _factorizations(alpha: complex) -> dict:
    """Pairs (lhs operator chain, rhs operator) of the Helmholtz factorisations

    Each chain is a list of (operator, parameter, sign) applied right to left.
    """
    return {
        "-d_alpha d_-alpha": ((("d_alpha", alpha), ("d_alpha", -alpha)), -1, ("helmholtz", alpha)),
        "-d_-alpha d_alpha": ((("d_alpha", -alpha), ("d_alpha", alpha)), -1, ("helmholtz", alpha)),
        "-alpha_d (-alpha)_d": ((("alpha_d", alpha), ("alpha_d", -alpha)), -1, ("helmholtz", alpha)),
        "-(-alpha)_d alpha_d": ((("alpha_d", -alpha), ("alpha_d", alpha)), -1, ("helmholtz", alpha)),
        "d dbar": ((("d", 0j), ("dbar", 0j)), 1, ("laplace", 0j)),
        "dbar d": ((("dbar", 0j), ("d", 0j)), 1, ("laplace", 0j)),
        "st_d st_d": ((("st_d", 0j), ("st_d", 0j)), -1, ("laplace", 0j)),
        "d_st d_st": ((("d_st", 0j), ("d_st", 0j)), -1, ("laplace", 0j)),
        "d_st dbar_st": ((("d_st", 0j), ("dbar_st", 0j)), 1, ("laplace", 0j)),
        "st_d st_dbar": ((("st_d", 0j), ("st_dbar", 0j)), 1, ("laplace", 0j)),
    }


def _factorization_residual(alpha: complex, fields: dict, grid: FDGrid) -> dict:
    residuals = {}
    for field_name, func in fields.items():
        base = LazyField(func)
        for identity, (chain, sign, (rhs_name, rhs_alpha)) in _factorizations(alpha).items():
            composed = base
            for op_name, op_alpha in reversed(chain):
                composed = operator_field(op_name, composed, grid.h, grid.stencil, op_alpha)
            lhs = sign * composed(grid.array)
            rhs = apply_operator(rhs_name, base, grid, rhs_alpha)
            residuals[f"{identity} on {field_name}"] = float(np.max(qnorm(lhs - rhs)))
    return residuals


def estimate_order(resolutions: Sequence[float], residuals: Sequence[float]) -> Optional[float]:
    """Observed convergence order from the last two resolutions

    :returns: log(r0 / r1) / log(h0 / h1), or None when a residual is at the
        rounding floor.
    """
    if len(residuals) < 2 or min(residuals[-2:]) <= _NOISE_FLOOR:
        return None
    return log(residuals[-2] / residuals[-1]) / log(resolutions[-2] / resolutions[-1])


@dataclass
class CheckReport:
    """Outcome of one numerical check

    :param name: Claim or check id.
    :param digest: SHA-256 of the canonical scenario description.
    :param resolutions: Resolutions (spacings, sample counts) measured at.
    :param residuals: Residual at each resolution.
    :param order: Observed convergence order, if meaningful.
    :param tolerance: Declared tolerance.
    :param passed: True when the final residual is below the tolerance and
        every extra condition of the check holds.
    :param operator: Differential operator the check used, if any.
    :param note: Wording of what a pass means.
    :param details: Further JSON-ready diagnostics.
    """

    name: str
    digest: str
    resolutions: list
    residuals: list
    tolerance: float
    passed: bool
    order: Optional[float] = None
    operator: Optional[str] = None
    note: str = ""
    details: dict = field(default_factory=dict)

    @property
    def residual(self) -> float:
        """Final residual"""
        return self.residuals[-1]

    def to_dict(self) -> dict:
        """JSON-ready description with sorted keys"""
        payload = {
            "name": self.name,
            "digest": self.digest,
            "resolutions": [float(r) for r in self.resolutions],
            "residuals": [float(r) for r in self.residuals],
            "order": None if self.order is None else float(self.order),
            "tolerance": float(self.tolerance),
            "passed": bool(self.passed),
            "operator": self.operator,
            "note": self.note,
            "details": self.details,
        }
        return dict(sorted(payload.items()))


def _digest(payload: str) -> str:
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _tolerance(name: str) -> float:
    return float(load_tolerances()["claims"][name])


def _order_band(stencil: str = "3-point") -> tuple:
    low, high = load_tolerances()["order_band"]
    # the table holds the second-order band; 5-point stencils gain two orders
    shift = 2.0 if stencil == "5-point" else 0.0
    return float(low) + shift, float(high) + shift


def check_factorizations(alpha: complex, grid: FDGrid, fields: Optional[dict] = None, digest: str = "") -> CheckReport:
    """Verify the Helmholtz factorisations on smooth trial fields

    Nested first-order operators are compared against the Laplacian (plus
    alpha^2) at spacings h and h/2; the pass condition also requires the
    observed order to lie in the declared band.

    :param alpha: Wave parameter.
    :param grid: Sample points, stencil and the coarser spacing.
    :param fields: Named trial fields; defaults to `TRIAL_FIELDS`.
    :returns: `CheckReport` named "factorization".
    """
    fields = fields or TRIAL_FIELDS
    resolutions = [grid.h, grid.h / 2]
    per_identity = [_factorization_residual(alpha, fields, grid.with_spacing(h)) for h in resolutions]
    residuals = [max(r.values()) for r in per_identity]
    order = estimate_order(resolutions, residuals)
    tolerance = _tolerance("factorization")
    low, high = _order_band(grid.stencil)
    order_ok = order is None or low <= order <= high
    return CheckReport(
        name="factorization",
        digest=digest or _digest(f"factorization:{complex(alpha)!r}:{grid!r}"),
        resolutions=resolutions,
        residuals=residuals,
        order=order,
        tolerance=tolerance,
        passed=residuals[-1] < tolerance and order_ok,
        operator="d_alpha, alpha_d, d, dbar, st_d, d_st",
        note="Helmholtz factorisations on smooth trial fields",
        details={"worst": max(per_identity[-1], key=per_identity[-1].get), "order_band": [low, high]},
    )


# sample points


def _centroid(curve: Curve) -> np.ndarray:
    return np.mean(nodes(curve, 256).points, axis=0)


def _distance_to_curve(curve: Curve, z: np.ndarray) -> float:
    return float(np.hypot(*(curve.project(z)[0] - z)))


def interior_probes(curve: Curve, clearance: float, count: int = 4) -> np.ndarray:
    """Interior points keeping at least `clearance` from the curve

    The centroid followed by points 30% of the way from it to equispaced
    boundary points.

    :raises BoundaryError: When no candidate keeps the clearance.
    """
    center = _centroid(curve)
    boundary, _ = boundary_probes(curve, count, offset=0.3)
    candidates = np.vstack([center, center + 0.3 * (boundary - center)])
    keep = [
        z for z in candidates if int(classify(curve, z)) == INTERIOR and _distance_to_curve(curve, z) >= clearance
    ]
    if not keep:
        raise BoundaryError(f"no interior sample point keeps a clearance of {clearance}")
    return np.array(keep)


def exterior_probes(curve: Curve, count: int = 4) -> np.ndarray:
    """Exterior points 60% beyond equispaced boundary points"""
    center = _centroid(curve)
    boundary, _ = boundary_probes(curve, count, offset=0.3)
    return center + 1.6 * (boundary - center)


# claims


@dataclass(frozen=True)
class _Case:
    name: str
    digest: str
    ctx: KernelCtx
    curve: Curve
    density: Density
    quad: object
    fd: object
    seed: int


def _case(scenario) -> _Case:
    return _Case(
        name=scenario.name,
        digest=scenario.digest(),
        ctx=scenario.kernel_ctx(),
        curve=scenario.build_curve(),
        density=scenario.build_density(),
        quad=scenario.quad_spec(),
        fd=scenario.fd,
        seed=scenario.seed,
    )


def _report(case: _Case, name: str, residuals: list, resolutions: list, **kwargs) -> CheckReport:
    tolerance = kwargs.pop("tolerance", _tolerance(name))
    extra_ok = kwargs.pop("extra_ok", True)
    return CheckReport(
        name=name,
        digest=case.digest,
        resolutions=resolutions,
        residuals=residuals,
        tolerance=tolerance,
        passed=bool(residuals[-1] < tolerance and extra_ok),
        **kwargs,
    )


def _lemma1(case: _Case) -> CheckReport:
    count = 10_000
    rng = np.random.default_rng(case.seed)
    a = rng.standard_normal((count, 4)) + 1j * rng.standard_normal((count, 4))
    b = rng.standard_normal((count, 4)) + 1j * rng.standard_normal((count, 4))
    ratios = qnorm(qmul(a, b)) / (qnorm(a) * qnorm(b))
    witness = CQuat(1, 1j)
    witness_ratio = product_norm_ratio(witness, witness)
    worst = float(np.max(ratios))
    residual = max(0.0, worst - sqrt(2), abs(witness_ratio - sqrt(2)))
    return _report(
        case,
        "lemma1",
        [residual],
        [count],
        note="|ab| <= sqrt(2)|a||b| on random complex quaternions; 1 + i i1 attains the bound",
        details={"max_ratio": worst, "witness_ratio": witness_ratio},
    )


def _curve_neighbours(curve: Curve, count: int, gap: float) -> tuple:
    points, params = boundary_probes(curve, count, offset=0.1)
    speed = np.hypot(*curve.derivative(params).T)
    return points, curve.point(params + gap / speed)


def _lemma2(case: _Case) -> CheckReport:
    points, shifted = _curve_neighbours(case.curve, 8, 1e-3)
    gaps = [
        (singular_integral(case.ctx, case.curve, case.density, t, case.quad).quat
         - singular_integral(case.ctx, case.curve, case.density, s, case.quad).quat).norm()
        for t, s in zip(points, shifted)
    ]
    increments = davydov_uniformity(case.ctx, case.curve, case.density, case.quad, count=16)
    settled = bool(np.all(increments[1:] <= 1.5 * increments[:-1] + 1e-12))
    return _report(
        case,
        "lemma2",
        [max(gaps)],
        [case.quad.boundary_nodes],
        extra_ok=settled,
        note="consistent with continuity of the singular integral on the curve; sampled uniformity of the Davydov integral",
        details={"davydov_increments": [float(v) for v in increments], "sampled_uniformity": settled},
    )


def _lemma3(case: _Case) -> CheckReport:
    one = constant(ONE)
    probes = np.vstack([interior_probes(case.curve, 0.1), exterior_probes(case.curve)])
    phi = cauchy_integral_many(case.ctx, case.curve, one, probes, case.quad)
    worst = 0.0
    for z, value in zip(probes, phi):
        area = area_integral(case.ctx, case.curve, z, case.quad).to_array()
        if int(classify(case.curve, z)) == INTERIOR:
            area = area + np.array([1, 0, 0, 0])
        worst = max(worst, float(qnorm(value - area)) / (1.0 + float(qnorm(area))))
    return _report(
        case,
        "lemma3",
        [worst],
        [case.quad.boundary_nodes],
        note="Phi[1] equals the area integral plus the interior indicator",
        details={"probes": probes.tolist()},
    )


def _lemma4(case: _Case) -> CheckReport:
    q = case.quad
    curve = case.curve
    inner = interior_probes(curve, 0.1, count=2)
    pairs = [(z, z + np.array([1e-4, 0.0])) for z in inner]
    points, params = boundary_probes(curve, 2, offset=0.2)
    for t, param in zip(points, params):
        normal = curve.normal(param)
        pairs.append((t, t - 1e-4 * normal))
        pairs.append((t, t + 1e-4 * normal))
    gaps = [(area_integral(case.ctx, curve, a, q) - area_integral(case.ctx, curve, b, q)).norm() for a, b in pairs]
    return _report(
        case,
        "lemma4",
        [max(gaps)],
        [q.area_resolution],
        note="consistent with continuity of the area integral across the curve",
        details={"pairs": len(pairs)},
    )


def _boundary_points(curve: Curve, count: int) -> np.ndarray:
    return boundary_probes(curve, count, offset=0.05)[0]


def _theorem_jump(case: _Case) -> CheckReport:
    worst, rows = 0.0, []
    for t in _boundary_points(case.curve, 16):
        report = jump_report(case.ctx, case.curve, case.density, t, case.quad)
        scale = 1.0 + report.f_t.norm()
        worst = max(worst, report.residual_plus / scale, report.residual_minus / scale, report.residual_jump / scale)
        rows.append([report.residual_plus, report.residual_minus, report.residual_jump])
    return _report(
        case,
        "theorem_jump",
        [worst],
        [case.quad.boundary_nodes],
        note="boundary limits match both jump formulas and differ by f(t)",
        details={"residuals_plus_minus_jump": rows},
    )


def _pair_jump(case: _Case) -> CheckReport:
    worst = 0.0
    for t in _boundary_points(case.curve, 4):
        for side in ("+", "-"):
            quat = plemelj_rhs(case.ctx, case.curve, case.density, t, side, case.quad)
            pair = plemelj_rhs_pair(case.ctx, case.curve, case.density, t, side, case.quad).to_quat()
            worst = max(worst, (quat - pair).norm() / (1.0 + quat.norm()))
    return _report(
        case,
        "pair_jump",
        [worst],
        [case.quad.boundary_nodes],
        note="scalar-vector jump right-hand sides equal the quaternionic ones",
    )


def _vector_density(density: Density, curve: Curve) -> Density:
    points = nodes(curve, 256).points
    if np.max(np.abs(density.values(points)[:, 0])) == 0:
        return density
    return builtin("vector_constant", value=[0, 0, 1])


def _vector_jump(case: _Case) -> CheckReport:
    density = _vector_density(case.density, case.curve)
    defect = membership_defect(case.ctx, case.curve, density, interior_probes(case.curve, 0.1), case.quad)
    worst = 0.0
    for t in _boundary_points(case.curve, 4):
        scale = 1.0 + float(qnorm(density.values(t)))
        for side in ("+", "-"):
            limit = boundary_limit(case.ctx, case.curve, density, t, side, case.quad).to_array()[1:]
            rhs = vector_plemelj_rhs(case.ctx, case.curve, density, t, side, case.quad)
            worst = max(worst, float(np.sqrt(np.sum(np.abs(limit - rhs) ** 2))) / scale)
    membership = load_tolerances()["membership"]
    extra_ok = defect < membership if case.ctx.is_degenerate else True
    return _report(
        case,
        "vector_jump",
        [worst],
        [case.quad.boundary_nodes],
        extra_ok=extra_ok,
        note="vector parts of the boundary limits match the vector jump formulas",
        details={"density": density.describe(), "membership_defect": defect},
    )


def _phi_field(ctx: KernelCtx, curve: Curve, density: Density, quad) -> LazyField:
    return LazyField(lambda pts: cauchy_integral_many(ctx, curve, density, pts, quad))


def _grid(case: _Case, points: np.ndarray) -> FDGrid:
    return FDGrid(h=case.fd.h, stencil=case.fd.stencil, points=tuple(map(tuple, points)), clearance=case.fd.clearance)


def _hyperholomorphy(case: _Case) -> CheckReport:
    grid = _grid(case, interior_probes(case.curve, case.fd.clearance))
    phi = _phi_field(case.ctx, case.curve, case.density, case.quad)
    resolutions = [grid.h * 2, grid.h]
    residuals = [
        float(np.max(qnorm(apply_operator("d_alpha", phi, grid.with_spacing(h), -case.ctx.alpha)))) for h in resolutions
    ]
    order = estimate_order(resolutions, residuals)
    low, high = _order_band(grid.stencil)
    order_ok = order is None or residuals[-1] < _ORDER_FLOOR or low <= order <= high
    return _report(
        case,
        "hyperholomorphy",
        residuals,
        resolutions,
        extra_ok=order_ok,
        order=order,
        operator="d_alpha with -alpha (left Dirac part in the observation point)",
        note="the Cauchy-type integral is annihilated away from the curve",
        details={"order_band": [low, high], "order_checked": bool(order is not None and residuals[-1] >= _ORDER_FLOOR)},
    )


def _member_density(case: _Case, ctx: KernelCtx, probes: np.ndarray) -> tuple:
    try:
        defect = membership_defect(ctx, case.curve, case.density, probes, case.quad)
        if defect < load_tolerances()["membership"]:
            return case.density, defect
    except DensityError:
        pass
    density = parse("x*i1 - y*i2")
    return density, membership_defect(ctx, case.curve, density, probes, case.quad)


def _system1(case: _Case) -> CheckReport:
    ctx = KernelCtx(0j, case.ctx.series)
    probes = interior_probes(case.curve, case.fd.clearance)
    density, defect = _member_density(case, ctx, probes)
    grid = _grid(case, probes)
    residuals = pair_operator_residuals(_phi_field(ctx, case.curve, density, case.quad), grid, 0j)
    return _report(
        case,
        "system1",
        [max(residuals.values())],
        [grid.h],
        operator="div and rot at alpha = 0",
        note="the integral of a member density is solenoidal and irrotational",
        details={"density": density.describe(), "membership_defect": defect, **residuals},
    )


def _system2(case: _Case) -> CheckReport:
    grid = _grid(case, interior_probes(case.curve, case.fd.clearance))
    phi = _phi_field(case.ctx, case.curve, case.density, case.quad)
    residuals = pair_operator_residuals(phi, grid, -case.ctx.alpha)
    return _report(
        case,
        "system2",
        [max(residuals.values())],
        [grid.h],
        operator="div f + alpha f0, rot f - alpha f + grad f0 (system with -alpha)",
        note="scalar and vector parts of the integral solve the coupled system",
        details=residuals,
    )


def _definition1(case: _Case) -> CheckReport:
    alpha = case.ctx.alpha
    radius = min(0.5, 4.0 / max(abs(alpha), 1.0))
    angles = np.linspace(0.0, 2 * np.pi, 6, endpoint=False) + 0.2
    points = radius * np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    grid = FDGrid(h=case.fd.h, stencil=case.fd.stencil, points=tuple(map(tuple, points)), clearance=radius / 2)
    kernel = LazyField(lambda pts: cauchy_kernel(case.ctx, pts))
    right = float(np.max(qnorm(apply_operator("alpha_d", kernel, grid, alpha))))
    left = float(np.max(qnorm(apply_operator("d_alpha", kernel, grid, alpha))))
    trial = FDGrid(h=case.fd.h, stencil=case.fd.stencil, points=TRIAL_POINTS, clearance=1.0)
    pair_gap = max(
        float(np.max(qnorm(apply_operator("d_alpha", func, trial, alpha) - pair_form_d_alpha(func, trial, alpha))))
        for func in TRIAL_FIELDS.values()
    )
    return _report(
        case,
        "definition1",
        [max(right, left, pair_gap)],
        [grid.h],
        operator="alpha_d and d_alpha on the Cauchy kernel",
        note="the Cauchy kernel is alpha-hyperholomorphic; d_alpha agrees with its pair form",
        details={"alpha_d": right, "d_alpha": left, "pair_form_gap": pair_gap},
    )


_RUNNERS = {
    "lemma1": _lemma1,
    "lemma2": _lemma2,
    "lemma3": _lemma3,
    "lemma4": _lemma4,
    "theorem_jump": _theorem_jump,
    "pair_jump": _pair_jump,
    "vector_jump": _vector_jump,
    "hyperholomorphy": _hyperholomorphy,
    "system1": _system1,
    "system2": _system2,
    "definition1": _definition1,
}


def certify(claim: str, scenario) -> CheckReport:
    """Run one claim check on a scenario

    :param claim: One of `CLAIMS`.
    :param scenario: A `hypercauchy.config.Scenario`.
    :returns: `CheckReport`; deterministic for a given scenario.
    """
    if claim not in _RUNNERS:
        raise ValueError(f"unknown claim {claim!r}; choose from {', '.join(CLAIMS)}")
    case = _case(scenario)
    logger.info("certifying %s on scenario %s", claim, case.name)
    report = _RUNNERS[claim](case)
    report.details.setdefault("scenario", case.name)
    if not report.passed:
        logger.warning(
            "claim %s failed on scenario %s: residual %.3g, tolerance %.3g",
            claim,
            case.name,
            report.residual,
            report.tolerance,
        )
    return report


def certify_all(scenario, claims: Sequence[str] = CLAIMS) -> list:
    """Run several claims in canonical order"""
    ordered = [c for c in CLAIMS if c in claims]
    return [certify(claim, scenario) for claim in ordered]


def summarize(reports: Sequence[CheckReport]) -> str:
    """Markdown table of check outcomes"""
    lines = [
        "| claim | scenario | residual | tolerance | order | result |",
        "|---|---|---|---|---|---|",
    ]
    for report in reports:
        order = "" if report.order is None else f"{report.order:.2f}"
        lines.append(
            f"| {report.name} | {report.details.get('scenario', '')} | {report.residual:.3e} "
            f"| {report.tolerance:.1e} | {order} | {'pass' if report.passed else 'FAIL'} |"
        )
    passed = sum(r.passed for r in reports)
    lines.append("")
    lines.append(f"{passed} of {len(reports)} checks passed.")
    return "\n".join(lines) + "\n"
