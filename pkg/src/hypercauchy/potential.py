"""The potential module

Integral operators built on the Cauchy kernel K_alpha:

* the Cauchy-type integral Phi_alpha[f](z) = sum over nodes of K(zeta - z) sigma f(zeta)
  for z off the curve, with the factors in exactly that order;
* the singular integral F_alpha[f](t) and the Davydov integral Psi_alpha[f](t)
  on the curve, as limits over deleted chordal neighbourhoods;
* the area integral I_alpha(t) = -alpha * integral over the interior of K(zeta - t);
* the boundary limits Phi^+/- and the right-hand sides of the jump formulas,
  in quaternion and in scalar-vector pair form;
* the scalar defect measuring membership of a vector density in the class
  whose Cauchy-type integral is purely vectorial.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import fsum
from typing import Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from hypercauchy.density import Density
from hypercauchy.exceptions import BoundaryError, DensityError
from hypercauchy.geometry import (
    BOUNDARY,
    BOUNDARY_TOL,
    EXTERIOR,
    INTERIOR,
    BoundaryNodes,
    Curve,
    area_cells,
    boundary_probes,
    classify,
    deleted_arc,
    nodes,
    require_on_curve,
)
from hypercauchy.kernel import KernelCtx, cauchy_kernel, regular_part
from hypercauchy.quat import CQuat, PairField, cross, dot, fsum_quat, pair_product, qmul, qnorm
from hypercauchy.utilities import get_thread_count

logger = logging.getLogger(__name__)

SIDES = ("+", "-")
SETTLE_SLACK = 1.5


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature configuration for boundary and area integrals

    :param boundary_nodes: Boundary node count n.
    :param delta_schedule: Strictly decreasing deletion radii for the
        singular and Davydov limits.
    :param area_resolution: Cells per axis m of the area grid.
    :param exclusion_radius: Radius of the polar patch around a singular
        point of the area integrand.
    :param extrapolation: "richardson" or "none".
    :param richardson_order: Polynomial order of the extrapolation.
    :param refine_factor: Node multiplier for evaluation points close to
        the curve.
    :param near_factor: Evaluation points closer than this many node spacings
        count as close.
    :param approach_heights: Decreasing distances along the normal used to
        compute boundary limits.
    :param boundary_tol: Half-width of the boundary band.
    """

    boundary_nodes: int = 2048
    delta_schedule: tuple = tuple(0.2 * 2.0**-k for k in range(7))
    area_resolution: int = 512
    exclusion_radius: float = 0.05
    extrapolation: str = "richardson"
    richardson_order: int = 1
    refine_factor: int = 4
    near_factor: float = 3.0
    approach_heights: tuple = (1e-2, 1e-3, 1e-4)
    boundary_tol: float = BOUNDARY_TOL

    def __post_init__(self):
        object.__setattr__(self, "delta_schedule", tuple(float(d) for d in self.delta_schedule))
        object.__setattr__(self, "approach_heights", tuple(float(h) for h in self.approach_heights))
        if self.boundary_nodes < 8 or self.boundary_nodes > 2**20:
            raise ValueError(f"boundary_nodes out of range: {self.boundary_nodes}")
        if self.area_resolution < 16 or self.area_resolution > 4096:
            raise ValueError(f"area_resolution out of range: {self.area_resolution}")
        for name in ("delta_schedule", "approach_heights"):
            values = getattr(self, name)
            if not values or min(values) <= 0:
                raise ValueError(f"{name} must be non-empty and positive")
            if any(b >= a for a, b in zip(values, values[1:])):
                raise ValueError(f"{name} must be strictly decreasing")
        if self.extrapolation not in ("richardson", "none"):
            raise ValueError(f"unknown extrapolation {self.extrapolation!r}")
        if self.richardson_order < 1:
            raise ValueError("richardson_order must be at least 1")
        if self.extrapolation == "richardson":
            if len(self.delta_schedule) <= self.richardson_order:
                raise ValueError("delta_schedule too short for the extrapolation order")
            if len(self.approach_heights) <= self.richardson_order:
                raise ValueError("approach_heights too short for the extrapolation order")
        if self.refine_factor < 1 or self.near_factor <= 0 or self.exclusion_radius < 0:
            raise ValueError("refine_factor, near_factor and exclusion_radius out of range")

    def with_overrides(self, **overrides) -> "QuadSpec":
        """Copy with some fields replaced"""
        return replace(self, **overrides)

    def to_dict(self) -> dict:
        """JSON-ready description"""
        return {
            "boundary_nodes": self.boundary_nodes,
            "delta_schedule": list(self.delta_schedule),
            "area_resolution": self.area_resolution,
            "exclusion_radius": self.exclusion_radius,
            "extrapolation": self.extrapolation,
            "richardson_order": self.richardson_order,
            "refine_factor": self.refine_factor,
            "near_factor": self.near_factor,
            "approach_heights": list(self.approach_heights),
            "boundary_tol": self.boundary_tol,
        }


@dataclass(frozen=True)
class DeltaLimit:
    """Result of a deleted-neighbourhood limit

    :param value: Extrapolated (or last) value; quaternion array or float.
    :param deltas: Deletion radii used.
    :param deleted: Arc length removed at each radius; the extrapolation
        variable.
    :param partials: Deleted integrals at each radius.
    :param converged: False when successive differences stop decreasing.
    """

    value: object
    deltas: tuple
    deleted: tuple
    partials: tuple
    converged: bool

    @property
    def quat(self) -> CQuat:
        """The value as a `CQuat`"""
        return CQuat.from_array(self.value)

    @property
    def increments(self) -> np.ndarray:
        """Norms of the differences between successive partial values"""
        partials = np.asarray(self.partials)
        diffs = np.diff(partials, axis=0)
        if diffs.ndim == 1:
            return np.abs(diffs)
        return qnorm(diffs)


@dataclass(frozen=True)
class JumpReport:
    """Boundary limits of Phi_alpha at t against the jump formulas"""

    t: tuple
    f_t: CQuat
    lhs_plus: CQuat
    lhs_minus: CQuat
    rhs_plus: CQuat
    rhs_minus: CQuat
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def residual_plus(self) -> float:
        """|Phi^+(t) - rhs^+|"""
        return (self.lhs_plus - self.rhs_plus).norm()

    @property
    def residual_minus(self) -> float:
        """|Phi^-(t) - rhs^-|"""
        return (self.lhs_minus - self.rhs_minus).norm()

    @property
    def residual_jump(self) -> float:
        """|Phi^+(t) - Phi^-(t) - f(t)|"""
        return (self.lhs_plus - self.lhs_minus - self.f_t).norm()

    def to_dict(self) -> dict:
        """JSON-ready description"""
        return {
            "t": list(self.t),
            "f_t": _quat_json(self.f_t),
            "lhs_plus": _quat_json(self.lhs_plus),
            "lhs_minus": _quat_json(self.lhs_minus),
            "rhs_plus": _quat_json(self.rhs_plus),
            "rhs_minus": _quat_json(self.rhs_minus),
            "residual_plus": self.residual_plus,
            "residual_minus": self.residual_minus,
            "residual_jump": self.residual_jump,
        }


def _quat_json(q: CQuat) -> list:
    return [[x.real, x.imag] for x in q.components]


# shared helpers


@lru_cache(maxsize=64)
def _density_on_nodes(f: Density, curve: Curve, n: int) -> np.ndarray:
    values = f.values(nodes(curve, n).points)
    values.setflags(write=False)
    return values


def _check_side(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"side must be '+' or '-', got {side!r}")
    return side


def extrapolate_to_zero(steps: Sequence[float], values: Sequence, order: int):
    """Polynomial extrapolation to step 0 through the last order+1 samples

    :param steps: Step sizes, e.g. deleted arc lengths or approach heights.
    :param values: Values (scalars or arrays) at those steps.
    :param order: Polynomial order.
    :returns: The interpolating polynomial evaluated at 0. Falls back to the
        last value when steps coincide.
    """
    steps = [float(s) for s in steps[-(order + 1):]]
    values = [np.asarray(v) for v in values[-(order + 1):]]
    if len(set(steps)) < len(steps):
        return values[-1]
    total = np.zeros_like(values[-1])
    for j, (step_j, value_j) in enumerate(zip(steps, values)):
        weight = 1.0
        for m, step_m in enumerate(steps):
            if m != j:
                weight *= (0.0 - step_m) / (step_j - step_m)
        total = total + weight * value_j
    return total


def _kernel_sigma(ctx: KernelCtx, w: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    return qmul(cauchy_kernel(ctx, w), sigma)


def _integrand(ctx: KernelCtx, w: np.ndarray, sigma: np.ndarray, fvals: np.ndarray, form: str) -> np.ndarray:
    """Node terms of K(w) sigma f in quaternion, pair or vector form"""
    kernel = cauchy_kernel(ctx, w)
    if form == "quat":
        return qmul(qmul(kernel, sigma), fvals)
    k0, kvec = kernel[:, 0], kernel[:, 1:]
    svec = sigma[:, 1:]
    ks_scalar = dot(kvec, svec)
    ks_vector = cross(kvec, svec) + k0[:, None] * svec
    out = np.zeros_like(fvals)
    f0, fvec = fvals[:, 0], fvals[:, 1:]
    if form == "pair":
        out[:, 0] = -(ks_scalar * f0 + dot(ks_vector, fvec))
        out[:, 1:] = cross(ks_vector, fvec) - ks_scalar[:, None] * fvec + f0[:, None] * ks_vector
    else:
        out[:, 1:] = cross(ks_vector, fvec) - ks_scalar[:, None] * fvec
    return out


def _combine(one: np.ndarray, f_foot: np.ndarray, form: str) -> np.ndarray:
    if form == "quat":
        return qmul(one, f_foot)
    scalar, vector = pair_product(one[0], one[1:], f_foot[0], f_foot[1:])
    out = np.concatenate([[scalar], vector])
    if form == "vector":
        out[0] = 0
    return out


# Cauchy-type integral


def _cauchy_at(ctx: KernelCtx, curve: Curve, f: Density, z, q: QuadSpec, form: str = "quat") -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    code = int(classify(curve, z, q.boundary_tol))
    if code == BOUNDARY:
        raise BoundaryError(f"point ({z[0]!r}, {z[1]!r}) lies on the curve")
    n = q.boundary_nodes
    bn = nodes(curve, n)
    distance = float(np.min(np.hypot(*(bn.points - z).T)))
    if distance < q.near_factor * bn.spacing:
        n = q.boundary_nodes * q.refine_factor
        bn = nodes(curve, n)
        logger.debug("refining to %d nodes at distance %.3g from the curve", n, distance)
        if distance < q.near_factor * bn.spacing:
            return _cauchy_subtracted(ctx, curve, f, z, code, bn, n, form)
    terms = _integrand(ctx, bn.points - z, bn.sigma, _density_on_nodes(f, curve, n), form)
    return fsum_quat(terms)


def _cauchy_subtracted(ctx, curve, f, z, code, bn: BoundaryNodes, n: int, form: str) -> np.ndarray:
    """Close evaluation by density and Laplace-kernel subtraction

    Phi[f](z) = Phi[f - f(zeta*)](z) + Phi[1](z) f(zeta*) with zeta* the
    nearest curve point. Phi[1](z) is the interior indicator (the Laplace part
    exactly) plus the integral of the regular kernel remainder.
    """
    foot, _ = curve.project(z)
    f_foot = f.values(foot)
    w = bn.points - z
    fvals = _density_on_nodes(f, curve, n)
    part = fsum_quat(_integrand(ctx, w, bn.sigma, fvals - f_foot, form))
    one = fsum_quat(qmul(regular_part(ctx, w), bn.sigma))
    if code == INTERIOR:
        one[0] += 1.0
    return part + _combine(one, f_foot, form)


def cauchy_integral_many(
    ctx: KernelCtx, curve: Curve, f: Density, zs, q: QuadSpec, form: str = "quat", threads: Optional[int] = None
) -> np.ndarray:
    """Cauchy-type integral at many points off the curve

    :param zs: Points of shape (N, 2).
    :param form: "quat" for K*sigma*f, "pair" for the scalar-vector formulas,
        "vector" for the two-term vector integrand (scalar slot zero).
    :param threads: Worker threads; defaults to `get_thread_count()`.
        Results are returned in input order regardless of threads.
    :returns: Quaternion array of shape (N, 4).
    """
    zs = np.atleast_2d(np.asarray(zs, dtype=np.float64))
    threads = threads or get_thread_count()
    if threads > 1 and len(zs) > 1:
        rows = Parallel(n_jobs=threads, prefer="threads")(
            delayed(_cauchy_at)(ctx, curve, f, z, q, form) for z in zs
        )
    else:
        rows = [_cauchy_at(ctx, curve, f, z, q, form) for z in zs]
    return np.array(rows, dtype=np.complex128).reshape(len(zs), 4)


def cauchy_integral(ctx: KernelCtx, curve: Curve, f: Density, z, q: QuadSpec) -> CQuat:
    """Cauchy-type integral Phi_alpha[f](z) at one point off the curve

    :raises BoundaryError: When z lies in the boundary band.
    """
    return CQuat.from_array(_cauchy_at(ctx, curve, f, z, q))


def cauchy_integral_pair(ctx: KernelCtx, curve: Curve, f: Density, z, q: QuadSpec):
    """Cauchy-type integral assembled from the scalar-vector pair formulas

    Scalar part -sum(<K, sigma> f0 + <[K, sigma] + K0 sigma, f>), vector part
    sum([[K, sigma] + K0 sigma, f] - <K, sigma> f + f0 ([K, sigma] + K0 sigma)).

    :returns: `PairField`.
    """
    return PairField(CQuat.from_array(_cauchy_at(ctx, curve, f, z, q, "pair")))


def _require_vectorial(f: Density, curve: Curve, n: int) -> None:
    if np.max(np.abs(_density_on_nodes(f, curve, n)[:, 0])) > 0:
        raise DensityError("density must be purely vectorial (zero scalar part)")


def vector_cauchy_integral(ctx: KernelCtx, curve: Curve, f: Density, z, q: QuadSpec) -> np.ndarray:
    """Vector Cauchy-type integral of a purely vectorial density

    sum([[K, sigma] + K0 sigma, f] - <K, sigma> f)

    :returns: Complex 3-vector.
    :raises DensityError: When f has a nonzero scalar part on the nodes.
    """
    _require_vectorial(f, curve, q.boundary_nodes)
    return _cauchy_at(ctx, curve, f, z, q, "vector")[1:]


def membership_defect(ctx: KernelCtx, curve: Curve, f: Density, zs, q: QuadSpec) -> float:
    """Largest scalar part of the Cauchy-type integral of a vector density

    max over z of |sum <[K(zeta - z), sigma] + K0(zeta - z) sigma, f(zeta)>|;
    f belongs to the class numerically when this is below a tolerance.

    :raises DensityError: When f has a nonzero scalar part on the nodes.
    """
    _require_vectorial(f, curve, q.boundary_nodes)
    values = cauchy_integral_many(ctx, curve, f, zs, q, form="pair")
    return float(np.max(np.abs(values[:, 0])))


# Limits on the curve


def _delta_limit(curve: Curve, t: np.ndarray, bn: BoundaryNodes, terms: np.ndarray, q: QuadSpec) -> DeltaLimit:
    deltas = tuple(d for d in q.delta_schedule if d < curve.diameter)
    if len(deltas) < 2 or (q.extrapolation == "richardson" and len(deltas) <= q.richardson_order):
        raise ValueError("delta_schedule has too few radii below the curve diameter")
    scalar = terms.ndim == 1
    partials, deleted = [], []
    for delta in deltas:
        keep = deleted_arc(curve, t, delta, q.boundary_tol)(bn.points)
        if scalar:
            partials.append(fsum(terms[keep]))
        else:
            partials.append(fsum_quat(terms[keep]))
        deleted.append(fsum(bn.weights[~keep]))
    if q.extrapolation == "richardson":
        value = extrapolate_to_zero(deleted, partials, q.richardson_order)
    else:
        value = partials[-1]
    result = DeltaLimit(value, deltas, tuple(deleted), tuple(partials), True)
    increments = result.increments
    scale = 1e-12 * (1.0 + float(np.max(np.abs(np.asarray(partials)))))
    # single-node annuli at radii below the node spacing jitter the increments
    converged = bool(np.all(increments[1:] <= SETTLE_SLACK * increments[:-1] + scale))
    if not converged:
        logger.warning(
            "deleted integrals at t = (%.6g, %.6g) do not settle: increments %s",
            t[0],
            t[1],
            np.array2string(increments, precision=3),
        )
    return replace(result, converged=converged)


def _on_curve_terms(ctx, curve, f, t, q, form):
    bn = nodes(curve, q.boundary_nodes)
    fvals = _density_on_nodes(f, curve, q.boundary_nodes)
    diff = fvals - f.values(t)
    w = bn.points - t
    valid = np.hypot(w[:, 0], w[:, 1]) > 0
    terms = np.zeros_like(diff)
    if form == "davydov":
        terms = np.zeros(len(bn))
        kernel = cauchy_kernel(ctx, w[valid])
        terms[valid] = qnorm(kernel) * bn.weights[valid] * qnorm(diff[valid])
    else:
        terms[valid] = _integrand(ctx, w[valid], bn.sigma[valid], diff[valid], form)
    return bn, terms


def singular_integral(ctx: KernelCtx, curve: Curve, f: Density, t, q: QuadSpec) -> DeltaLimit:
    """Singular integral F_alpha[f](t) on the curve

    Deleted integrals of K(zeta - t) sigma (f(zeta) - f(t)) over the nodes
    with |zeta - t| > delta for each radius of the schedule, extrapolated to
    zero deleted arc length.

    :raises BoundaryError: When t is not on the curve.
    """
    t = require_on_curve(curve, t, q.boundary_tol)
    bn, terms = _on_curve_terms(ctx, curve, f, t, q, "quat")
    return _delta_limit(curve, t, bn, terms, q)


def singular_integral_pair(ctx: KernelCtx, curve: Curve, f: Density, t, q: QuadSpec) -> DeltaLimit:
    """Singular integral assembled from the pair formulas

    Scalar part -(<K, sigma> (f0(zeta) - f0(t)) + <[K, sigma] + K0 sigma, f(zeta) - f(t)>),
    vector part analogous to `cauchy_integral_pair`.
    """
    t = require_on_curve(curve, t, q.boundary_tol)
    bn, terms = _on_curve_terms(ctx, curve, f, t, q, "pair")
    return _delta_limit(curve, t, bn, terms, q)


def davydov_integral(ctx: KernelCtx, curve: Curve, f: Density, t, q: QuadSpec) -> DeltaLimit:
    """Davydov integral Psi_alpha[f](t) of absolute values

    Deleted integrals of |K(zeta - t)| |sigma| |f(zeta) - f(t)|; the partial
    values increase as the radius shrinks.
    """
    t = require_on_curve(curve, t, q.boundary_tol)
    bn, terms = _on_curve_terms(ctx, curve, f, t, q, "davydov")
    return _delta_limit(curve, t, bn, terms, q)


def davydov_uniformity(ctx: KernelCtx, curve: Curve, f: Density, q: QuadSpec, count: int = 16) -> np.ndarray:
    """Largest Davydov increment per schedule step over sampled boundary points

    A decreasing result is the sampled surrogate of uniform existence.

    :returns: Array of length len(delta_schedule) - 1.
    """
    points, _ = boundary_probes(curve, count)
    increments = [davydov_integral(ctx, curve, f, t, q).increments for t in points]
    return np.max(np.array(increments), axis=0)


@lru_cache(maxsize=256)
def _cells(curve: Curve, m: int, center: tuple, radius: Optional[float]) -> tuple:
    exclude = None if radius is None else (center, radius)
    return area_cells(curve, m, exclude)


def area_integral(ctx: KernelCtx, curve: Curve, t, q: QuadSpec) -> CQuat:
    """Area integral I_alpha(t) = -alpha * integral over the interior of K(zeta - t)

    :param t: Any point; a polar patch is used when t is in the closed
        interior or within the exclusion radius of the curve.
    :returns: `CQuat`; exactly zero for alpha = 0.
    """
    if ctx.is_degenerate:
        return CQuat()
    t = np.asarray(t, dtype=np.float64)
    # exterior points close to the curve still see singular cells
    near = int(classify(curve, t, q.boundary_tol)) != EXTERIOR
    near = near or float(np.hypot(*(curve.project(t)[0] - t))) < q.exclusion_radius
    radius = q.exclusion_radius if near else None
    points, weights = _cells(curve, q.area_resolution, (float(t[0]), float(t[1])), radius)
    w = points - t
    valid = np.hypot(w[:, 0], w[:, 1]) > 0
    terms = cauchy_kernel(ctx, w[valid]) * weights[valid][:, None]
    return CQuat.from_array(-ctx.alpha * fsum_quat(terms))


def boundary_limit(ctx: KernelCtx, curve: Curve, f: Density, t, side: str, q: QuadSpec) -> CQuat:
    """One-sided boundary value Phi^+(t) or Phi^-(t)

    Evaluates the Cauchy-type integral at t -/+ h * outward normal for the
    approach heights and extrapolates to h = 0.

    :param side: "+" for the interior limit, "-" for the exterior one.
    """
    side = _check_side(side)
    t = require_on_curve(curve, t, q.boundary_tol)
    _, param = curve.project(t)
    direction = curve.normal(param) * (-1.0 if side == "+" else 1.0)
    zs = np.array([t + h * direction for h in q.approach_heights])
    values = list(cauchy_integral_many(ctx, curve, f, zs, q))
    if q.extrapolation == "richardson":
        return CQuat.from_array(extrapolate_to_zero(q.approach_heights, values, q.richardson_order))
    return CQuat.from_array(values[-1])


def _rhs_parts(ctx, curve, f, t, q) -> tuple:
    t = require_on_curve(curve, t, q.boundary_tol)
    area = area_integral(ctx, curve, t, q).to_array()
    singular = singular_integral(ctx, curve, f, t, q).value
    return area, singular, f.values(t)


def plemelj_rhs(ctx: KernelCtx, curve: Curve, f: Density, t, side: str, q: QuadSpec) -> CQuat:
    """Right-hand side of the jump formulas

    "+": (I(t) + 1) f(t) + F(t); "-": I(t) f(t) + F(t).
    """
    side = _check_side(side)
    area, singular, f_t = _rhs_parts(ctx, curve, f, t, q)
    if side == "+":
        area = area + np.array([1, 0, 0, 0])
    return CQuat.from_array(qmul(area, f_t) + singular)


def _pair_rhs(area, singular, f_t, side):
    i0 = area[0] + (1.0 if side == "+" else 0.0)
    ivec, fvec, f0 = area[1:], f_t[1:], f_t[0]
    scalar = i0 * f0 - dot(ivec, fvec) + singular[0]
    vector = cross(ivec, fvec) + i0 * fvec + f0 * ivec + singular[1:]
    return scalar, vector


def plemelj_rhs_pair(ctx: KernelCtx, curve: Curve, f: Density, t, side: str, q: QuadSpec):
    """Jump right-hand side in scalar-vector form

    Scalar (I0 + s) f0 - <I, f> + F0 and vector [I, f] + (I0 + s) f + f0 I + F,
    with s = 1 on the "+" side and 0 on the "-" side; F is taken from the pair
    form of the singular integral.

    :returns: `PairField`.
    """
    side = _check_side(side)
    t = require_on_curve(curve, t, q.boundary_tol)
    area = area_integral(ctx, curve, t, q).to_array()
    singular = singular_integral_pair(ctx, curve, f, t, q).value
    scalar, vector = _pair_rhs(area, singular, f.values(t), side)
    return PairField.from_parts(complex(scalar), vector.tolist())


def vector_plemelj_rhs(ctx: KernelCtx, curve: Curve, f: Density, t, side: str, q: QuadSpec) -> np.ndarray:
    """Vector jump right-hand side for a purely vectorial density

    [I, f] + (I0 + s) f + F with s = 1 on the "+" side and 0 on the "-" side.

    :returns: Complex 3-vector.
    """
    side = _check_side(side)
    _require_vectorial(f, curve, q.boundary_nodes)
    t = require_on_curve(curve, t, q.boundary_tol)
    area = area_integral(ctx, curve, t, q).to_array()
    singular = singular_integral_pair(ctx, curve, f, t, q).value
    f_t = f.values(t)
    i0 = area[0] + (1.0 if side == "+" else 0.0)
    return cross(area[1:], f_t[1:]) + i0 * f_t[1:] + singular[1:]


def jump_report(ctx: KernelCtx, curve: Curve, f: Density, t, q: QuadSpec) -> JumpReport:
    """Boundary limits from both sides against both jump formulas at t"""
    area, singular, f_t = _rhs_parts(ctx, curve, f, t, q)
    t = np.asarray(t, dtype=np.float64)
    rhs_minus = qmul(area, f_t) + singular
    rhs_plus = rhs_minus + f_t
    return JumpReport(
        t=(float(t[0]), float(t[1])),
        f_t=CQuat.from_array(f_t),
        lhs_plus=boundary_limit(ctx, curve, f, t, "+", q),
        lhs_minus=boundary_limit(ctx, curve, f, t, "-", q),
        rhs_plus=CQuat.from_array(rhs_plus),
        rhs_minus=CQuat.from_array(rhs_minus),
        notes={"I": _quat_json(CQuat.from_array(area)), "F": _quat_json(CQuat.from_array(singular))},
    )
