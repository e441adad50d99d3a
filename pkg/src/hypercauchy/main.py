"""The main module"""

import logging
from typing import Optional, Sequence

import numpy as np

from hypercauchy import __version__
from hypercauchy.config import Scenario, load_scenarios
from hypercauchy.datasets import load_tolerances
from hypercauchy.geometry import BOUNDARY, boundary_probes, classify
from hypercauchy.kernel import cauchy_kernel, kernel_split, theta
from hypercauchy.potential import cauchy_integral_many, jump_report
from hypercauchy.utilities import field_frame, write_grid, write_report
from hypercauchy.verify import CLAIMS, certify_all, summarize

logger = logging.getLogger(__name__)


def _quat_json(values) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values).ravel()]


def cmd_field(
    scenario: Scenario,
    output_path: str,
    window: Sequence[float] = (-2.0, 2.0, -2.0, 2.0),
    resolution: int = 64,
):
    """Evaluate the Cauchy-type integral on a grid and write it as CSV

    :param scenario: The scenario.
    :param output_path: CSV file to write.
    :param window: (x0, x1, y0, y1) of the grid.
    :param resolution: Points per axis.
    :returns: The written DataFrame.
    :notes: Rows are ordered by y, then x. Points in the boundary band are
        kept with NaN values and mask 1.
    """
    if resolution < 1:
        raise ValueError("resolution must be positive")
    x0, x1, y0, y1 = window
    xs = np.linspace(x0, x1, resolution)
    ys = np.linspace(y0, y1, resolution)
    points = np.stack(np.meshgrid(xs, ys, indexing="xy"), axis=-1).reshape(-1, 2)
    curve, quad = scenario.build_curve(), scenario.quad_spec()
    mask = classify(curve, points, quad.boundary_tol) == BOUNDARY
    logger.info(
        "evaluating %s on %d points (%d masked)", scenario.name, len(points), int(np.sum(mask))
    )
    values = np.zeros((len(points), 4), dtype=np.complex128)
    if np.any(~mask):
        values[~mask] = cauchy_integral_many(
            scenario.kernel_ctx(), curve, scenario.build_density(), points[~mask], quad
        )
    frame = field_frame(points, values, mask)
    write_grid(frame, output_path)
    return frame


def cmd_jump(scenario: Scenario, output_path: str, samples: int = 16) -> tuple:
    """Compare boundary limits with the jump formulas at equispaced points

    :param scenario: The scenario.
    :param output_path: JSON file to write.
    :param samples: Number of boundary points.
    :returns: (payload, passed) where passed means every residual is below
        the jump tolerance scaled by 1 + |f(t)|.
    """
    ctx, curve, density, quad = (
        scenario.kernel_ctx(),
        scenario.build_curve(),
        scenario.build_density(),
        scenario.quad_spec(),
    )
    tolerance = load_tolerances()["claims"]["theorem_jump"]
    points, _ = boundary_probes(curve, samples)
    reports, worst = [], 0.0
    for index, t in enumerate(points):
        logger.info("jump report %d of %d at (%.6g, %.6g)", index + 1, samples, t[0], t[1])
        report = jump_report(ctx, curve, density, t, quad)
        scale = 1.0 + report.f_t.norm()
        worst = max(worst, report.residual_plus / scale, report.residual_minus / scale, report.residual_jump / scale)
        reports.append(report.to_dict())
    payload = {
        "scenario": scenario.model_dump(mode="json"),
        "digest": scenario.digest(),
        "reports": reports,
        "max_scaled_residual": worst,
        "tolerance": tolerance,
        "passed": worst < tolerance,
    }
    write_report(payload, output_path, __version__)
    return payload, payload["passed"]


def cmd_certify(
    scenarios: str,
    output_path: str,
    summary_path: Optional[str] = None,
    claims: Optional[Sequence[str]] = None,
) -> tuple:
    """Run the certification suite over a scenario set

    :param scenarios: Scenario set file, or "reference".
    :param output_path: JSON file for the reports.
    :param summary_path: Optional markdown summary file.
    :param claims: Claim ids to run; all of `CLAIMS` by default.
    :returns: (reports, passed)
    """
    claims = list(claims) if claims else list(CLAIMS)
    unknown = [c for c in claims if c not in CLAIMS]
    if unknown:
        raise ValueError(f"unknown claims: {', '.join(unknown)}")
    reports = []
    for scenario in load_scenarios(scenarios):
        logger.info("certifying scenario %s", scenario.name)
        reports.extend(certify_all(scenario, claims))
    passed = all(r.passed for r in reports)
    payload = {
        "tolerances_version": load_tolerances()["version"],
        "passed": passed,
        "reports": [r.to_dict() for r in reports],
    }
    write_report(payload, output_path, __version__)
    if summary_path:
        with open(summary_path, "w", encoding="utf-8") as out:
            out.write(summarize(reports))
    return reports, passed


def cmd_kernel_eval(scenario: Scenario, point: Sequence[float]) -> dict:
    """Single-point values of theta, the Cauchy kernel and its split

    :param scenario: The scenario; only its parameter is used.
    :param point: Point (x, y) away from the origin.
    :returns: JSON-ready dict.
    """
    ctx = scenario.kernel_ctx()
    z = np.asarray(point, dtype=np.float64)
    result = {
        "alpha": [ctx.alpha.real, ctx.alpha.imag],
        "branch": ctx.p,
        "point": z.tolist(),
        "theta": _quat_json([theta(ctx, z)])[0],
        "kernel": _quat_json(cauchy_kernel(ctx, z)),
    }
    if not ctx.is_degenerate:
        singular, regular = kernel_split(ctx, z)
        result["split"] = {"singular": _quat_json(singular), "regular": _quat_json(regular)}
    return result
