"""The geometry module

Closed Jordan curves with positive (counterclockwise) orientation, the
interior and exterior domains they bound, boundary quadrature nodes carrying
the differential sigma = d(eta)*i1 - d(xi)*i2, and area cells for integrals
over the interior.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator, Optional, Tuple

import numpy as np

from hypercauchy.exceptions import BoundaryError

logger = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-9
MIN_NODES = 8
MIN_CELLS = 16
PANEL_ORDER = 8
POLAR_RADIAL = 32
POLAR_ANGULAR = 32

TWO_PI = 2 * np.pi


class Region(str, Enum):
    """Location of a point relative to a curve"""

    INTERIOR = "interior"
    EXTERIOR = "exterior"
    BOUNDARY = "boundary"


# codes returned by classify
INTERIOR, BOUNDARY, EXTERIOR = 1, 0, -1


@dataclass(frozen=True)
class Curve:
    """A closed, positively oriented Jordan curve

    Use the `circle`, `ellipse` and `polygon` constructors. The curve is
    parameterised on [0, 2 pi); polygons are parameterised proportionally to
    arc length starting at the first vertex.
    """

    kind: str
    center: Tuple[float, float] = (0.0, 0.0)
    radius: float = 0.0
    semi_axes: Tuple[float, float] = (0.0, 0.0)
    vertices: Tuple[Tuple[float, float], ...] = ()
    nodes_hint: int = 2048

    @classmethod
    def circle(cls, center=(0.0, 0.0), radius: float = 1.0, nodes_hint: int = 2048):
        """Circle of a given center and radius"""
        if not radius > 0:
            raise ValueError(f"radius must be positive, got {radius}")
        return cls("circle", center=_pair(center), radius=float(radius), nodes_hint=nodes_hint)

    @classmethod
    def ellipse(cls, center=(0.0, 0.0), semi_axes=(1.0, 1.0), nodes_hint: int = 2048):
        """Axis-aligned ellipse with semi-axes (a, b)"""
        a, b = _pair(semi_axes)
        if not (a > 0 and b > 0):
            raise ValueError(f"semi-axes must be positive, got {semi_axes}")
        return cls("ellipse", center=_pair(center), semi_axes=(a, b), nodes_hint=nodes_hint)

    @classmethod
    def polygon(cls, vertices, nodes_hint: int = 2048):
        """Simple polygon; vertex order is normalised to counterclockwise"""
        verts = tuple(_pair(v) for v in vertices)
        if len(verts) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        arr = np.array(verts)
        if _shoelace(arr) == 0:
            raise ValueError("polygon has zero area")
        if _shoelace(arr) < 0:
            verts = tuple(reversed(verts))
        _check_simple(np.array(verts))
        return cls("polygon", vertices=verts, nodes_hint=nodes_hint)

    # parameterisation

    def point(self, param) -> np.ndarray:
        """Point(s) gamma(param) of shape (..., 2)"""
        s = np.asarray(param, dtype=np.float64)
        if self.kind == "circle":
            return _stack(
                self.center[0] + self.radius * np.cos(s),
                self.center[1] + self.radius * np.sin(s),
            )
        if self.kind == "ellipse":
            a, b = self.semi_axes
            return _stack(self.center[0] + a * np.cos(s), self.center[1] + b * np.sin(s))
        edge, frac = self._locate(s)
        starts, vectors, _ = self._edges()
        return starts[edge] + frac[..., None] * vectors[edge]

    def derivative(self, param) -> np.ndarray:
        """Derivative d(gamma)/d(param) of shape (..., 2)"""
        s = np.asarray(param, dtype=np.float64)
        if self.kind == "circle":
            return _stack(-self.radius * np.sin(s), self.radius * np.cos(s))
        if self.kind == "ellipse":
            a, b = self.semi_axes
            return _stack(-a * np.sin(s), b * np.cos(s))
        edge, _ = self._locate(s)
        _, vectors, lengths = self._edges()
        return vectors[edge] / lengths[edge][..., None] * (self.length / TWO_PI)

    def tangent(self, param) -> np.ndarray:
        """Unit tangent in the direction of positive orientation"""
        d = self.derivative(param)
        return d / np.hypot(d[..., 0], d[..., 1])[..., None]

    def normal(self, param) -> np.ndarray:
        """Outward unit normal"""
        tau = self.tangent(param)
        return _stack(tau[..., 1], -tau[..., 0])

    # metrics

    @property
    def length(self) -> float:
        """Length l of the curve"""
        return _length(self)

    @property
    def diameter(self) -> float:
        """Largest distance between two points of the curve"""
        if self.kind == "circle":
            return 2 * self.radius
        if self.kind == "ellipse":
            return 2 * max(self.semi_axes)
        verts = np.array(self.vertices)
        return float(max(np.hypot(*(p - q)) for p, q in combinations(verts, 2)))

    def max_distance(self, z) -> float:
        """Largest distance d from a point to the curve"""
        z = np.asarray(z, dtype=np.float64)
        if self.kind == "circle":
            return float(np.hypot(*(z - self.center)) + self.radius)
        if self.kind == "polygon":
            return float(np.max(np.hypot(*(np.array(self.vertices) - z).T)))
        pts = self.point(np.linspace(0.0, TWO_PI, 4096, endpoint=False))
        return float(np.max(np.hypot(*(pts - z).T)))

    def bounding_box(self) -> tuple:
        """(xmin, xmax, ymin, ymax)"""
        if self.kind == "circle":
            cx, cy = self.center
            return (cx - self.radius, cx + self.radius, cy - self.radius, cy + self.radius)
        if self.kind == "ellipse":
            (cx, cy), (a, b) = self.center, self.semi_axes
            return (cx - a, cx + a, cy - b, cy + b)
        verts = np.array(self.vertices)
        return (verts[:, 0].min(), verts[:, 0].max(), verts[:, 1].min(), verts[:, 1].max())

    def signed_area(self, n: Optional[int] = None) -> float:
        """Enclosed area from the sigma weights, (1/2) sum(xi d(eta) - eta d(xi))

        Positive for positive orientation.
        """
        bn = nodes(self, n or self.nodes_hint)
        deta, dxi = bn.sigma[:, 1].real, -bn.sigma[:, 2].real
        return float(0.5 * np.sum(bn.points[:, 0] * deta - bn.points[:, 1] * dxi))

    def to_dict(self) -> dict:
        """JSON-ready description"""
        if self.kind == "circle":
            return {"kind": "circle", "center": list(self.center), "radius": self.radius}
        if self.kind == "ellipse":
            return {"kind": "ellipse", "center": list(self.center), "semi_axes": list(self.semi_axes)}
        return {"kind": "polygon", "vertices": [list(v) for v in self.vertices]}

    # projection

    def project(self, z) -> tuple:
        """Nearest point of the curve to z and its parameter

        :returns: (point, param). For the center of a circle every point is
            nearest and the tie is broken at param 0.
        """
        z = np.asarray(z, dtype=np.float64)
        if self.kind == "circle":
            offset = z - np.array(self.center)
            if np.hypot(*offset) == 0:
                param = 0.0
            else:
                param = float(np.arctan2(offset[1], offset[0]) % TWO_PI)
            return self.point(param), param
        if self.kind == "ellipse":
            param = _ellipse_foot(self, z)
            return self.point(param), param
        starts, vectors, lengths = self._edges()
        frac = np.clip(np.sum((z - starts) * vectors, axis=1) / lengths**2, 0.0, 1.0)
        feet = starts + frac[:, None] * vectors
        edge = int(np.argmin(np.hypot(*(feet - z).T)))
        offsets = np.concatenate([[0.0], np.cumsum(lengths)])
        param = float((offsets[edge] + frac[edge] * lengths[edge]) / self.length * TWO_PI)
        return feet[edge], param % TWO_PI

    # polygon helpers

    def _edges(self) -> tuple:
        verts = np.array(self.vertices)
        vectors = np.roll(verts, -1, axis=0) - verts
        return verts, vectors, np.hypot(vectors[:, 0], vectors[:, 1])

    def _locate(self, s: np.ndarray) -> tuple:
        _, _, lengths = self._edges()
        offsets = np.concatenate([[0.0], np.cumsum(lengths)])
        arc = np.mod(s, TWO_PI) / TWO_PI * offsets[-1]
        edge = np.clip(np.searchsorted(offsets, arc, side="right") - 1, 0, len(lengths) - 1)
        return edge, (arc - offsets[edge]) / lengths[edge]


def _pair(values) -> Tuple[float, float]:
    x, y = values
    return (float(x), float(y))


def _stack(x, y) -> np.ndarray:
    return np.stack(np.broadcast_arrays(x, y), axis=-1)


def _shoelace(verts: np.ndarray) -> float:
    x, y = verts[:, 0], verts[:, 1]
    return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _check_simple(verts: np.ndarray) -> None:
    """Reject polygons whose non-adjacent edges intersect"""
    count = len(verts)
    for i, j in combinations(range(count), 2):
        if j == i + 1 or (i == 0 and j == count - 1):
            continue
        if _segments_intersect(verts[i], verts[(i + 1) % count], verts[j], verts[(j + 1) % count]):
            raise ValueError(f"polygon is not simple: edges {i} and {j} intersect")


def _segments_intersect(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        return np.sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    # collinear overlaps
    for d, a, b, c in ((d1, q1, q2, p1), (d2, q1, q2, p2), (d3, p1, p2, q1), (d4, p1, p2, q2)):
        if d == 0 and min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]):
            return True
    return False


@lru_cache(maxsize=64)
def _length(curve: Curve) -> float:
    if curve.kind == "circle":
        return TWO_PI * curve.radius
    if curve.kind == "polygon":
        return float(np.sum(curve._edges()[2]))  # pylint: disable=protected-access
    # trapezoid on a smooth periodic integrand is spectrally accurate
    s = np.linspace(0.0, TWO_PI, 4096, endpoint=False)
    speed = np.hypot(*curve.derivative(s).T)
    return float(np.sum(speed) * TWO_PI / s.size)


def _ellipse_foot(curve: Curve, z: np.ndarray) -> float:
    """Parameter of the nearest ellipse point by Newton's method"""
    a, b = curve.semi_axes
    w = z - np.array(curve.center)
    samples = np.linspace(0.0, TWO_PI, 256, endpoint=False)
    dist = np.hypot(a * np.cos(samples) - w[0], b * np.sin(samples) - w[1])
    s = float(samples[int(np.argmin(dist))])
    for _ in range(50):
        c, sn = np.cos(s), np.sin(s)
        gx, gy = a * c - w[0], b * sn - w[1]
        dx, dy = -a * sn, b * c
        g = gx * dx + gy * dy
        dg = dx * dx + dy * dy + gx * (-a * c) + gy * (-b * sn)
        if dg <= 0:
            break
        step = g / dg
        s -= step
        if abs(step) < 1e-15:
            break
    return float(s % TWO_PI)


@dataclass(frozen=True)
class BoundaryNode:
    """One quadrature node: point zeta, sigma weight and parameter"""

    point: np.ndarray
    sigma: np.ndarray
    weight: float
    param: float


@dataclass(frozen=True)
class BoundaryNodes:
    """Quadrature nodes of a curve stored as arrays

    :param points: Node points zeta, shape (n, 2).
    :param sigma: Quaternion weights (0, d(eta), -d(xi), 0), shape (n, 4).
    :param weights: Arc-length weights |d(zeta)|, shape (n,).
    :param params: Curve parameters, shape (n,).
    """

    points: np.ndarray
    sigma: np.ndarray
    weights: np.ndarray
    params: np.ndarray

    def __len__(self) -> int:
        return self.points.shape[0]

    def __getitem__(self, index: int) -> BoundaryNode:
        return BoundaryNode(
            self.points[index], self.sigma[index], float(self.weights[index]), float(self.params[index])
        )

    def __iter__(self) -> Iterator[BoundaryNode]:
        return (self[k] for k in range(len(self)))

    @property
    def spacing(self) -> float:
        """Mean arc length per node"""
        return float(np.sum(self.weights) / len(self))


@lru_cache(maxsize=32)
def nodes(curve: Curve, n: int) -> BoundaryNodes:
    """Boundary quadrature nodes

    Smooth curves get n nodes of the trapezoidal rule in the parameter.
    Polygons get Gauss-Legendre panels of PANEL_ORDER points per edge, the
    number of panels per edge proportional to its length, so the node count
    is close to but not exactly n. Panels are open at the vertices.

    :param curve: The curve.
    :param n: Requested node count, at least MIN_NODES.
    :returns: Read-only `BoundaryNodes`.
    """
    if n < MIN_NODES:
        raise ValueError(f"need at least {MIN_NODES} boundary nodes, got {n}")
    if curve.kind in ("circle", "ellipse"):
        params = TWO_PI * np.arange(n) / n
        points = curve.point(params)
        dz = curve.derivative(params) * (TWO_PI / n)
    else:
        points, dz, params = _polygon_panels(curve, n)
    sigma = np.zeros((points.shape[0], 4), dtype=np.complex128)
    sigma[:, 1] = dz[:, 1]
    sigma[:, 2] = -dz[:, 0]
    weights = np.hypot(dz[:, 0], dz[:, 1])
    for arr in (points, sigma, weights, params):
        arr.setflags(write=False)
    return BoundaryNodes(points, sigma, weights, params)


def _polygon_panels(curve: Curve, n: int) -> tuple:
    gauss_x, gauss_w = np.polynomial.legendre.leggauss(PANEL_ORDER)
    gauss_x, gauss_w = (gauss_x + 1) / 2, gauss_w / 2
    starts, vectors, lengths = curve._edges()  # pylint: disable=protected-access
    total = float(np.sum(lengths))
    offsets = np.concatenate([[0.0], np.cumsum(lengths)])
    points, dz, params = [], [], []
    for edge, (start, vector, length) in enumerate(zip(starts, vectors, lengths)):
        panels = max(1, int(round(n * length / total / PANEL_ORDER)))
        for panel in range(panels):
            frac = (panel + gauss_x) / panels
            points.append(start + frac[:, None] * vector)
            dz.append(np.outer(gauss_w / panels, vector))
            params.append((offsets[edge] + frac * length) / total * TWO_PI)
    return np.concatenate(points), np.concatenate(dz), np.concatenate(params)


def classify(curve: Curve, points, tol: float = BOUNDARY_TOL) -> np.ndarray:
    """Region codes for many points

    :param curve: The curve.
    :param points: Array of shape (..., 2).
    :param tol: Half-width of the boundary band.
    :returns: Integer array: INTERIOR (1), BOUNDARY (0) or EXTERIOR (-1).
    """
    pts = np.asarray(points, dtype=np.float64)
    if curve.kind == "circle":
        signed = np.hypot(pts[..., 0] - curve.center[0], pts[..., 1] - curve.center[1]) - curve.radius
    elif curve.kind == "ellipse":
        (a, b), (cx, cy) = curve.semi_axes, curve.center
        x, y = pts[..., 0] - cx, pts[..., 1] - cy
        level = (x / a) ** 2 + (y / b) ** 2 - 1
        grad = 2 * np.hypot(x / a**2, y / b**2)
        # first-order signed distance; exact on the curve
        signed = np.where(grad > 0, level / np.where(grad > 0, grad, 1.0), -1.0)
    else:
        signed = _polygon_signed_distance(curve, pts)
    codes = np.where(signed < 0, INTERIOR, EXTERIOR)
    return np.where(np.abs(signed) <= tol, BOUNDARY, codes)


def _polygon_signed_distance(curve: Curve, pts: np.ndarray) -> np.ndarray:
    starts, vectors, lengths = curve._edges()  # pylint: disable=protected-access
    rel = pts[..., None, :] - starts
    frac = np.clip(np.sum(rel * vectors, axis=-1) / lengths**2, 0.0, 1.0)
    gap = rel - frac[..., None] * vectors
    dist = np.min(np.hypot(gap[..., 0], gap[..., 1]), axis=-1)
    # crossing number for a horizontal ray
    y0, y1 = starts[:, 1], starts[:, 1] + vectors[:, 1]
    py = pts[..., 1][..., None]
    straddle = (y0 <= py) != (y1 <= py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xcross = starts[:, 0] + (py - y0) / vectors[:, 1] * vectors[:, 0]
    crossings = np.sum(straddle & (pts[..., 0][..., None] < xcross), axis=-1)
    return np.where(crossings % 2 == 1, -dist, dist)


def contains(curve: Curve, z, tol: float = BOUNDARY_TOL) -> Region:
    """Locate a single point relative to the curve

    :param curve: The curve.
    :param z: Point (x, y).
    :param tol: Half-width of the boundary band.
    :returns: `Region.INTERIOR`, `Region.EXTERIOR` or `Region.BOUNDARY`.
    """
    code = int(classify(curve, np.asarray(z, dtype=np.float64), tol))
    return {INTERIOR: Region.INTERIOR, BOUNDARY: Region.BOUNDARY, EXTERIOR: Region.EXTERIOR}[code]


def require_on_curve(curve: Curve, t, tol: float = BOUNDARY_TOL) -> np.ndarray:
    """Return t as an array, raising BoundaryError if it is not on the curve"""
    t = np.asarray(t, dtype=np.float64)
    if contains(curve, t, tol) is not Region.BOUNDARY:
        raise BoundaryError(f"point ({t[0]!r}, {t[1]!r}) is not on the curve")
    return t


def deleted_arc(curve: Curve, t, delta: float, tol: float = BOUNDARY_TOL) -> Callable:
    """Node filter that removes the chordal delta-neighbourhood of t

    :param curve: The curve.
    :param t: Point on the curve.
    :param delta: Chordal radius, 0 <= delta <= diameter.
    :returns: Function mapping node points (n, 2) to a boolean mask that is
        True where |zeta - t| > delta.
    """
    t = require_on_curve(curve, t, tol)
    if delta < 0 or delta > curve.diameter:
        raise ValueError(f"delta must lie in [0, {curve.diameter}], got {delta}")

    def keep(points) -> np.ndarray:
        points = np.asarray(points, dtype=np.float64)
        return np.hypot(points[..., 0] - t[0], points[..., 1] - t[1]) > delta

    return keep


def nearest_on_curve(curve: Curve, z) -> np.ndarray:
    """Point of the curve nearest to z"""
    return curve.project(z)[0]


def boundary_probes(curve: Curve, count: int, offset: float = 0.0) -> tuple:
    """Equispaced boundary points in the curve parameter

    :returns: (points, params) with shapes (count, 2) and (count,).
    """
    params = offset + TWO_PI * np.arange(count) / count
    return curve.point(params), params


def area_cells(curve: Curve, m: int, exclude: Optional[tuple] = None) -> tuple:
    """Midpoint cells covering the interior domain

    Cells of an m x m grid over the bounding box are kept when their center is
    in the closed interior. With `exclude = (center, radius)` the cells whose
    centers lie within the radius are replaced by a polar patch of
    POLAR_RADIAL x POLAR_ANGULAR sub-cells with radii graded like (j/J)^2.
    When the patch center is within the radius of the curve, the angular grid
    starts along the boundary tangent at the nearest point.

    :param curve: The curve.
    :param m: Cells per axis, at least MIN_CELLS.
    :param exclude: Optional (center, radius) of the singular patch.
    :returns: (points, weights) arrays of shapes (N, 2) and (N,).
    """
    if m < MIN_CELLS:
        raise ValueError(f"need at least {MIN_CELLS} cells per axis, got {m}")
    xmin, xmax, ymin, ymax = curve.bounding_box()
    hx, hy = (xmax - xmin) / m, (ymax - ymin) / m
    xs = xmin + hx * (np.arange(m) + 0.5)
    ys = ymin + hy * (np.arange(m) + 0.5)
    grid = np.stack(np.meshgrid(xs, ys, indexing="xy"), axis=-1).reshape(-1, 2)
    grid = grid[classify(curve, grid) != EXTERIOR]
    weights = np.full(grid.shape[0], hx * hy)
    if exclude is None or exclude[1] <= 0:
        return grid, weights
    center, radius = np.asarray(exclude[0], dtype=np.float64), float(exclude[1])
    outside = np.hypot(grid[:, 0] - center[0], grid[:, 1] - center[1]) >= radius
    patch, patch_weights = _polar_patch(curve, center, radius)
    return (
        np.concatenate([grid[outside], patch]),
        np.concatenate([weights[outside], patch_weights]),
    )


def _polar_patch(curve: Curve, center: np.ndarray, radius: float) -> tuple:
    foot, param = curve.project(center)
    start = 0.0
    if np.hypot(*(foot - center)) < radius:
        tau = curve.tangent(param)
        start = float(np.arctan2(tau[1], tau[0]))
    edges = radius * (np.arange(POLAR_RADIAL + 1) / POLAR_RADIAL) ** 2
    mids = 0.5 * (edges[:-1] + edges[1:])
    ring_area = 0.5 * (edges[1:] ** 2 - edges[:-1] ** 2)
    dtheta = TWO_PI / POLAR_ANGULAR
    angles = start + dtheta * (np.arange(POLAR_ANGULAR) + 0.5)
    rr, aa = np.meshgrid(mids, angles, indexing="ij")
    points = np.stack([center[0] + rr * np.cos(aa), center[1] + rr * np.sin(aa)], axis=-1).reshape(-1, 2)
    weights = np.repeat(ring_area * dtheta, POLAR_ANGULAR)
    inside = classify(curve, points) != EXTERIOR
    return points[inside], weights[inside]
