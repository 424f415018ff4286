"""Finite-difference and boundary-sampling oracles.

None of these call the analytic gradient code; they only sample values.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Sequence

import numpy as np

from annulusgreen.core import auto_truncation, fixed_truncation, to_planar, to_polar
from annulusgreen.errors import OracleError
from annulusgreen.green.series import regular_part
from annulusgreen.types import (
    TWO_PI,
    Annulus,
    FDReport,
    PlanarPoint,
    PolarPoint,
    SeriesControl,
)

BOUNDARY_Q_CAP = 0.95
HARMONIC_SERIES_TOL = 1e-13


def _five_point(func: Callable[[PlanarPoint], float], p: PlanarPoint, h: float) -> float:
    centre = func(p)
    neighbours = math.fsum(
        [
            func(PlanarPoint(p.x1 + h, p.x2)),
            func(PlanarPoint(p.x1 - h, p.x2)),
            func(PlanarPoint(p.x1, p.x2 + h)),
            func(PlanarPoint(p.x1, p.x2 - h)),
        ]
    )
    return (neighbours - 4.0 * centre) / (h * h)


def discrete_laplacian(
    func: Callable[[PlanarPoint], float],
    sample_points: Sequence[PlanarPoint],
    h: float,
) -> FDReport:
    """Max 5-point Laplacian magnitude over the samples at spacing h and h/2.

    The order estimate is log2(residual_h / residual_h2); it is NaN when either
    residual is exactly zero (e.g. constant functions).
    """
    if not h > 0.0:
        raise OracleError("stencil spacing h must be positive")
    if not sample_points:
        raise OracleError("at least one sample point is required")
    residual_h = max(abs(_five_point(func, p, h)) for p in sample_points)
    residual_h2 = max(abs(_five_point(func, p, 0.5 * h)) for p in sample_points)
    if residual_h > 0.0 and residual_h2 > 0.0:
        order = math.log2(residual_h / residual_h2)
    else:
        order = math.nan
    return FDReport(h=h, residual_h=residual_h, residual_h2=residual_h2, order_estimate=order)


def fd_harmonic_check(
    ann: Annulus,
    y: PolarPoint,
    sample_points: Sequence[PolarPoint],
    h: float,
    ctrl: SeriesControl | None = None,
) -> FDReport:
    """Discrete Laplacian of x ↦ u(x, y) around each sample.

    Samples must keep 4h from both boundary circles and from the pole. One
    truncation covers every stencil node, so the sampled function is a single
    fixed harmonic polynomial in x.
    """
    margin = 4.0 * h
    for p in sample_points:
        if p.r - ann.a < margin or ann.b - p.r < margin:
            raise OracleError(
                f"sample at r={p.r!r} is closer than 4h={margin!r} to the boundary"
            )
        if _distance(p, y) < margin:
            raise OracleError(f"sample at r={p.r!r} is closer than 4h={margin!r} to the pole")
    if ctrl is None:
        radii = [y.r] + [r for p in sample_points for r in (p.r - h, p.r + h)]
        ctrl = auto_truncation(ann, radii, HARMONIC_SERIES_TOL)

    def u(x: PlanarPoint) -> float:
        return regular_part(ann, to_polar(x), y, ctrl)

    return discrete_laplacian(u, [to_planar(p) for p in sample_points], h)


def _distance(p: PolarPoint, q: PolarPoint) -> float:
    square = p.r * p.r + q.r * q.r - 2.0 * p.r * q.r * math.cos(p.theta - q.theta)
    return math.sqrt(max(square, 0.0))


def boundary_residual(ann: Annulus, y: PolarPoint, m: int, n_samples: int = 64) -> float:
    """max |u(x, y) − log|x − y|| over both boundary circles at truncation m.

    Sample angles start at θ_y, where the neglected tail is largest.
    """
    if not ann.a < y.r < ann.b:
        raise OracleError("the pole must lie strictly inside the annulus")
    if ann.a / y.r > BOUNDARY_Q_CAP or y.r / ann.b > BOUNDARY_Q_CAP:
        raise OracleError(
            f"pole radius {y.r!r} violates the boundary ratio cap {BOUNDARY_Q_CAP}"
        )
    if m < 1:
        raise OracleError("truncation order must be at least 1")
    if n_samples < 1:
        raise OracleError("n_samples must be positive")
    ctrl = fixed_truncation(m)
    worst = 0.0
    for radius in (ann.a, ann.b):
        for k in range(n_samples):
            theta = y.theta + TWO_PI * k / n_samples
            x = PolarPoint(radius, theta)
            exact = math.log(_distance(x, y))
            worst = max(worst, abs(regular_part(ann, x, y, ctrl) - exact))
    return worst


def fd_gradient_check(
    func: Callable[[np.ndarray], float],
    grad: Callable[[np.ndarray], np.ndarray],
    points: Iterable[np.ndarray],
    h: float = 1e-5,
) -> float:
    """Largest component gap between ``grad`` and central differences of ``func``."""
    if not h > 0.0:
        raise OracleError("difference step h must be positive")
    worst = 0.0
    for point in points:
        x = np.asarray(point, dtype=float)
        analytic = np.asarray(grad(x), dtype=float)
        for k in range(x.size):
            step = np.zeros_like(x)
            step[k] = h
            central = (func(x + step) - func(x - step)) / (2.0 * h)
            worst = max(worst, abs(central - float(analytic[k])))
    return worst
