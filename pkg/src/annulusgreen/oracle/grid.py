"""Initialization-free grid sweep of the two-point functional.

F(r₁, r₂, Δθ) is unbounded below near the diagonal and grows without bound at the
boundary, so the pair critical point is a saddle: confining in the radii and
repelling in the angle. The sweep returns the cell minimizing, over (r₁, r₂), the
maximum of F over Δθ. θ₁ is fixed to 0 by rotation invariance.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from annulusgreen.core import auto_truncation, truncation_for_ratio
from annulusgreen.errors import OracleError
from annulusgreen.green.series import robin
from annulusgreen.types import TWO_PI, Annulus, Configuration, PolarPoint

logger = logging.getLogger(__name__)

GRID_SERIES_TOL = 1e-10
GRID_M_MAX = 4096
MIN_GRID = 4


@dataclass(frozen=True)
class GridOptimum:
    config: Configuration
    value: float
    n_grid: int
    radius_cells: tuple[int, int]
    angle_cell: int

    @property
    def angle_gap(self) -> float:
        p1, p2 = self.config.points
        return (p2.theta - p1.theta) % TWO_PI


def _pair_green(
    ann: Annulus, r1: float, r2: np.ndarray, phis: np.ndarray, orders: np.ndarray
) -> np.ndarray:
    """G((r1, 0), (r2, φ)) for every r2 (rows) and φ (columns), summed directly."""
    a2, b2 = ann.a * ann.a, ann.b * ann.b
    col = r2[:, None]
    den = (1.0 - ann.rho**orders) * orders
    modes = (
        np.power(r1 * col / b2, orders)
        - np.power(a2 * r1 / (col * b2), orders)
        + np.power(a2 / (r1 * col), orders)
        - np.power(a2 * col / (r1 * b2), orders)
    ) / den
    base = (
        math.log(ann.b) * np.log(ann.a / r2) + np.log(r2 / ann.b) * math.log(r1)
    ) / ann.log_ratio
    regular = base[:, None] - modes @ np.cos(np.outer(orders, phis))
    dist2 = r1 * r1 + col * col - 2.0 * r1 * col * np.cos(phis)[None, :]
    return regular - 0.5 * np.log(dist2)


def _robin_at(ann: Annulus, r: float) -> float:
    ctrl = auto_truncation(ann, [r], GRID_SERIES_TOL, m_max=GRID_M_MAX)
    return robin(ann, PolarPoint(r), ctrl)


def grid_sweep_two_point(ann: Annulus, n_grid: int) -> GridOptimum:
    if n_grid < MIN_GRID:
        raise OracleError(f"n_grid must be at least {MIN_GRID}")
    radii = ann.a + (np.arange(n_grid) + 0.5) * ann.width / n_grid
    phis = (np.arange(n_grid) + 0.5) * TWO_PI / n_grid

    r_lo, r_hi = float(radii[0]), float(radii[-1])
    q = max(r_hi * r_hi / (ann.b * ann.b), ann.a * ann.a / (r_lo * r_lo))
    ctrl = truncation_for_ratio(ann, q, GRID_SERIES_TOL, GRID_M_MAX)
    orders = np.arange(1, ctrl.m_used + 1, dtype=float)
    robins = np.array([_robin_at(ann, float(r)) for r in radii])

    ceiling = np.empty((n_grid, n_grid))
    ceiling_cell = np.empty((n_grid, n_grid), dtype=int)
    for i1, r1 in enumerate(radii):
        pair = _pair_green(ann, float(r1), radii, phis, orders)
        values = robins[i1] + robins[:, None] - 2.0 * pair
        # cells touching the diagonal: equal radii with Δθ adjacent to 0
        values[i1, 0] = np.nan
        values[i1, -1] = np.nan
        ceiling_cell[i1] = np.nanargmax(values, axis=1)
        ceiling[i1] = values[np.arange(n_grid), ceiling_cell[i1]]

    i1, i2 = np.unravel_index(int(np.argmin(ceiling)), ceiling.shape)
    k = int(ceiling_cell[i1, i2])
    config = Configuration(
        (PolarPoint(float(radii[i1]), 0.0), PolarPoint(float(radii[i2]), float(phis[k])))
    )
    logger.info(
        "grid sweep n=%d: best cell r=(%.6f, %.6f) dtheta=%.6f F=%.6g",
        n_grid,
        radii[i1],
        radii[i2],
        phis[k],
        ceiling[i1, i2],
    )
    return GridOptimum(
        config=config,
        value=float(ceiling[i1, i2]),
        n_grid=n_grid,
        radius_cells=(int(i1), int(i2)),
        angle_cell=k,
    )


def grid_minimize_two_point(ann: Annulus, n_grid: int) -> Configuration:
    """Best (r₁, r₂, Δθ) cell centre of the saddle sweep; diagonal cells never win."""
    return grid_sweep_two_point(ann, n_grid).config
