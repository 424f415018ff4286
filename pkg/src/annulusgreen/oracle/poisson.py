"""Finite-volume Dirichlet solve of −Δu = 2π δ_y on a polar grid.

Radial nodes r_i = a + iΔr (i = 0..n_r, the ends carry u = 0) and angular nodes
θ_j = θ_y + jΔθ (periodic), so the pole always sits on the ray j = 0. The radial
operator uses the face radii r_{i±1/2}; the delta becomes a single-cell source of
total mass 2π. Neither green() nor robin() is used to build the solution.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from annulusgreen.core import truncation_for_ratio
from annulusgreen.errors import OracleError
from annulusgreen.green.series import green
from annulusgreen.types import TWO_PI, Annulus, PolarPoint, SeriesControl

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 64
NODE_TOL = 1e-9


@dataclass
class FDPoissonGrid:
    """Discrete Green function values on the full polar grid (boundary rows included)."""

    ann: Annulus
    y: PolarPoint
    radii: np.ndarray
    thetas: np.ndarray
    values: np.ndarray

    @property
    def dr(self) -> float:
        return float(self.radii[1] - self.radii[0])

    @property
    def dtheta(self) -> float:
        return TWO_PI / self.thetas.size

    def flux(self) -> float:
        """−∮ ∂u/∂n over both circles, with second-order one-sided radial derivatives."""
        u = self.values
        dr = self.dr
        outer = (3.0 * u[-1] - 4.0 * u[-2] + u[-3]) / (2.0 * dr)
        inner = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dr)
        per_ray = -self.ann.b * outer + self.ann.a * inner
        return float(math.fsum(per_ray) * self.dtheta)

    def mirror_gap(self) -> float:
        """max |u(r, θ_y + φ) − u(r, θ_y − φ)| over the grid."""
        n = self.thetas.size
        mirrored = self.values[:, (-np.arange(n)) % n]
        return float(np.max(np.abs(self.values - mirrored)))

    def compare(self, exclusion: float, ctrl: SeriesControl | None = None) -> float:
        """max |FD − green| over interior nodes farther than ``exclusion`` from y."""
        ann, y = self.ann, self.y
        interior = self.radii[1:-1]
        if ctrl is None:
            q = max(
                float(np.max(interior)) * y.r / (ann.b * ann.b),
                ann.a * ann.a / (float(np.min(interior)) * y.r),
            )
            ctrl = truncation_for_ratio(ann, q, 1e-12)
        worst = 0.0
        for i, r in enumerate(interior, start=1):
            for j, theta in enumerate(self.thetas):
                x = PolarPoint(float(r), float(theta))
                gap2 = r * r + y.r * y.r - 2.0 * r * y.r * math.cos(theta - y.theta)
                if gap2 <= exclusion * exclusion:
                    continue
                worst = max(worst, abs(self.values[i, j] - green(ann, x, y, ctrl)))
        return worst


def fd_poisson_green(ann: Annulus, y: PolarPoint, n_r: int, n_theta: int) -> FDPoissonGrid:
    if n_r < MIN_RESOLUTION or n_theta < MIN_RESOLUTION:
        raise OracleError(f"grid resolutions must be at least {MIN_RESOLUTION}")
    dr = ann.width / n_r
    dtheta = TWO_PI / n_theta
    position = (y.r - ann.a) / dr
    i_y = int(round(position))
    if abs(position - i_y) > NODE_TOL * max(1.0, position) or not 1 <= i_y <= n_r - 1:
        raise OracleError(f"pole radius {y.r!r} is not an interior radial grid node")

    radii = ann.a + dr * np.arange(n_r + 1)
    thetas = y.theta + dtheta * np.arange(n_theta)

    rows_i, cols_j = np.meshgrid(np.arange(1, n_r), np.arange(n_theta), indexing="ij")
    rows_i, cols_j = rows_i.ravel(), cols_j.ravel()
    k = (rows_i - 1) * n_theta + cols_j
    r = radii[rows_i]
    east_w = (r + 0.5 * dr) / (r * dr * dr)
    west_w = (r - 0.5 * dr) / (r * dr * dr)
    ring_w = 1.0 / (r * r * dtheta * dtheta)

    ring_start = (rows_i - 1) * n_theta
    rows = [k, k, k]
    cols = [k, ring_start + (cols_j + 1) % n_theta, ring_start + (cols_j - 1) % n_theta]
    data = [east_w + west_w + 2.0 * ring_w, -ring_w, -ring_w]
    east = rows_i + 1 <= n_r - 1
    rows.append(k[east])
    cols.append(k[east] + n_theta)
    data.append(-east_w[east])
    west = rows_i - 1 >= 1
    rows.append(k[west])
    cols.append(k[west] - n_theta)
    data.append(-west_w[west])

    size = (n_r - 1) * n_theta
    matrix = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))), shape=(size, size)
    ).tocsc()
    rhs = np.zeros(size)
    rhs[(i_y - 1) * n_theta] = TWO_PI / (radii[i_y] * dr * dtheta)

    logger.info("solving %dx%d polar Poisson system (%d unknowns)", n_r, n_theta, size)
    solution = spla.spsolve(matrix, rhs)
    if not np.all(np.isfinite(solution)):
        raise OracleError("the discrete Poisson system is singular at this resolution")

    values = np.zeros((n_r + 1, n_theta))
    values[1:-1] = solution.reshape(n_r - 1, n_theta)
    return FDPoissonGrid(ann=ann, y=y, radii=radii, thetas=thetas, values=values)
