"""Multi-start search for critical points of the Kirchhoff–Routh functional.

Each start runs a damped flow that descends F along the radii and ascends it along
the angles (points are confined radially and repel angularly, so the two-point
critical configuration is a saddle of F), then polishes the characterization
system e_i = 0 with a bounded least-squares solve whose Jacobian comes from
finite differences. Any critical point type is admissible.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import least_squares

from annulusgreen.core import DEFAULT_M_MAX
from annulusgreen.errors import AnnulusError, SolverError
from annulusgreen.functional.hamiltonian import (
    char_residual,
    resolve_control,
    residual_vector,
    subtract_identity,
    validate_configuration,
)
from annulusgreen.solver.profile import solve_r0
from annulusgreen.types import (
    TWO_PI,
    Annulus,
    Configuration,
    CriticalPointReport,
    PolarPoint,
    PolygonDiagnostics,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverOptions:
    """Knobs of the multi-start search; lengths are in units of b − a."""

    seed: int = 0
    max_descent_iter: int = 500
    descent_rate: float = 0.01
    descent_switch: float = 1e-3
    max_step: float = 0.02
    residual_tol: float = 1e-9
    step_tol: float = 1e-12
    series_tol: float = 1e-12
    series_m_max: int = DEFAULT_M_MAX
    margin_frac: float = 0.05
    separation_frac: float = 0.1
    cluster_threshold: float = 1e-5
    max_start_retries: int = 100
    max_polish_nfev: int = 500
    workers: int = 1
    rotation: float = 0.0


@dataclass
class _Trajectory:
    config: Configuration
    steps: int
    max_radii_spread: float


def _radii_spread(config: Configuration) -> float:
    radii = config.radii
    return max(radii) - min(radii)


def _angular_gap_spread(config: Configuration) -> float:
    thetas = sorted(p.theta for p in config.points)
    gaps = [b - a for a, b in zip(thetas, thetas[1:])]
    gaps.append(thetas[0] + TWO_PI - thetas[-1])
    return max(gaps) - min(gaps)


def _cartesian(config: Configuration) -> np.ndarray:
    return np.array([[p.r * math.cos(p.theta), p.r * math.sin(p.theta)] for p in config.points])


def _min_separation(config: Configuration) -> float:
    xy = _cartesian(config)
    best = math.inf
    for i in range(len(xy)):
        for j in range(i + 1, len(xy)):
            best = min(best, float(np.hypot(*(xy[i] - xy[j]))))
    return best


def sample_start(
    ann: Annulus, l: int, rng: np.random.Generator, opts: SolverOptions
) -> tuple[Configuration | None, int]:
    """Random interior start honouring the boundary margin and pairwise separation.

    Returns the start (rotated by ``opts.rotation``) and the number of resamples.
    """
    margin = opts.margin_frac * ann.width
    separation = opts.separation_frac * ann.width
    for attempt in range(opts.max_start_retries + 1):
        radii = rng.uniform(ann.a + margin, ann.b - margin, size=l)
        thetas = rng.uniform(0.0, TWO_PI, size=l)
        config = Configuration(
            tuple(PolarPoint(float(r), float(t) + opts.rotation) for r, t in zip(radii, thetas))
        )
        if l == 1 or _min_separation(config) >= separation:
            return config, attempt
    return None, opts.max_start_retries


def _descend(ann: Annulus, config: Configuration, opts: SolverOptions) -> _Trajectory:
    rate = opts.descent_rate * ann.width**2
    cap = opts.max_step * ann.width
    floor = 0.25 * opts.margin_frac * ann.width
    switch = opts.descent_switch / ann.width
    spread = _radii_spread(config)
    steps = 0
    for steps in range(opts.max_descent_iter):
        ctrl = resolve_control(ann, config, opts.series_tol, order=1, m_max=opts.series_m_max)
        residual = char_residual(ann, config, ctrl)
        if residual.norm < switch:
            break
        # ∂F/∂ξ_i = 2 e_i: descend radially, ascend tangentially
        moves = [
            (-2.0 * rate * e.radial_part, 2.0 * rate * e.tangential_part)
            for e in residual.vectors
        ]
        longest = max(math.hypot(dr, dt) for dr, dt in moves)
        shrink = min(1.0, cap / longest) if longest > 0.0 else 1.0
        points = []
        for p, (dr, dt) in zip(config.points, moves):
            r = min(max(p.r + shrink * dr, ann.a + floor), ann.b - floor)
            points.append(PolarPoint(r, p.theta + shrink * dt / p.r))
        config = Configuration(tuple(points))
        spread = max(spread, _radii_spread(config))
    else:
        steps = opts.max_descent_iter
    return _Trajectory(config=config, steps=steps, max_radii_spread=spread)


def _polish(
    ann: Annulus, config: Configuration, opts: SolverOptions
) -> tuple[Configuration, bool, int, str]:
    """Least-squares solve of e_i = 0 with θ_1 pinned (removes the rotation freedom)."""
    l = config.size
    theta_1 = config.points[0].theta
    guard = 1e-6 * ann.width
    x0 = np.array(config.radii + [p.theta for p in config.points[1:]], dtype=float)
    lower = np.concatenate([np.full(l, ann.a + guard), np.full(l - 1, -np.inf)])
    upper = np.concatenate([np.full(l, ann.b - guard), np.full(l - 1, np.inf)])
    x0[:l] = np.clip(x0[:l], lower[:l] + guard, upper[:l] - guard)

    def unpack(x: np.ndarray) -> Configuration:
        thetas = [theta_1, *(float(t) for t in x[l:])]
        return Configuration(tuple(PolarPoint(float(r), t) for r, t in zip(x[:l], thetas)))

    def fun(x: np.ndarray) -> np.ndarray:
        try:
            candidate = unpack(x)
            ctrl = resolve_control(
                ann, candidate, opts.series_tol, order=1, m_max=opts.series_m_max
            )
            return residual_vector(ann, candidate, ctrl)
        except AnnulusError:
            return np.full(2 * l, 1e6)

    # already a critical point: nothing to polish
    if float(np.max(np.abs(fun(x0)))) < 0.5 * opts.residual_tol:
        return unpack(x0), True, 0, "start already satisfies the residual tolerance"

    result = least_squares(
        fun,
        x0,
        method="trf",
        bounds=(lower, upper),
        xtol=opts.step_tol,
        ftol=1e-15,
        gtol=1e-12,
        max_nfev=opts.max_polish_nfev,
    )
    return unpack(result.x), bool(result.success), int(result.nfev), str(result.message)


def _run_start(
    ann: Annulus,
    start_index: int,
    start: Configuration | None,
    retries: int,
    opts: SolverOptions,
    r0: float | None,
) -> CriticalPointReport:
    if start is None:
        return CriticalPointReport(
            config=Configuration((PolarPoint(0.5 * (ann.a + ann.b)),)),
            residual_norm=math.inf,
            converged=False,
            iterations=0,
            start_index=start_index,
            start_retries=retries,
            message="could not place a start away from the boundary and the diagonal",
        )
    try:
        validate_configuration(ann, start)
        trajectory = _descend(ann, start, opts)
        config, success, nfev, message = _polish(ann, trajectory.config, opts)
        ctrl = resolve_control(ann, config, opts.series_tol, order=1, m_max=opts.series_m_max)
        residual_norm = char_residual(ann, config, ctrl).norm
    except AnnulusError as exc:
        logger.info("start %d abandoned: %s", start_index, exc)
        return CriticalPointReport(
            config=start,
            residual_norm=math.inf,
            converged=False,
            iterations=0,
            start_index=start_index,
            start=start,
            start_retries=retries,
            message=str(exc),
        )

    converged = success and residual_norm < opts.residual_tol
    report = CriticalPointReport(
        config=config,
        residual_norm=residual_norm,
        converged=converged,
        iterations=trajectory.steps + nfev,
        start_index=start_index,
        start=start,
        descent_steps=trajectory.steps,
        polish_steps=nfev,
        start_retries=retries,
        cluster=start_index,
        message=message,
    )
    _attach_diagnostics(report, r0, trajectory.max_radii_spread)
    logger.info(
        "start %d: converged=%s residual=%.3g descent=%d polish=%d",
        start_index,
        converged,
        residual_norm,
        trajectory.steps,
        nfev,
    )
    return report


def _attach_diagnostics(
    report: CriticalPointReport, r0: float | None, max_spread_seen: float = 0.0
) -> None:
    config = report.config
    if config.size == 2:
        xy = _cartesian(config)
        p1, p2 = config.points
        report.antipodality_gap = float(np.hypot(*(xy[0] + xy[1])))
        report.collinearity_gap = abs(math.sin(p1.theta - p2.theta))
        if r0 is not None:
            report.radius_gap = max(abs(p.r - r0) for p in config.points)
    elif config.size >= 3:
        report.polygon = PolygonDiagnostics(
            radii_spread=_radii_spread(config),
            angular_gap_spread=_angular_gap_spread(config),
            max_radii_spread_seen=max_spread_seen,
        )


def _canonical(config: Configuration, anchor: int) -> np.ndarray:
    """Cartesian points rotated so ``anchor`` sits at angle 0, ordered by angle from it."""
    base = config.points[anchor].theta
    rotated = sorted(((p.theta - base) % TWO_PI, p.r) for p in config.points)
    return np.array([[r * math.cos(t), r * math.sin(t)] for t, r in rotated])


def configuration_distance(first: Configuration, second: Configuration) -> float:
    """Distance modulo rotation and relabeling (max point offset after alignment)."""
    if first.size != second.size:
        return math.inf
    reference = _canonical(first, 0)
    return min(
        float(np.max(np.hypot(*(reference - _canonical(second, k)).T)))
        for k in range(second.size)
    )


def _assign_clusters(reports: list[CriticalPointReport], threshold: float) -> None:
    representatives: list[CriticalPointReport] = []
    for report in reports:
        if not report.converged:
            report.cluster = report.start_index
            continue
        for rep in representatives:
            if configuration_distance(rep.config, report.config) < threshold:
                report.cluster = rep.start_index
                break
        else:
            report.cluster = report.start_index
            representatives.append(report)


def distinct_configurations(reports: list[CriticalPointReport]) -> list[CriticalPointReport]:
    """One converged representative per rotation+relabeling class."""
    return [r for r in reports if r.converged and r.cluster == r.start_index]


def find_critical_points(
    ann: Annulus,
    l: int,
    n_starts: int,
    opts: SolverOptions | None = None,
    *,
    starts: list[Configuration] | None = None,
) -> list[CriticalPointReport]:
    """Critical points of F for l points from ``n_starts`` seeded random starts.

    Explicit ``starts`` replace the random ones. Every start yields a report,
    converged or not, ordered by start index.
    """
    opts = opts or SolverOptions()
    if l < 1:
        raise SolverError("the number of points must be at least 1")
    if starts is None and n_starts < 1:
        raise SolverError("at least one start is required")

    if starts is not None:
        for start in starts:
            if start.size != l:
                raise SolverError(f"explicit starts must have {l} points")
        placed = [(start, 0) for start in starts]
    else:
        children = np.random.SeedSequence(opts.seed).spawn(n_starts)
        placed = [sample_start(ann, l, np.random.default_rng(child), opts) for child in children]

    r0 = solve_r0(ann).r0 if l == 2 else None

    def work(index: int) -> CriticalPointReport:
        start, retries = placed[index]
        return _run_start(ann, index, start, retries, opts, r0)

    if opts.workers > 1:
        with ThreadPoolExecutor(max_workers=opts.workers) as pool:
            reports = list(pool.map(work, range(len(placed))))
    else:
        reports = [work(i) for i in range(len(placed))]

    _assign_clusters(reports, opts.cluster_threshold)
    return reports


def verify_two_point(
    ann: Annulus, config: Configuration, tol: float = 1e-10
) -> CriticalPointReport:
    """Antipodality, common-radius and subtracted-identity diagnostics for a pair."""
    if config.size != 2:
        raise SolverError("verify_two_point needs exactly two points")
    validate_configuration(ann, config)
    ctrl = resolve_control(ann, config, min(tol, 1e-12), order=1)
    residual_norm = char_residual(ann, config, ctrl).norm
    identity = subtract_identity(ann, config.points[0], config.points[1], ctrl)
    report = CriticalPointReport(
        config=config,
        residual_norm=residual_norm,
        converged=residual_norm < tol,
        iterations=0,
        start=config,
        subtract=identity,
    )
    _attach_diagnostics(report, solve_r0(ann).r0)
    if not identity.brackets_dominate:
        worst = int(np.argmin(identity.bracket_margins)) + 1
        report.message = f"bracket bound violated at m={worst}"
        logger.error("subtracted identity bracket bound violated at m=%d", worst)
    return report


def polygon_explore(
    ann: Annulus,
    m: int,
    n_starts: int,
    opts: SolverOptions | None = None,
    *,
    starts: list[Configuration] | None = None,
) -> list[CriticalPointReport]:
    """Measure how close m-point critical configurations come to a regular m-gon.

    Reporting only: radii spread and angular-gap spread are recorded per run and
    nothing is asserted about the outcome.
    """
    if m < 3:
        raise SolverError("polygon exploration needs m >= 3; use verify_two_point for pairs")
    return find_critical_points(ann, m, n_starts, opts, starts=starts)


def regular_polygon(m: int, radius: float, phase: float = 0.0) -> Configuration:
    return Configuration(tuple(PolarPoint(radius, phase + TWO_PI * k / m) for k in range(m)))


def with_rotation(opts: SolverOptions, alpha: float) -> SolverOptions:
    return replace(opts, rotation=alpha)
