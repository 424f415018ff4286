"""Validation engine: runs oracle suites against the analytic modules."""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from annulusgreen.config import ValidationConfig
from annulusgreen.core import (
    DEFAULT_M_MAX,
    DEFAULT_TOL,
    auto_truncation,
    boundary_truncation,
    series_ratio,
    to_polar,
)
from annulusgreen.functional.hamiltonian import grad_hamiltonian, hamiltonian
from annulusgreen.green.series import (
    fourier_modes,
    grad_green_x,
    grad_robin,
    green,
    regular_part,
    robin,
)
from annulusgreen.oracle.checks import boundary_residual, fd_gradient_check, fd_harmonic_check
from annulusgreen.oracle.poisson import fd_poisson_green
from annulusgreen.types import (
    TWO_PI,
    Annulus,
    Configuration,
    GradientValue,
    PlanarPoint,
    PolarPoint,
    SeriesControl,
)

logger = logging.getLogger(__name__)

SUITES = ("green", "gradients", "poisson", "all")
GRADIENT_SAMPLES = 200
GRADIENT_Q_CAP = 0.8
FD_SERIES_TOL = 1e-13
FOURIER_TOL = 1e-9


@dataclass
class CheckResult:
    """Result of a single oracle check."""

    name: str
    suite: str
    passed: bool
    value: float | None = None
    threshold: float | None = None
    message: str = ""
    details: dict[str, Any] = field(default_factory=dict)


@dataclass
class SuiteResult:
    """Result of every check in a suite."""

    suite: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failed_count(self) -> int:
        return sum(1 for r in self.results if not r.passed)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]


def _planar(p: PolarPoint) -> np.ndarray:
    return np.array([p.r * math.cos(p.theta), p.r * math.sin(p.theta)])


def _polar(x: np.ndarray) -> PolarPoint:
    return to_polar(PlanarPoint(float(x[0]), float(x[1])))


def _distance(p: PolarPoint, q: PolarPoint) -> float:
    return float(np.hypot(*(_planar(p) - _planar(q))))


class ValidationEngine:
    """Runs oracle suites against one annulus.

    Usage:
        engine = ValidationEngine(ValidationConfig())
        result = engine.run(Annulus(1.0, 2.0), "green")
        assert result.passed
    """

    def __init__(
        self,
        cfg: ValidationConfig | None = None,
        tol: float = DEFAULT_TOL,
        *,
        m_max: int = DEFAULT_M_MAX,
    ) -> None:
        self.cfg = cfg or ValidationConfig()
        self.tol = tol
        self.m_max = m_max

    def run(self, ann: Annulus, suite: str = "all") -> SuiteResult:
        """Run every check of ``suite`` ("green", "gradients", "poisson" or "all")."""
        suites: dict[str, list[tuple[str, Callable[[Annulus], CheckResult]]]] = {
            "green": [
                ("symmetry", self._check_symmetry),
                ("positivity", self._check_positivity),
                ("boundary", self._check_boundary),
                ("harmonicity", self._check_harmonicity),
                ("fourier_path", self._check_fourier_path),
            ],
            "gradients": [
                ("grad_green_x", self._check_grad_green),
                ("grad_robin", self._check_grad_robin),
                ("grad_hamiltonian", self._check_grad_hamiltonian),
            ],
            "poisson": [("poisson", self._check_poisson)],
        }
        if suite == "all":
            selected = [pair for key in ("green", "gradients", "poisson") for pair in suites[key]]
        elif suite in suites:
            selected = suites[suite]
        else:
            return SuiteResult(
                suite=suite,
                results=[
                    CheckResult(
                        name=suite, suite=suite, passed=False, message=f"Unknown suite: {suite}"
                    )
                ],
            )

        result = SuiteResult(suite=suite)
        for name, check in selected:
            try:
                outcome = check(ann)
            except Exception as e:
                outcome = CheckResult(
                    name=name, suite=suite, passed=False, message=f"Check error: {e}"
                )
            logger.info("check %s: %s", outcome.name, "pass" if outcome.passed else "FAIL")
            result.results.append(outcome)
        return result

    # sampling

    def _truncation(
        self, ann: Annulus, radii: list[float], tol: float, order: int = 0
    ) -> SeriesControl:
        return auto_truncation(ann, radii, tol, m_max=self.m_max, order=order)

    def _rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.cfg.seed, salt])

    def _random_point(self, ann: Annulus, rng: np.random.Generator, q_cap: float) -> PolarPoint:
        # a²/r² ≤ q and r²/b² ≤ q
        lo, hi = ann.a / math.sqrt(q_cap), ann.b * math.sqrt(q_cap)
        if not lo < hi:
            raise ValueError(f"q cap {q_cap} leaves no admissible radius in this annulus")
        return PolarPoint(float(rng.uniform(lo, hi)), float(rng.uniform(0.0, TWO_PI)))

    def _random_pairs(
        self, ann: Annulus, count: int, q_cap: float, min_gap: float, salt: int
    ) -> list[tuple[PolarPoint, PolarPoint]]:
        rng = self._rng(salt)
        pairs = []
        while len(pairs) < count:
            x = self._random_point(ann, rng, q_cap)
            y = self._random_point(ann, rng, q_cap)
            if _distance(x, y) >= min_gap and series_ratio(ann, [x.r, y.r]) <= q_cap:
                pairs.append((x, y))
        return pairs

    # green suite

    def _check_symmetry(self, ann: Annulus) -> CheckResult:
        worst = 0.0
        for x, y in self._random_pairs(ann, self.cfg.n_pairs, self.cfg.q_cap, 1e-3 * ann.width, 1):
            ctrl = self._truncation(ann, [x.r, y.r], self.tol)
            worst = max(worst, abs(green(ann, x, y, ctrl) - green(ann, y, x, ctrl)))
        threshold = 2.0 * self.tol
        return CheckResult(
            name="symmetry",
            suite="green",
            passed=worst < threshold,
            value=worst,
            threshold=threshold,
            message=f"max |G(x,y) - G(y,x)| = {worst:.3g}",
        )

    def _check_positivity(self, ann: Annulus) -> CheckResult:
        smallest = math.inf
        for x, y in self._random_pairs(ann, self.cfg.n_pairs, self.cfg.q_cap, 1e-3 * ann.width, 2):
            smallest = min(smallest, green(ann, x, y, self._truncation(ann, [x.r, y.r], self.tol)))
        return CheckResult(
            name="positivity",
            suite="green",
            passed=smallest > 0.0,
            value=smallest,
            threshold=0.0,
            message=f"min G = {smallest:.6g}",
        )

    def _check_boundary(self, ann: Annulus) -> CheckResult:
        worst = 0.0
        rng = self._rng(3)
        for _ in range(8):
            y = self._random_point(ann, rng, self.cfg.q_cap)
            m = boundary_truncation(ann, y.r, self.tol, m_max=self.m_max).m_used
            worst = max(worst, boundary_residual(ann, y, m, self.cfg.boundary_samples))
        threshold = 10.0 * self.tol
        return CheckResult(
            name="boundary",
            suite="green",
            passed=worst < threshold,
            value=worst,
            threshold=threshold,
            message=f"max |u - log|x-y|| on both circles = {worst:.3g}",
        )

    def _check_harmonicity(self, ann: Annulus) -> CheckResult:
        h = self.cfg.harmonic_h * ann.width
        y = PolarPoint(0.5 * (ann.a + ann.b), 0.0)
        samples = [
            PolarPoint(ann.a + t * ann.width, angle)
            for t in (0.3, 0.5, 0.7)
            for angle in (math.pi / 3.0, 2.0 * math.pi / 3.0, math.pi, 4.0 * math.pi / 3.0)
        ]
        report = fd_harmonic_check(ann, y, samples, h)
        passed = 1.5 <= report.order_estimate <= 2.5
        return CheckResult(
            name="harmonicity",
            suite="green",
            passed=passed,
            value=report.order_estimate,
            threshold=2.0,
            message=(
                f"residual {report.residual_h:.3g} at h, {report.residual_h2:.3g} at h/2, "
                f"order {report.order_estimate:.3f}"
            ),
            details={
                "h": report.h,
                "residual_h": report.residual_h,
                "residual_h2": report.residual_h2,
            },
        )

    def _check_fourier_path(self, ann: Annulus) -> CheckResult:
        worst = 0.0
        for x, y in self._random_pairs(ann, 20, self.cfg.q_cap, 1e-3 * ann.width, 4):
            ctrl = self._truncation(ann, [x.r, y.r], 1e-12)
            parts = []
            for m in range(ctrl.m_used + 1):
                am, bm, cm, dm = fourier_modes(ann, y, m)
                if m == 0:
                    parts.append(am + bm * math.log(x.r))
                else:
                    grow, decay = x.r**m, x.r ** (-m)
                    parts.append((am * grow + bm * decay) * math.cos(m * x.theta))
                    parts.append((cm * grow + dm * decay) * math.sin(m * x.theta))
            total = math.fsum(parts)
            worst = max(worst, abs(total - regular_part(ann, x, y, ctrl)))
        return CheckResult(
            name="fourier_path",
            suite="green",
            passed=worst < FOURIER_TOL,
            value=worst,
            threshold=FOURIER_TOL,
            message=f"max |cartesian modes - ratio form| = {worst:.3g}",
        )

    # gradients suite

    def _gradient_pairs(self, ann: Annulus, salt: int) -> list[tuple[PolarPoint, PolarPoint]]:
        count = min(GRADIENT_SAMPLES, self.cfg.n_pairs)
        q_cap = min(self.cfg.q_cap, GRADIENT_Q_CAP)
        return self._random_pairs(ann, count, q_cap, 0.2 * ann.width, salt)

    def _gradient_result(self, name: str, worst: float) -> CheckResult:
        threshold = self.cfg.gradient_tol
        return CheckResult(
            name=name,
            suite="gradients",
            passed=worst <= threshold,
            value=worst,
            threshold=threshold,
            message=f"max |central difference - analytic| = {worst:.3g}",
        )

    def _check_grad_green(self, ann: Annulus) -> CheckResult:
        h = self.cfg.fd_h
        worst = 0.0
        for x, y in self._gradient_pairs(ann, 5):
            ctrl = self._truncation(ann, [x.r - 2 * h, x.r + 2 * h, y.r], FD_SERIES_TOL, order=1)
            worst = max(
                worst,
                fd_gradient_check(
                    lambda v, y=y, ctrl=ctrl: green(ann, _polar(v), y, ctrl),
                    lambda v, y=y, ctrl=ctrl: _vector(grad_green_x(ann, _polar(v), y, ctrl)),
                    [_planar(x)],
                    h,
                ),
            )
        return self._gradient_result("grad_green_x", worst)

    def _check_grad_robin(self, ann: Annulus) -> CheckResult:
        h = self.cfg.fd_h
        worst = 0.0
        for x, _ in self._gradient_pairs(ann, 6):
            ctrl = self._truncation(ann, [x.r - 2 * h, x.r + 2 * h], FD_SERIES_TOL, order=1)
            worst = max(
                worst,
                fd_gradient_check(
                    lambda v, ctrl=ctrl: robin(ann, _polar(v), ctrl),
                    lambda v, ctrl=ctrl: _vector(grad_robin(ann, _polar(v), ctrl)),
                    [_planar(x)],
                    h,
                ),
            )
        return self._gradient_result("grad_robin", worst)

    def _check_grad_hamiltonian(self, ann: Annulus) -> CheckResult:
        h = self.cfg.fd_h
        worst = 0.0
        configs: list[Configuration] = []
        pairs = self._gradient_pairs(ann, 7)
        thirds = self._gradient_pairs(ann, 8)
        for (p, q), (s, _) in zip(pairs, thirds):
            configs.append(Configuration((p, q)))
            if min(_distance(s, p), _distance(s, q)) >= 0.2 * ann.width:
                configs.append(Configuration((p, q, s)))

        for config in configs:
            radii = [r + d for r in config.radii for d in (-2 * h, 2 * h)]
            ctrl = self._truncation(ann, radii, FD_SERIES_TOL, order=1)

            def unflatten(v: np.ndarray, size: int = config.size) -> Configuration:
                return Configuration(tuple(_polar(v[2 * i : 2 * i + 2]) for i in range(size)))

            worst = max(
                worst,
                fd_gradient_check(
                    lambda v, ctrl=ctrl, unflatten=unflatten: hamiltonian(
                        ann, unflatten(v), ctrl
                    ),
                    lambda v, ctrl=ctrl, unflatten=unflatten: np.concatenate(
                        [_vector(g) for g in grad_hamiltonian(ann, unflatten(v), ctrl)]
                    ),
                    [np.concatenate([_planar(pt) for pt in config.points])],
                    h,
                ),
            )
        result = self._gradient_result("grad_hamiltonian", worst)
        result.details = {
            "two_point": sum(1 for c in configs if c.size == 2),
            "three_point": sum(1 for c in configs if c.size == 3),
        }
        return result

    # poisson suite

    def _check_poisson(self, ann: Annulus) -> CheckResult:
        n = self.cfg.poisson_resolution
        y = PolarPoint(ann.a + (n // 2) * ann.width / n, 0.0)
        grid = fd_poisson_green(ann, y, n, n)
        agreement = grid.compare(0.2 * ann.width)
        flux = grid.flux()
        flux_gap = abs(flux - TWO_PI) / TWO_PI
        mirror = grid.mirror_gap()
        passed = (
            agreement <= self.cfg.poisson_tol
            and flux_gap <= self.cfg.flux_rel_tol
            and mirror <= 1e-10
        )
        return CheckResult(
            name="poisson",
            suite="poisson",
            passed=passed,
            value=agreement,
            threshold=self.cfg.poisson_tol,
            message=f"agreement {agreement:.3g}, flux {flux:.6f}, mirror {mirror:.3g}",
            details={
                "resolution": n,
                "flux": flux,
                "flux_rel_gap": flux_gap,
                "mirror_gap": mirror,
            },
        )


def _vector(g: GradientValue) -> np.ndarray:
    return np.array([g.vector.x1, g.vector.x2])
