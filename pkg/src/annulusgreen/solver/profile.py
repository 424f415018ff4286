"""The common-radius equation f(r) = g(r) for antipodal two-point configurations.

f(r) = 2 log(r/b)/log(a/b) − 1/2 decreases from 3/2 to −1/2 and vanishes at
a^{1/4} b^{3/4}; g(r) = Σ_m ((−1)^m + 1)(r^{2m} − (ab)^{2m} r^{−2m})/(b^{2m} − a^{2m})
increases from −∞ to +∞ and vanishes at √(ab). Their unique crossing r₀ lies in
(√(ab), a^{1/4} b^{3/4}).
"""

from __future__ import annotations

import logging
import math

import numpy as np

from annulusgreen.core import auto_truncation
from annulusgreen.errors import DomainError
from annulusgreen.types import Annulus, ProfilePoint, RootResult, SeriesControl

logger = logging.getLogger(__name__)

SERIES_TOL = 1e-15


def _require_radius(ann: Annulus, r: float) -> None:
    if not ann.a < r < ann.b:
        raise DomainError(f"radius {r!r} must lie strictly inside ({ann.a!r}, {ann.b!r})")


def log_profile(ann: Annulus, r: float) -> float:
    """f(r)."""
    _require_radius(ann, r)
    return 2.0 * math.log(r / ann.b) / ann.log_ratio - 0.5


def _even_modes(
    ann: Annulus, r: float, m: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """k, (r/b)^{4k}, (a/r)^{4k}, 1 − (a/b)^{4k} for the even modes m = 2k ≤ M."""
    k_max = m // 2
    ks = np.arange(1, k_max + 1, dtype=float)
    grow = np.cumprod(np.full(k_max, (r / ann.b) ** 4))
    decay = np.cumprod(np.full(k_max, (ann.a / r) ** 4))
    den = 1.0 - np.cumprod(np.full(k_max, ann.rho**2))
    return ks, grow, decay, den


def even_profile(ann: Annulus, r: float, ctrl: SeriesControl | None = None) -> float:
    """g(r); odd modes vanish identically and are never summed."""
    _require_radius(ann, r)
    ctrl = ctrl or auto_truncation(ann, [r], SERIES_TOL, order=1)
    _, grow, decay, den = _even_modes(ann, r, ctrl.m_used)
    return 2.0 * math.fsum((grow - decay) / den)


def profile(ann: Annulus, r: float, ctrl: SeriesControl | None = None) -> ProfilePoint:
    return ProfilePoint(r=r, f=log_profile(ann, r), g=even_profile(ann, r, ctrl))


def profile_derivative(
    ann: Annulus, r: float, ctrl: SeriesControl | None = None
) -> tuple[float, float]:
    """(f′(r), g′(r))."""
    _require_radius(ann, r)
    ctrl = ctrl or auto_truncation(ann, [r], SERIES_TOL, order=2)
    ks, grow, decay, den = _even_modes(ann, r, ctrl.m_used)
    f_prime = 2.0 / (r * ann.log_ratio)
    g_prime = 8.0 * math.fsum(ks * (grow + decay) / den) / r
    return f_prime, g_prime


def _crossing(ann: Annulus, r: float) -> float:
    return log_profile(ann, r) - even_profile(ann, r)


def solve_r0(
    ann: Annulus,
    tol: float = 1e-12,
    *,
    switch_width: float = 1e-3,
    max_iter: int = 200,
) -> RootResult:
    """Root of f − g on [√(ab), a^{1/4} b^{3/4}].

    Bisection narrows the bracket to ``switch_width``·(b − a), then safeguarded
    Newton steps with the analytic derivative finish; any Newton step that leaves
    the bracket or meets a non-finite derivative falls back to bisection.
    """
    if not tol > 0.0:
        raise DomainError("root tolerance must be positive")
    lo, hi = ann.geometric_mean, ann.quarter_mean
    bracket = (lo, hi)
    bisections = newtons = 0

    while hi - lo > switch_width * ann.width and bisections < max_iter:
        mid = 0.5 * (lo + hi)
        if _crossing(ann, mid) > 0.0:
            lo = mid
        else:
            hi = mid
        bisections += 1

    r = 0.5 * (lo + hi)
    value = _crossing(ann, r)
    converged = False
    for _ in range(max_iter):
        if value > 0.0:
            lo = r
        else:
            hi = r
        f_prime, g_prime = profile_derivative(ann, r)
        slope = f_prime - g_prime
        step = value / slope if math.isfinite(slope) and slope != 0.0 else math.nan
        candidate = r - step
        if math.isfinite(candidate) and lo < candidate < hi:
            r = candidate
            newtons += 1
        else:
            r = 0.5 * (lo + hi)
            bisections += 1
        value = _crossing(ann, r)
        logger.debug("r0 iterate r=%.17g f-g=%.3g bracket=[%.17g, %.17g]", r, value, lo, hi)
        if abs(value) < tol and (abs(step) < tol or hi - lo < tol):
            # certify the root with a bracket narrower than tol
            left, right = r - 0.25 * tol, r + 0.25 * tol
            if _crossing(ann, left) > 0.0 > _crossing(ann, right):
                lo, hi = left, right
                converged = True
                break
        if hi - lo < tol and abs(value) < tol:
            converged = True
            break

    if not converged:
        logger.warning("r0 solve stopped without certification (|f-g|=%.3g)", abs(value))
    return RootResult(
        r0=r,
        residual=value,
        bracket=bracket,
        iterations=bisections + newtons,
        bisection_steps=bisections,
        newton_steps=newtons,
        width=hi - lo,
        converged=converged,
    )


def profile_table(ann: Annulus, n_grid: int = 200, eps: float = 1e-3) -> list[ProfilePoint]:
    """f and g on a uniform grid over (a + ε(b−a), b − ε(b−a)) plus the two zeros."""
    if n_grid < 2:
        raise DomainError("the profile grid needs at least two points")
    if not 0.0 < eps < 0.5:
        raise DomainError("eps must lie in (0, 1/2)")
    radii = np.linspace(ann.a + eps * ann.width, ann.b - eps * ann.width, n_grid)
    samples = sorted({float(r) for r in radii} | {ann.geometric_mean, ann.quarter_mean})
    return [profile(ann, r) for r in samples]
