"""Fourier-series evaluation of the annulus Green function, its regular part,
the Robin function and their gradients.

Every series is summed in the ratio form

    A_m(y)|x|^m  = (p1^m − p2^m) / (1 − ρ^m),   p1 = |x||y|/b²,  p2 = a²|x|/(|y|b²)
    B_m(y)|x|^-m = (p3^m − p4^m) / (1 − ρ^m),   p3 = a²/(|x||y|), p4 = a²|y|/(|x|b²)

with ρ = (a/b)², so no raw power of a radius is ever formed. Powers come from
iterated multiplication (``np.cumprod``) and sums from ``math.fsum``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from annulusgreen.core import (
    DEFAULT_TOL,
    auto_truncation,
    boundary_truncation,
    contains,
    require_closed,
    require_interior,
)
from annulusgreen.errors import DomainError, SingularityError
from annulusgreen.types import (
    Annulus,
    FourierCoefficients,
    GradientValue,
    PolarPoint,
    SeriesControl,
)


def _powers(base: float, m: int) -> np.ndarray:
    """base^1, …, base^m by repeated multiplication."""
    return np.cumprod(np.full(m, base, dtype=float))


def _orders(m: int) -> np.ndarray:
    return np.arange(1, m + 1, dtype=float)


def _denominators(ann: Annulus, m: int) -> np.ndarray:
    return 1.0 - _powers(ann.rho, m)


def _mode_terms(ann: Annulus, rx: float, ry: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Return A_m(y)|x|^m and B_m(y)|x|^{-m} for m = 1..M."""
    b2, a2 = ann.b * ann.b, ann.a * ann.a
    den = _denominators(ann, m)
    grow = (_powers(rx * ry / b2, m) - _powers(a2 * rx / (ry * b2), m)) / den
    decay = (_powers(a2 / (rx * ry), m) - _powers(a2 * ry / (rx * b2), m)) / den
    return grow, decay


def _a0(ann: Annulus, ry: float) -> float:
    return math.log(ann.b) * math.log(ann.a / ry) / ann.log_ratio


def _b0(ann: Annulus, ry: float) -> float:
    return math.log(ry / ann.b) / ann.log_ratio


def _separation(x: PolarPoint, y: PolarPoint) -> tuple[float, float, float]:
    """(x−y)·x̂, (x−y)·x̂⊥ and |x−y|², written in the angle difference only."""
    phi = x.theta - y.theta
    along = x.r - y.r * math.cos(phi)
    across = y.r * math.sin(phi)
    return along, across, along * along + across * across


def _control(
    ann: Annulus,
    radii: list[float],
    ctrl: SeriesControl | None,
    order: int,
) -> SeriesControl:
    if ctrl is not None:
        return ctrl
    return auto_truncation(ann, radii, DEFAULT_TOL, order=order)


def _boundary_aware_control(
    ann: Annulus, x: PolarPoint, y: PolarPoint, ctrl: SeriesControl | None, order: int
) -> SeriesControl:
    if ctrl is not None:
        return ctrl
    x_inside, y_inside = contains(ann, x), contains(ann, y)
    if x_inside and y_inside:
        return auto_truncation(ann, [x.r, y.r], DEFAULT_TOL, order=order)
    if y_inside:
        return boundary_truncation(ann, y.r, DEFAULT_TOL, order=order)
    if x_inside:
        return boundary_truncation(ann, x.r, DEFAULT_TOL, order=order)
    raise DomainError("at most one of x, y may lie on the boundary")


def coefficients(ann: Annulus, y: PolarPoint, m: int) -> FourierCoefficients:
    """A_m(y) and B_m(y) of the Green function expansion, for a ≤ |y| ≤ b."""
    require_closed(ann, y, "y")
    if m < 0:
        raise DomainError("the mode index m must be nonnegative")
    if m == 0:
        return FourierCoefficients(m=0, A=_a0(ann, y.r), B=_b0(ann, y.r))
    a, b, r = ann.a, ann.b, y.r
    den = 1.0 - ann.rho**m
    big_a = ((r / b) ** m - (a * a / (r * b)) ** m) * b ** (-m) / den
    big_b = a**m * ((a / r) ** m - (a * r / (b * b)) ** m) / den
    return FourierCoefficients(m=m, A=big_a, B=big_b)


def regular_part(
    ann: Annulus,
    x: PolarPoint,
    y: PolarPoint,
    ctrl: SeriesControl | None = None,
) -> float:
    """u(x, y) = G_A(x, y) + log|x − y|, harmonic in x, no singular term.

    Either point may sit on a boundary circle (not both); x = y is allowed.
    """
    require_closed(ann, x, "x")
    require_closed(ann, y, "y")
    ctrl = _boundary_aware_control(ann, x, y, ctrl, order=0)
    base = _a0(ann, y.r) + _b0(ann, y.r) * math.log(x.r)
    m = ctrl.m_used
    grow, decay = _mode_terms(ann, x.r, y.r, m)
    orders = _orders(m)
    terms = (grow + decay) * np.cos(orders * (x.theta - y.theta)) / orders
    return base - math.fsum(terms)


def green(
    ann: Annulus,
    x: PolarPoint,
    y: PolarPoint,
    ctrl: SeriesControl | None = None,
) -> float:
    """G_A(x, y) with −Δ_x G = 2π δ_y and zero boundary values."""
    require_interior(ann, x, "x")
    require_interior(ann, y, "y")
    _, _, dist2 = _separation(x, y)
    if x == y or dist2 == 0.0:
        raise SingularityError("green is singular at x = y; use robin for the diagonal")
    ctrl = _control(ann, [x.r, y.r], ctrl, order=0)
    u = regular_part(ann, x, y, ctrl)
    # singular term last, separately from the series
    return u - 0.5 * math.log(dist2)


def robin(ann: Annulus, y: PolarPoint, ctrl: SeriesControl | None = None) -> float:
    """R_A(y) = lim_{x→y} (−log|x−y| − G_A(x, y)); depends on |y| only."""
    require_interior(ann, y, "y")
    ctrl = _control(ann, [y.r], ctrl, order=0)
    log_term = math.log(y.r) - math.log(ann.b)
    base = -(log_term * log_term) / ann.log_ratio - math.log(ann.b)
    m = ctrl.m_used
    b2, a2 = ann.b * ann.b, ann.a * ann.a
    r2 = y.r * y.r
    orders = _orders(m)
    terms = (
        _powers(r2 / b2, m) - 2.0 * _powers(ann.rho, m) + _powers(a2 / r2, m)
    ) / (_denominators(ann, m) * orders)
    return base + math.fsum(terms)


def grad_green_x(
    ann: Annulus,
    x: PolarPoint,
    y: PolarPoint,
    ctrl: SeriesControl | None = None,
) -> GradientValue:
    """∇_x G_A(x, y), split along x/|x| and x⊥/|x|."""
    require_interior(ann, x, "x")
    require_interior(ann, y, "y")
    along, across, dist2 = _separation(x, y)
    if x == y or dist2 == 0.0:
        raise SingularityError("grad_green_x is singular at x = y")
    ctrl = _control(ann, [x.r, y.r], ctrl, order=1)
    m = ctrl.m_used
    grow, decay = _mode_terms(ann, x.r, y.r, m)
    angle = _orders(m) * (x.theta - y.theta)
    radial = _b0(ann, y.r) / x.r - math.fsum((grow - decay) * np.cos(angle)) / x.r
    tangential = math.fsum((grow + decay) * np.sin(angle)) / x.r
    radial -= along / dist2
    tangential -= across / dist2
    return GradientValue.from_components(x, radial, tangential)


def half_robin_slope(ann: Annulus, r: float, ctrl: SeriesControl | None = None) -> float:
    """The radial component of ½∇R_A at radius r."""
    if not ann.a < r < ann.b:
        raise DomainError(f"radius {r!r} must lie strictly inside ({ann.a!r}, {ann.b!r})")
    ctrl = _control(ann, [r], ctrl, order=1)
    m = ctrl.m_used
    r2 = r * r
    terms = (
        _powers(r2 / (ann.b * ann.b), m) - _powers(ann.a * ann.a / r2, m)
    ) / _denominators(ann, m)
    return (math.fsum(terms) - _b0(ann, r)) / r


def grad_robin(ann: Annulus, y: PolarPoint, ctrl: SeriesControl | None = None) -> GradientValue:
    """The full gradient ∇R_A(y); purely radial."""
    require_interior(ann, y, "y")
    return GradientValue.from_components(y, 2.0 * half_robin_slope(ann, y.r, ctrl), 0.0)


def robin_critical_radius(ann: Annulus, tol: float = 1e-14) -> float:
    """The unique r* in (a, b) where ∇R_A vanishes (the one-point blow-up circle)."""
    eps = 1e-9 * ann.width
    return float(
        brentq(lambda r: half_robin_slope(ann, r), ann.a + eps, ann.b - eps, xtol=tol)
    )


def fourier_modes(ann: Annulus, y: PolarPoint, m: int) -> tuple[float, float, float, float]:
    """Cartesian-mode coefficients (a_m, b_m, c_m, d_m) of u(·, y).

    u(x, y) = a_0 + b_0 log|x| + Σ (a_m|x|^m + b_m|x|^-m) cos mθ
                              + Σ (c_m|x|^m + d_m|x|^-m) sin mθ.
    For m = 0 the pair (a_0, b_0) is returned with c_0 = d_0 = 0.
    """
    coeff = coefficients(ann, y, m)
    if m == 0:
        return coeff.A, coeff.B, 0.0, 0.0
    c, s = math.cos(m * y.theta), math.sin(m * y.theta)
    return -coeff.A * c / m, -coeff.B * c / m, -coeff.A * s / m, -coeff.B * s / m


def boundary_expansion(
    ann: Annulus, y: PolarPoint, radius: float, theta: float, m: int
) -> float:
    """Truncated expansion of log|x − y| for x on the circle |x| = radius ∈ {a, b}."""
    require_interior(ann, y, "y")
    if radius == ann.b:
        base, ratio = math.log(ann.b), y.r / ann.b
    elif radius == ann.a:
        base, ratio = math.log(y.r), ann.a / y.r
    else:
        raise DomainError("the expansion radius must be one of the boundary radii")
    if m == 0:
        return base
    orders = _orders(m)
    return base - math.fsum(_powers(ratio, m) * np.cos(orders * (theta - y.theta)) / orders)
