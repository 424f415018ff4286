"""Coordinate conversions, membership tests and the series truncation policy."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable

import numpy as np

from annulusgreen.errors import DegeneratePointError, DomainError
from annulusgreen.types import Annulus, PlanarPoint, PolarPoint, SeriesControl

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_M_MAX = 512


def to_polar(p: PlanarPoint) -> PolarPoint:
    """Convert a Cartesian point to polar form with θ in [0, 2π)."""
    if p.x1 == 0.0 and p.x2 == 0.0:
        raise DegeneratePointError("the origin has no polar representation")
    return PolarPoint(math.hypot(p.x1, p.x2), math.atan2(p.x2, p.x1))


def to_planar(p: PolarPoint) -> PlanarPoint:
    return PlanarPoint(p.r * math.cos(p.theta), p.r * math.sin(p.theta))


def contains(ann: Annulus, p: PolarPoint) -> bool:
    """True iff a < |p| < b (the boundary circles are excluded)."""
    return ann.a < p.r < ann.b


def contains_closed(ann: Annulus, p: PolarPoint) -> bool:
    return ann.a <= p.r <= ann.b


def require_interior(ann: Annulus, p: PolarPoint, name: str = "point") -> None:
    if not contains(ann, p):
        raise DomainError(
            f"{name} radius {p.r!r} must lie strictly inside ({ann.a!r}, {ann.b!r})"
        )


def require_closed(ann: Annulus, p: PolarPoint, name: str = "point") -> None:
    if not contains_closed(ann, p):
        raise DomainError(f"{name} radius {p.r!r} must lie in [{ann.a!r}, {ann.b!r}]")


def rotate(p: PolarPoint, alpha: float) -> PolarPoint:
    return PolarPoint(p.r, p.theta + alpha)


def reflect(p: PolarPoint, phi: float) -> PolarPoint:
    """Mirror p across the line through the origin at angle phi."""
    return PolarPoint(p.r, 2.0 * phi - p.theta)


def series_ratio(ann: Annulus, radii: Iterable[float]) -> float:
    """Slowest geometric ratio q over all products of the involved radii.

    Self-products contribute r²/b² and a²/r², which govern the Robin series.
    """
    rs = [float(r) for r in radii]
    if not rs:
        raise DomainError("at least one radius is required")
    for r in rs:
        if not ann.a < r < ann.b:
            raise DomainError(f"radius {r!r} must lie strictly inside ({ann.a!r}, {ann.b!r})")
    b2, a2 = ann.b * ann.b, ann.a * ann.a
    q = 0.0
    for i, ri in enumerate(rs):
        for rj in rs[i:]:
            prod = ri * rj
            q = max(q, prod / b2, a2 / prod)
    return q


def tail_bound(
    ann: Annulus,
    q: float,
    m: int | np.ndarray,
    order: int = 0,
    *,
    radius: float = 1.0,
) -> float | np.ndarray:
    """Geometric majorant of the series tail beyond order m.

    order 0 bounds Σ_{k>m} q^k/k, order 1 bounds Σ_{k>m} q^k and order 2 bounds
    Σ_{k>m} k q^k; all are scaled by 2/(1 − (a/b)²), which dominates the
    coefficient numerators and denominators of every series in the package.
    Derivative series carry a 1/|x| factor per mode, so orders 1 and 2 are also
    divided by ``radius``, the smallest radius the series is evaluated at.
    """
    if not 0.0 <= q < 1.0:
        raise DomainError(f"series ratio {q!r} must lie in [0, 1)")
    if not radius > 0.0:
        raise DomainError(f"radius {radius!r} must be positive")
    scale = 2.0 / (1.0 - ann.rho)
    m1 = np.asarray(m, dtype=float) + 1.0
    power = np.power(q, m1)
    if order == 0:
        bound = scale * power / (m1 * (1.0 - q))
    elif order == 1:
        bound = scale * power / ((1.0 - q) * radius)
    elif order == 2:
        bound = scale * m1 * power / ((1.0 - q) ** 2 * radius)
    else:
        raise DomainError(f"unsupported series order {order!r}")
    if np.ndim(bound) == 0:
        return float(bound)
    return bound


def truncation_for_ratio(
    ann: Annulus,
    q: float,
    tol: float,
    m_max: int = DEFAULT_M_MAX,
    order: int = 0,
    *,
    radius: float = 1.0,
) -> SeriesControl:
    """Truncation for a caller-supplied geometric ratio q."""
    if not tol > 0.0:
        raise DomainError("series tolerance must be positive")
    if m_max < 1:
        raise DomainError("m_max must be at least 1")
    orders = np.arange(1, m_max + 1)
    bounds = tail_bound(ann, q, orders, order, radius=radius)
    below = np.flatnonzero(bounds < tol)
    if below.size:
        m_used = int(orders[below[0]])
        achieved = float(bounds[below[0]])
    else:
        m_used = m_max
        achieved = float(bounds[-1])
        logger.warning(
            "series truncation saturated at m_max=%d (q=%.6g, tail bound %.3g > tol %.3g)",
            m_max,
            q,
            achieved,
            tol,
        )
    return SeriesControl(tol=tol, m_max=m_max, m_used=m_used, tail_bound=achieved, q=q)


def auto_truncation(
    ann: Annulus,
    radii: Iterable[float],
    tol: float = DEFAULT_TOL,
    *,
    m_max: int = DEFAULT_M_MAX,
    order: int = 0,
) -> SeriesControl:
    """Smallest truncation order whose tail bound falls below ``tol``.

    Points too close to the boundary saturate at ``m_max``; the returned control
    then reports the (larger) achieved bound instead of failing.
    """
    rs = [float(r) for r in radii]
    q = series_ratio(ann, rs)
    return truncation_for_ratio(ann, q, tol, m_max, order, radius=min(rs))


def boundary_truncation(
    ann: Annulus,
    y_radius: float,
    tol: float = DEFAULT_TOL,
    *,
    m_max: int = DEFAULT_M_MAX,
    order: int = 0,
) -> SeriesControl:
    """Truncation for evaluation with x on a boundary circle.

    There the ratio depends on the pole alone: q = max(|y|/b, a/|y|).
    """
    if not ann.a < y_radius < ann.b:
        raise DomainError("the pole must lie strictly inside the annulus")
    q = max(y_radius / ann.b, ann.a / y_radius)
    # x may sit on the inner circle
    return truncation_for_ratio(ann, q, tol, m_max, order, radius=ann.a)


def fixed_truncation(m: int, tol: float = DEFAULT_TOL, m_max: int = DEFAULT_M_MAX) -> SeriesControl:
    """A control that pins the truncation order, bypassing the tail bound."""
    if m < 1:
        raise DomainError("a pinned truncation needs at least one mode")
    return SeriesControl(tol=tol, m_max=max(m_max, m), m_used=m, tail_bound=math.inf)
