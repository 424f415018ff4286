"""Kirchhoff–Routh functional on l-point configurations and the blow-up residual.

The functional sums over ordered pairs,

    F(ξ_1, …, ξ_l) = Σ_i R(ξ_i) − Σ_{i≠j} G(ξ_i, ξ_j),

so every unordered pair is counted twice and

    ∂F/∂ξ_i = ∇R(ξ_i) − 2 Σ_{j≠i} ∇_x G(ξ_i, ξ_j)

is exactly twice the characterization residual e_i. With this reading ∇F = 0 and
e_i = 0 for all i are the same condition.
"""

from __future__ import annotations

import math

import numpy as np

from annulusgreen.core import (
    DEFAULT_M_MAX,
    DEFAULT_TOL,
    auto_truncation,
    reflect,
    require_interior,
    rotate,
)
from annulusgreen.errors import DiagonalError
from annulusgreen.green.series import (
    coefficients,
    grad_green_x,
    green,
    half_robin_slope,
    robin,
)
from annulusgreen.types import (
    Annulus,
    CharResidual,
    Configuration,
    GradientValue,
    PolarPoint,
    SeriesControl,
    SubtractIdentity,
)


def validate_configuration(ann: Annulus, config: Configuration) -> None:
    for i, p in enumerate(config.points):
        require_interior(ann, p, f"point {i}")
    for i, p in enumerate(config.points):
        for q in config.points[i + 1 :]:
            dx = p.r * math.cos(p.theta) - q.r * math.cos(q.theta)
            dy = p.r * math.sin(p.theta) - q.r * math.sin(q.theta)
            if dx == 0.0 and dy == 0.0:
                raise DiagonalError("configuration points must be pairwise distinct")


def resolve_control(
    ann: Annulus,
    config: Configuration,
    tol: float = DEFAULT_TOL,
    order: int = 0,
    *,
    m_max: int = DEFAULT_M_MAX,
) -> SeriesControl:
    """One truncation for every series touched by the configuration."""
    return auto_truncation(ann, config.radii, tol, m_max=m_max, order=order)


def hamiltonian(
    ann: Annulus, config: Configuration, ctrl: SeriesControl | None = None
) -> float:
    """F(ξ_1, …, ξ_l); for l = 1 this is R(ξ_1)."""
    validate_configuration(ann, config)
    ctrl = ctrl or resolve_control(ann, config, order=0)
    points = config.points
    parts = [robin(ann, p, ctrl) for p in points]
    for i, p in enumerate(points):
        for q in points[i + 1 :]:
            parts.append(-2.0 * green(ann, p, q, ctrl))
    return math.fsum(parts)


def char_residual(
    ann: Annulus, config: Configuration, ctrl: SeriesControl | None = None
) -> CharResidual:
    """e_i = ½∇R(P_i) − Σ_{j≠i} ∇_x G(P_i, P_j) for every point."""
    validate_configuration(ann, config)
    ctrl = ctrl or resolve_control(ann, config, order=1)
    vectors = []
    for i, p in enumerate(config.points):
        radial = [half_robin_slope(ann, p.r, ctrl)]
        tangential = []
        for j, q in enumerate(config.points):
            if j == i:
                continue
            g = grad_green_x(ann, p, q, ctrl)
            radial.append(-g.radial_part)
            tangential.append(-g.tangential_part)
        vectors.append(GradientValue.from_components(p, math.fsum(radial), math.fsum(tangential)))
    return CharResidual(vectors=tuple(vectors))


def grad_hamiltonian(
    ann: Annulus, config: Configuration, ctrl: SeriesControl | None = None
) -> list[GradientValue]:
    """∂F/∂ξ_i for every point (twice the characterization residual)."""
    return [e.scaled(2.0) for e in char_residual(ann, config, ctrl).vectors]


def residual_vector(
    ann: Annulus, config: Configuration, ctrl: SeriesControl | None = None
) -> np.ndarray:
    """Stacked (radial, tangential) residual components in each point's own frame."""
    residual = char_residual(ann, config, ctrl)
    return np.array(
        [c for e in residual.vectors for c in (e.radial_part, e.tangential_part)], dtype=float
    )


def rotate_configuration(config: Configuration, alpha: float) -> Configuration:
    return Configuration(tuple(rotate(p, alpha) for p in config.points))


def reflect_configuration(config: Configuration, phi: float) -> Configuration:
    return Configuration(tuple(reflect(p, phi) for p in config.points))


def _cartesian(p: PolarPoint) -> tuple[float, float]:
    return p.r * math.cos(p.theta), p.r * math.sin(p.theta)


def _dot_sides(
    ann: Annulus, p: PolarPoint, q: PolarPoint, m: int
) -> tuple[float, float]:
    """Both sides of ½∇R(p)·p = ∇_x G(p, q)·p, each summed from its own scalar series."""
    a, b = ann.a, ann.b
    b2, a2 = b * b, a * a
    orders = np.arange(1, m + 1, dtype=float)
    den = 1.0 - ann.rho**orders
    rp2 = p.r * p.r
    lhs = -coefficients(ann, p, 0).B + math.fsum(
        ((rp2 / b2) ** orders - (a2 / rp2) ** orders) / den
    )

    px, py = _cartesian(p)
    qx, qy = _cartesian(q)
    dx, dy = px - qx, py - qy
    singular = -(dx * px + dy * py) / (dx * dx + dy * dy)
    # A_m(q)|p|^m − B_m(q)|p|^{−m}, with the coefficients inserted term by term
    mixed = (
        (p.r * q.r / b2) ** orders
        - (a2 * p.r / (q.r * b2)) ** orders
        + (a2 * q.r / (p.r * b2)) ** orders
        - (a2 / (p.r * q.r)) ** orders
    ) / den
    rhs = (
        singular
        + coefficients(ann, q, 0).B
        - math.fsum(mixed * np.cos(orders * (p.theta - q.theta)))
    )
    return lhs, rhs


def dot_product_reduction(
    ann: Annulus,
    p1: PolarPoint,
    p2: PolarPoint,
    ctrl: SeriesControl | None = None,
) -> tuple[float, float, float, float]:
    """(lhs_1, rhs_1, lhs_2, rhs_2) of the two-point system dotted with P_1 and P_2.

    lhs_i − rhs_i equals e_i · P_i.
    """
    config = Configuration((p1, p2))
    validate_configuration(ann, config)
    ctrl = ctrl or resolve_control(ann, config, order=1)
    lhs1, rhs1 = _dot_sides(ann, p1, p2, ctrl.m_used)
    lhs2, rhs2 = _dot_sides(ann, p2, p1, ctrl.m_used)
    return lhs1, rhs1, lhs2, rhs2


def subtract_identity(
    ann: Annulus,
    p1: PolarPoint,
    p2: PolarPoint,
    ctrl: SeriesControl | None = None,
    m_bracket: int = 50,
) -> SubtractIdentity:
    """The difference of the two dotted equations and its per-mode sign bounds.

    lhs = (|P2|² − |P1|²)/|P2 − P1|² and rhs is the mode sum whose every bracket
    1 + w^{2m} − 2(a²/(|P1||P2|))^m cos mφ, w = ab/(|P1||P2|), dominates
    (1 − w^m)². Brackets and bounds are reported divided by max(1, w^{2m}).
    lhs − rhs equals e_2·P_2 − e_1·P_1.
    """
    config = Configuration((p1, p2))
    validate_configuration(ann, config)
    ctrl = ctrl or resolve_control(ann, config, order=1)
    a, b = ann.a, ann.b
    b2, a2 = b * b, a * a
    r1, r2 = p1.r, p2.r
    phi = p1.theta - p2.theta

    x1, y1 = _cartesian(p1)
    x2, y2 = _cartesian(p2)
    lhs = (r2 * r2 - r1 * r1) / ((x2 - x1) ** 2 + (y2 - y1) ** 2)

    m = ctrl.m_used
    orders = np.arange(1, m + 1, dtype=float)
    den = 1.0 - ann.rho**orders
    terms = (
        (r1 * r1 / b2) ** orders
        - (r2 * r2 / b2) ** orders
        + (a2 / (r2 * r2)) ** orders
        - (a2 / (r1 * r1)) ** orders
        - 2.0
        * np.cos(orders * phi)
        * ((a2 * r1 / (r2 * b2)) ** orders - (a2 * r2 / (r1 * b2)) ** orders)
    ) / den
    rhs = math.fsum(terms)

    w = a * b / (r1 * r2)
    ks = np.arange(1, m_bracket + 1, dtype=float)
    cosines = np.cos(ks * phi)
    if w <= 1.0:
        brackets = 1.0 + w ** (2 * ks) - 2.0 * (a2 / (r1 * r2)) ** ks * cosines
        bounds = (1.0 - w**ks) ** 2
    else:
        v = 1.0 / w
        brackets = v ** (2 * ks) + 1.0 - 2.0 * (r1 * r2 / b2) ** ks * cosines
        bounds = (v**ks - 1.0) ** 2
    margins = brackets - bounds
    return SubtractIdentity(
        lhs=lhs,
        rhs=rhs,
        difference=lhs - rhs,
        brackets=tuple(float(v) for v in brackets),
        bracket_bounds=tuple(float(v) for v in bounds),
        bracket_margins=tuple(float(v) for v in margins),
    )
