"""Core value types for annulus geometry, series control and solver reports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from annulusgreen.errors import DegeneratePointError, DiagonalError, DomainError

TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    """Map an angle in radians to [0, 2π)."""
    wrapped = math.fmod(theta, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    # fmod of a tiny negative angle can round up to exactly 2π
    if wrapped >= TWO_PI:
        wrapped = 0.0
    return wrapped


@dataclass(frozen=True)
class Annulus:
    """The open annulus a < |x| < b."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("annulus radii must be finite")
        if self.a <= 0.0:
            raise DomainError("inner radius must be positive")
        if self.a >= self.b:
            raise DomainError("inner radius must be less than outer")

    @property
    def rho(self) -> float:
        """(a/b)², the ratio shared by every coefficient denominator."""
        return (self.a / self.b) ** 2

    @property
    def log_ratio(self) -> float:
        """log(a/b), always negative."""
        return math.log(self.a / self.b)

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def geometric_mean(self) -> float:
        """√(ab), the zero of the even-mode profile g."""
        return math.sqrt(self.a * self.b)

    @property
    def quarter_mean(self) -> float:
        """a^{1/4} b^{3/4}, the zero of the logarithmic profile f."""
        return self.a**0.25 * self.b**0.75


@dataclass(frozen=True)
class PolarPoint:
    """A point (r cos θ, r sin θ) with θ normalized to [0, 2π)."""

    r: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and math.isfinite(self.theta)):
            raise DomainError("polar coordinates must be finite")
        if self.r <= 0.0:
            raise DegeneratePointError("polar radius must be positive")
        object.__setattr__(self, "theta", normalize_angle(self.theta))


@dataclass(frozen=True)
class PlanarPoint:
    """Cartesian carrier for points and gradient vectors."""

    x1: float
    x2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x1) and math.isfinite(self.x2)):
            raise DomainError("cartesian coordinates must be finite")

    @property
    def norm(self) -> float:
        return math.hypot(self.x1, self.x2)

    def dot(self, other: PlanarPoint) -> float:
        return self.x1 * other.x1 + self.x2 * other.x2

    @property
    def perp(self) -> PlanarPoint:
        """x⊥ = (−x₂, x₁)."""
        return PlanarPoint(-self.x2, self.x1)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the Fourier series and the order actually used."""

    tol: float
    m_max: int = 512
    m_used: int = 1
    tail_bound: float = 0.0
    q: float = 0.0

    def __post_init__(self) -> None:
        if not self.tol > 0.0:
            raise DomainError("series tolerance must be positive")
        if self.m_max < 1:
            raise DomainError("m_max must be at least 1")
        if not 1 <= self.m_used <= self.m_max:
            raise DomainError("m_used must lie in [1, m_max]")

    @property
    def saturated(self) -> bool:
        return self.tail_bound >= self.tol


@dataclass(frozen=True)
class FourierCoefficients:
    """A_m(y), B_m(y) of the Fourier representation of the Green function."""

    m: int
    A: float
    B: float


@dataclass(frozen=True)
class GradientValue:
    """A gradient at a point, with its radial/tangential decomposition."""

    vector: PlanarPoint
    radial_part: float
    tangential_part: float

    @classmethod
    def from_components(cls, at: PolarPoint, radial: float, tangential: float) -> GradientValue:
        """Assemble radial·x/|x| + tangential·x⊥/|x| at the point ``at``."""
        c, s = math.cos(at.theta), math.sin(at.theta)
        return cls(
            vector=PlanarPoint(radial * c - tangential * s, radial * s + tangential * c),
            radial_part=radial,
            tangential_part=tangential,
        )

    @property
    def norm(self) -> float:
        return math.hypot(self.radial_part, self.tangential_part)

    def scaled(self, factor: float) -> GradientValue:
        return GradientValue(
            vector=PlanarPoint(factor * self.vector.x1, factor * self.vector.x2),
            radial_part=factor * self.radial_part,
            tangential_part=factor * self.tangential_part,
        )


@dataclass(frozen=True)
class Configuration:
    """An ordered tuple of pairwise distinct points (ξ₁, …, ξ_l)."""

    points: tuple[PolarPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise DomainError("a configuration needs at least one point")
        for i, p in enumerate(self.points):
            for q in self.points[i + 1 :]:
                if p.r == q.r and p.theta == q.theta:
                    raise DiagonalError("configuration points must be pairwise distinct")

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def radii(self) -> list[float]:
        return [p.r for p in self.points]


@dataclass(frozen=True)
class CharResidual:
    """Per-point residuals e_i = ½∇R(P_i) − Σ_{j≠i} ∇_x G(P_i, P_j)."""

    vectors: tuple[GradientValue, ...]

    @property
    def norm(self) -> float:
        return max(v.norm for v in self.vectors)


@dataclass(frozen=True)
class ProfilePoint:
    """The two sides f(r) and g(r) of the common-radius equation."""

    r: float
    f: float
    g: float

    @property
    def difference(self) -> float:
        return self.f - self.g


@dataclass(frozen=True)
class RootResult:
    """Outcome of the bracketed root solve for r₀."""

    r0: float
    residual: float
    bracket: tuple[float, float]
    iterations: int
    bisection_steps: int
    newton_steps: int
    width: float
    converged: bool


@dataclass(frozen=True)
class SubtractIdentity:
    """Both sides of the subtracted two-point identity plus its per-mode bounds."""

    lhs: float
    rhs: float
    difference: float
    brackets: tuple[float, ...]
    bracket_bounds: tuple[float, ...]
    bracket_margins: tuple[float, ...]

    @property
    def brackets_dominate(self) -> bool:
        return all(margin >= -1e-14 for margin in self.bracket_margins)


@dataclass
class PolygonDiagnostics:
    """Shape measurements of an l ≥ 3 configuration."""

    radii_spread: float
    angular_gap_spread: float
    max_radii_spread_seen: float = 0.0


@dataclass
class CriticalPointReport:
    """Converged (or abandoned) critical-point search from one start."""

    config: Configuration
    residual_norm: float
    converged: bool
    iterations: int
    start_index: int = 0
    start: Configuration | None = None
    descent_steps: int = 0
    polish_steps: int = 0
    start_retries: int = 0
    cluster: int = 0
    antipodality_gap: float | None = None
    radius_gap: float | None = None
    collinearity_gap: float | None = None
    subtract: SubtractIdentity | None = None
    polygon: PolygonDiagnostics | None = None
    message: str = ""


@dataclass(frozen=True)
class FDReport:
    """Discrete-Laplacian residuals at spacing h and h/2."""

    h: float
    residual_h: float
    residual_h2: float
    order_estimate: float


@dataclass
class RunManifest:
    """Reproducibility header embedded in every CLI output document."""

    command: str
    a: float
    b: float
    tol: float
    seed: int
    timestamp: str
    version: str
    options: dict[str, object] = field(default_factory=dict)
