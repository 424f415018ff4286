"""Configuration loader for annulusgreen.yml."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, TypeVar

import yaml

from annulusgreen.core import DEFAULT_M_MAX, DEFAULT_TOL
from annulusgreen.solver.search import SolverOptions

CONFIG_FILENAME = "annulusgreen.yml"


@dataclass
class SeriesConfig:
    tol: float = DEFAULT_TOL
    m_max: int = DEFAULT_M_MAX


@dataclass
class SolverConfig:
    seed: int = 0
    n_starts: int = 20
    max_descent_iter: int = 500
    descent_rate: float = 0.01
    descent_switch: float = 1e-3
    residual_tol: float = 1e-9
    step_tol: float = 1e-12
    margin_frac: float = 0.05
    separation_frac: float = 0.1
    cluster_threshold: float = 1e-5
    max_start_retries: int = 100
    workers: int = 1

    def to_options(
        self,
        seed: int | None = None,
        *,
        series_tol: float | None = None,
        series_m_max: int = DEFAULT_M_MAX,
    ) -> SolverOptions:
        """Solver options with command-line overrides for the seed and series tolerance."""
        defaults = SolverOptions()
        return SolverOptions(
            seed=self.seed if seed is None else seed,
            max_descent_iter=self.max_descent_iter,
            descent_rate=self.descent_rate,
            descent_switch=self.descent_switch,
            residual_tol=self.residual_tol,
            step_tol=self.step_tol,
            series_tol=defaults.series_tol if series_tol is None else series_tol,
            series_m_max=series_m_max,
            margin_frac=self.margin_frac,
            separation_frac=self.separation_frac,
            cluster_threshold=self.cluster_threshold,
            max_start_retries=self.max_start_retries,
            workers=self.workers,
        )


@dataclass
class ValidationConfig:
    """Sample counts and thresholds of the oracle suites."""

    seed: int = 0
    n_pairs: int = 500
    q_cap: float = 0.9
    fd_h: float = 1e-5
    harmonic_h: float = 0.02
    gradient_tol: float = 1e-7
    poisson_resolution: int = 256
    poisson_tol: float = 5e-3
    flux_rel_tol: float = 0.01
    boundary_samples: int = 64


@dataclass
class AnnulusGreenConfig:
    """Parsed annulusgreen.yml configuration."""

    version: str = "1"
    series: SeriesConfig = field(default_factory=SeriesConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)
    validation: ValidationConfig = field(default_factory=ValidationConfig)

    @classmethod
    def from_file(cls, path: Path) -> AnnulusGreenConfig:
        """Load config from a YAML file."""
        with open(path) as f:
            raw = yaml.safe_load(f) or {}
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> AnnulusGreenConfig:
        """Parse a raw dict into config; malformed values fall back to defaults."""
        raw = _section(raw)
        version = raw.get("version")
        return cls(
            version="1" if version is None or isinstance(version, bool) else str(version),
            series=_parse(SeriesConfig, raw.get("series"), _SERIES_FIELDS),
            solver=_parse(SolverConfig, raw.get("solver"), _SOLVER_FIELDS),
            validation=_parse(ValidationConfig, raw.get("validation"), _VALIDATION_FIELDS),
        )

    @classmethod
    def discover(cls, start: Path | None = None) -> AnnulusGreenConfig:
        """Walk up from start (or cwd) looking for annulusgreen.yml."""
        search = start or Path.cwd()
        if search.is_file():
            search = search.parent
        for directory in [search, *search.parents]:
            candidate = directory / CONFIG_FILENAME
            if candidate.exists():
                return cls.from_file(candidate)
        return cls()  # defaults


def _section(value: Any) -> dict[str, Any]:
    """YAML sections may be null or a scalar; both read as empty."""
    return value if isinstance(value, dict) else {}


def _number(value: Any) -> float | None:
    """A finite number, or None. YAML reads ``1e-10`` (no decimal point) as a string."""
    if value is None or isinstance(value, bool):
        return None
    try:
        number = float(value)
    except (TypeError, ValueError, OverflowError):
        return None
    return number if math.isfinite(number) else None


def _seed(value: Any, default: int) -> int:
    """Nonnegative integer, as numpy's SeedSequence requires."""
    number = _number(value)
    if number is None or not number.is_integer() or number < 0:
        return default
    return int(number)


def _count(value: Any, default: int) -> int:
    """Integer of at least 1: sample sizes, iteration caps, grid resolutions."""
    number = _number(value)
    if number is None or not number.is_integer() or number < 1:
        return default
    return int(number)


def _tolerance(value: Any, default: float) -> float:
    """Positive finite float: tolerances, step sizes, rates."""
    number = _number(value)
    return number if number is not None and number > 0.0 else default


def _ratio(value: Any, default: float) -> float:
    """Float strictly between 0 and 1: geometric ratio caps and radial margins."""
    number = _number(value)
    return number if number is not None and 0.0 < number < 1.0 else default


Coercer = Callable[[Any, Any], Any]

_SERIES_FIELDS: dict[str, Coercer] = {"tol": _tolerance, "m_max": _count}

_SOLVER_FIELDS: dict[str, Coercer] = {
    "seed": _seed,
    "n_starts": _count,
    "max_descent_iter": _count,
    "descent_rate": _tolerance,
    "descent_switch": _tolerance,
    "residual_tol": _tolerance,
    "step_tol": _tolerance,
    "margin_frac": _ratio,
    # larger than 1 is allowed; no start can then be placed
    "separation_frac": _tolerance,
    "cluster_threshold": _tolerance,
    "max_start_retries": _count,
    "workers": _count,
}

_VALIDATION_FIELDS: dict[str, Coercer] = {
    "seed": _seed,
    "n_pairs": _count,
    "q_cap": _ratio,
    "fd_h": _tolerance,
    "harmonic_h": _ratio,
    "gradient_tol": _tolerance,
    "poisson_resolution": _count,
    "poisson_tol": _tolerance,
    "flux_rel_tol": _tolerance,
    "boundary_samples": _count,
}

_Section = TypeVar("_Section", SeriesConfig, SolverConfig, ValidationConfig)


def _parse(cls: type[_Section], raw: Any, coercers: dict[str, Coercer]) -> _Section:
    section = _section(raw)
    defaults = cls()
    return cls(
        **{
            name: coerce(section.get(name), getattr(defaults, name))
            for name, coerce in coercers.items()
        }
    )
