"""Independent numerical oracles and the validation engine that runs them."""

from annulusgreen.oracle.checks import (
    boundary_residual,
    discrete_laplacian,
    fd_gradient_check,
    fd_harmonic_check,
)
from annulusgreen.oracle.engine import SUITES, CheckResult, SuiteResult, ValidationEngine
from annulusgreen.oracle.grid import GridOptimum, grid_minimize_two_point, grid_sweep_two_point
from annulusgreen.oracle.poisson import FDPoissonGrid, fd_poisson_green

__all__ = [
    "SUITES",
    "CheckResult",
    "FDPoissonGrid",
    "GridOptimum",
    "SuiteResult",
    "ValidationEngine",
    "boundary_residual",
    "discrete_laplacian",
    "fd_gradient_check",
    "fd_harmonic_check",
    "fd_poisson_green",
    "grid_minimize_two_point",
    "grid_sweep_two_point",
]
