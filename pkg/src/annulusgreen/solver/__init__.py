"""Root solve for the common radius and the multi-start critical-point search."""

from annulusgreen.solver.profile import (
    even_profile,
    log_profile,
    profile,
    profile_derivative,
    profile_table,
    solve_r0,
)
from annulusgreen.solver.search import (
    SolverOptions,
    configuration_distance,
    distinct_configurations,
    find_critical_points,
    polygon_explore,
    regular_polygon,
    verify_two_point,
)

__all__ = [
    "SolverOptions",
    "configuration_distance",
    "distinct_configurations",
    "even_profile",
    "find_critical_points",
    "log_profile",
    "polygon_explore",
    "profile",
    "profile_derivative",
    "profile_table",
    "regular_polygon",
    "solve_r0",
    "verify_two_point",
]
