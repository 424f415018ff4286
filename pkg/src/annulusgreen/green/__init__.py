"""Green function, regular part, Robin function and gradients on the annulus."""

from annulusgreen.green.series import (
    boundary_expansion,
    coefficients,
    fourier_modes,
    grad_green_x,
    grad_robin,
    green,
    half_robin_slope,
    regular_part,
    robin,
    robin_critical_radius,
)

__all__ = [
    "boundary_expansion",
    "coefficients",
    "fourier_modes",
    "grad_green_x",
    "grad_robin",
    "green",
    "half_robin_slope",
    "regular_part",
    "robin",
    "robin_critical_radius",
]
