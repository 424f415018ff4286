"""Kirchhoff–Routh functional, characterization residual and two-point identities."""

from annulusgreen.functional.hamiltonian import (
    char_residual,
    dot_product_reduction,
    grad_hamiltonian,
    hamiltonian,
    reflect_configuration,
    residual_vector,
    resolve_control,
    rotate_configuration,
    subtract_identity,
    validate_configuration,
)

__all__ = [
    "char_residual",
    "dot_product_reduction",
    "grad_hamiltonian",
    "hamiltonian",
    "reflect_configuration",
    "residual_vector",
    "resolve_control",
    "rotate_configuration",
    "subtract_identity",
    "validate_configuration",
]
