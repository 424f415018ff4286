"""Shared fixtures."""

import pytest

from annulusgreen.solver import solve_r0
from annulusgreen.types import Annulus


@pytest.fixture
def ann() -> Annulus:
    return Annulus(1.0, 2.0)


@pytest.fixture(scope="session")
def r0_unit() -> float:
    """Common radius r0 of the (1, 2) annulus."""
    return solve_r0(Annulus(1.0, 2.0)).r0
