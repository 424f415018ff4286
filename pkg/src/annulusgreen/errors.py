"""Exception hierarchy shared by every annulusgreen module."""

from __future__ import annotations


class AnnulusError(ValueError):
    """Base class for all precondition violations raised by annulusgreen."""


class DomainError(AnnulusError):
    """A geometry, point or parameter lies outside its allowed range."""


class DegeneratePointError(DomainError):
    """The origin has no polar angle."""


class SingularityError(AnnulusError):
    """Evaluation requested at the pole x = y of the Green function."""


class DiagonalError(AnnulusError):
    """Two points of a configuration coincide."""


class SolverError(AnnulusError):
    """Invalid arguments for a solver operation."""


class OracleError(AnnulusError):
    """An oracle precondition (stencil placement, q cap, grid node) is violated."""
