"""annulusgreen: Green/Robin functions on a planar annulus and two-point blow-up configurations."""

__version__ = "0.1.0"

# Lazy imports: `import annulusgreen` pulls in neither numpy nor scipy.


def __getattr__(name: str):  # noqa: ANN001
    """Lazy-load public API names on first access."""
    _lazy = {
        "Annulus": "annulusgreen.types",
        "PolarPoint": "annulusgreen.types",
        "Configuration": "annulusgreen.types",
        "SeriesControl": "annulusgreen.types",
        "AnnulusError": "annulusgreen.errors",
        "auto_truncation": "annulusgreen.core",
        "green": "annulusgreen.green",
        "robin": "annulusgreen.green",
        "hamiltonian": "annulusgreen.functional",
        "char_residual": "annulusgreen.functional",
        "solve_r0": "annulusgreen.solver",
        "find_critical_points": "annulusgreen.solver",
        "ValidationEngine": "annulusgreen.oracle",
        "AnnulusGreenConfig": "annulusgreen.config",
    }
    if name in _lazy:
        import importlib

        mod = importlib.import_module(_lazy[name])
        return getattr(mod, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "Annulus",
    "AnnulusError",
    "AnnulusGreenConfig",
    "Configuration",
    "PolarPoint",
    "SeriesControl",
    "ValidationEngine",
    "auto_truncation",
    "char_residual",
    "find_critical_points",
    "green",
    "hamiltonian",
    "robin",
    "solve_r0",
]
