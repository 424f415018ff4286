"""CLI entry point for annulusgreen commands.

Exit codes: 0 success, 2 input error, 3 no converged start, 4 validation failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any

import yaml

from annulusgreen.config import AnnulusGreenConfig
from annulusgreen.errors import AnnulusError
from annulusgreen.types import Annulus, GradientValue, PolarPoint

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_CONVERGED = 3
EXIT_VALIDATION = 4

EVAL_TARGETS = ("green", "robin", "grad-green", "grad-robin")


def _polar_pair(text: str) -> PolarPoint:
    """Parse "r,theta" into a PolarPoint."""
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected r,theta but got {text!r}")
    try:
        r, theta = float(parts[0]), float(parts[1])
        return PolarPoint(r, theta)
    except (ValueError, AnnulusError) as e:
        raise argparse.ArgumentTypeError(f"invalid polar point {text!r}: {e}") from e


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annulusgreen",
        description="Green/Robin functions on an annulus and two-point blow-up configurations",
    )
    parser.add_argument("--config", type=Path, default=None, help="Path to annulusgreen.yml")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="Log to stderr (-vv for debug)"
    )
    subparsers = parser.add_subparsers(dest="command")

    def geometry(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--a", type=float, required=True, help="Inner radius")
        sub.add_argument("--b", type=float, required=True, help="Outer radius")
        sub.add_argument("--tol", type=float, default=None, help="Series / root tolerance")

    # eval command
    eval_parser = subparsers.add_parser("eval", help="Evaluate G, R or their gradients")
    geometry(eval_parser)
    eval_parser.add_argument("--x", type=_polar_pair, default=None, help="Field point r,theta")
    eval_parser.add_argument("--y", type=_polar_pair, required=True, help="Pole r,theta")
    eval_parser.add_argument("--what", choices=EVAL_TARGETS, required=True)

    # r0 command
    r0_parser = subparsers.add_parser("r0", help="Solve for the common radius r0")
    geometry(r0_parser)
    r0_parser.add_argument("--profile-csv", type=Path, default=None, help="Write r,f,g table")
    r0_parser.add_argument("--n-grid", type=int, default=200, help="Profile grid size")

    # solve command
    solve_parser = subparsers.add_parser("solve", help="Multi-start critical-point search")
    geometry(solve_parser)
    solve_parser.add_argument("--points", type=int, required=True, help="Number of points l")
    solve_parser.add_argument("--starts", type=int, default=None, help="Number of random starts")
    solve_parser.add_argument("--seed", type=int, default=None, help="Random seed")
    solve_parser.add_argument("--workers", type=int, default=None, help="Concurrent starts")
    solve_parser.add_argument("--out", type=Path, default=None, help="Also write the document")

    # validate command
    validate_parser = subparsers.add_parser("validate", help="Run an oracle suite")
    geometry(validate_parser)
    validate_parser.add_argument(
        "--suite", choices=("green", "gradients", "poisson", "all"), default="all"
    )

    # init command
    subparsers.add_parser("init", help="Create a starter annulusgreen.yml")
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_INPUT

    if args.verbose:
        logging.basicConfig(
            level=logging.DEBUG if args.verbose > 1 else logging.INFO,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )

    if args.command == "init":
        return _cmd_init()
    if args.command is None:
        parser.print_help()
        return EXIT_OK

    try:
        cfg = AnnulusGreenConfig.from_file(args.config) if args.config else AnnulusGreenConfig()
    except (OSError, ValueError, yaml.YAMLError) as e:
        print(f"Error: failed to read config '{args.config}': {e}", file=sys.stderr)
        return EXIT_INPUT

    try:
        ann = Annulus(args.a, args.b)
        tol = cfg.series.tol if args.tol is None else args.tol
        if not tol > 0.0:
            raise AnnulusError("tolerance must be positive")
        if args.command == "eval":
            return _cmd_eval(args, ann, tol, cfg)
        if args.command == "r0":
            return _cmd_r0(args, ann, tol, cfg)
        if args.command == "solve":
            return _cmd_solve(args, ann, tol, cfg)
        return _cmd_validate(args, ann, tol, cfg)
    except AnnulusError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT


def _emit(
    command: str,
    ann: Annulus,
    tol: float,
    seed: int,
    options: dict[str, Any],
    result: Any,
    out: Path | None = None,
) -> None:
    from annulusgreen.serialization import (
        build_document,
        dumps_document,
        make_manifest,
        write_document,
    )

    document = build_document(make_manifest(command, ann, tol, seed, options), result)
    print(dumps_document(document))
    if out is not None:
        write_document(document, out)


def _gradient_record(g: GradientValue) -> dict[str, float]:
    return {
        "x1": g.vector.x1,
        "x2": g.vector.x2,
        "radial": g.radial_part,
        "tangential": g.tangential_part,
    }


def _cmd_eval(args: argparse.Namespace, ann: Annulus, tol: float, cfg: AnnulusGreenConfig) -> int:
    """Evaluate one quantity at the given points."""
    from annulusgreen.core import auto_truncation
    from annulusgreen.green import grad_green_x, grad_robin, green, robin

    y: PolarPoint = args.y
    x: PolarPoint | None = args.x
    m_max = cfg.series.m_max
    if args.what in ("green", "grad-green") and x is None:
        raise AnnulusError(f"--x is required for --what {args.what}")

    result: dict[str, Any] = {"what": args.what, "y": {"r": y.r, "theta": y.theta}}
    if x is not None and args.what in ("green", "grad-green"):
        result["x"] = {"r": x.r, "theta": x.theta}

    if args.what == "green":
        assert x is not None
        ctrl = auto_truncation(ann, [x.r, y.r], tol, m_max=m_max)
        result["value"] = green(ann, x, y, ctrl)
    elif args.what == "robin":
        ctrl = auto_truncation(ann, [y.r], tol, m_max=m_max)
        result["value"] = robin(ann, y, ctrl)
    elif args.what == "grad-green":
        assert x is not None
        ctrl = auto_truncation(ann, [x.r, y.r], tol, m_max=m_max, order=1)
        result["gradient"] = _gradient_record(grad_green_x(ann, x, y, ctrl))
    else:
        ctrl = auto_truncation(ann, [y.r], tol, m_max=m_max, order=1)
        result["gradient"] = _gradient_record(grad_robin(ann, y, ctrl))

    result["m_used"] = ctrl.m_used
    result["tail_bound"] = ctrl.tail_bound
    _emit("eval", ann, tol, cfg.solver.seed, {"what": args.what, "m_max": m_max}, result)
    return EXIT_OK


def _cmd_r0(args: argparse.Namespace, ann: Annulus, tol: float, cfg: AnnulusGreenConfig) -> int:
    """Solve f(r) = g(r) and optionally tabulate both sides."""
    from annulusgreen.serialization import write_profile_csv
    from annulusgreen.solver import profile_table, solve_r0

    root = solve_r0(ann, tol)
    result = {
        "r0": root.r0,
        "residual": root.residual,
        "bracket": list(root.bracket),
        "iterations": root.iterations,
        "bisection_steps": root.bisection_steps,
        "newton_steps": root.newton_steps,
        "width": root.width,
        "converged": root.converged,
    }
    options: dict[str, Any] = {}
    if args.profile_csv is not None:
        write_profile_csv(profile_table(ann, args.n_grid), args.profile_csv)
        options = {"profile_csv": str(args.profile_csv), "n_grid": args.n_grid}
    _emit("r0", ann, tol, cfg.solver.seed, options, result)
    return EXIT_OK


def _cmd_solve(args: argparse.Namespace, ann: Annulus, tol: float, cfg: AnnulusGreenConfig) -> int:
    """Run the multi-start search; exit 3 when no start converges."""
    from dataclasses import replace

    from annulusgreen.solver import find_critical_points

    if args.points < 1:
        raise AnnulusError("--points must be at least 1")
    n_starts = cfg.solver.n_starts if args.starts is None else args.starts
    if n_starts < 1:
        raise AnnulusError("--starts must be at least 1")
    opts = cfg.solver.to_options(seed=args.seed, series_tol=tol, series_m_max=cfg.series.m_max)
    if args.workers is not None:
        opts = replace(opts, workers=max(1, args.workers))

    reports = find_critical_points(ann, args.points, n_starts, opts)
    options = {
        "points": args.points,
        "starts": n_starts,
        "workers": opts.workers,
        "residual_tol": opts.residual_tol,
        "series_tol": opts.series_tol,
        "m_max": opts.series_m_max,
    }
    _emit("solve", ann, tol, opts.seed, options, reports, args.out)
    if not any(r.converged for r in reports):
        print("Error: no start converged", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _cmd_validate(
    args: argparse.Namespace, ann: Annulus, tol: float, cfg: AnnulusGreenConfig
) -> int:
    """Run an oracle suite; exit 4 when any check fails."""
    from annulusgreen.oracle import ValidationEngine

    suite = ValidationEngine(cfg.validation, tol, m_max=cfg.series.m_max).run(ann, args.suite)
    result = {
        "suite": suite.suite,
        "passed": suite.passed,
        "failed_count": suite.failed_count,
        "checks": suite.results,
    }
    _emit(
        "validate",
        ann,
        tol,
        cfg.validation.seed,
        {"suite": args.suite, "m_max": cfg.series.m_max},
        result,
    )
    for failure in suite.failures():
        print(f"✗ {failure.name}: {failure.message}", file=sys.stderr)
    return EXIT_OK if suite.passed else EXIT_VALIDATION


def _cmd_init() -> int:
    """Create a starter annulusgreen.yml in the current directory."""
    target = Path("annulusgreen.yml")
    if target.exists():
        print(f"Error: {target} already exists", file=sys.stderr)
        return 1

    template = """\
version: "1"

series:
  tol: 1.0e-10
  m_max: 512

solver:
  seed: 0
  n_starts: 20
  max_descent_iter: 500
  residual_tol: 1.0e-9
  workers: 1

validation:
  n_pairs: 500
  q_cap: 0.9
  gradient_tol: 1.0e-7
  poisson_resolution: 256
"""
    try:
        target.write_text(template)
    except OSError as e:
        print(f"Error: failed to write {target}: {e}", file=sys.stderr)
        return 1
    print(f"Created {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
