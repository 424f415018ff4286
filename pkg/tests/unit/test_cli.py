"""Tests for CLI commands."""

import json
import math
from pathlib import Path

from annulusgreen.cli import main
from annulusgreen.config import AnnulusGreenConfig
from annulusgreen.serialization import load_document, read_profile_csv

GEOMETRY = ["--a", "1", "--b", "2"]


def _run(capsys, argv: list[str]) -> tuple[int, dict, str]:
    exit_code = main(argv)
    captured = capsys.readouterr()
    document = json.loads(captured.out) if captured.out.strip() else {}
    return exit_code, document, captured.err


def _write_config(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "annulusgreen.yml"
    path.write_text(text)
    return path


def test_eval_robin(capsys) -> None:
    exit_code, document, _ = _run(capsys, ["eval", *GEOMETRY, "--y", "1.5,0", "--what", "robin"])

    assert exit_code == 0
    assert document["manifest"]["command"] == "eval"
    assert math.isfinite(document["result"]["value"])
    assert document["result"]["m_used"] >= 1
    assert document["result"]["tail_bound"] < 1e-10


def test_eval_grad_robin_is_radial(capsys) -> None:
    exit_code, document, _ = _run(
        capsys, ["eval", *GEOMETRY, "--y", "1.5,0.7", "--what", "grad-robin"]
    )

    assert exit_code == 0
    assert abs(document["result"]["gradient"]["tangential"]) <= 1e-14


def test_eval_green_needs_x(capsys) -> None:
    exit_code, _, err = _run(capsys, ["eval", *GEOMETRY, "--y", "1.5,0", "--what", "green"])

    assert exit_code == 2
    assert "--x is required" in err


def test_eval_green(capsys) -> None:
    exit_code, document, _ = _run(
        capsys, ["eval", *GEOMETRY, "--x", "1.3,0.2", "--y", "1.7,2.5", "--what", "green"]
    )

    assert exit_code == 0
    assert document["result"]["value"] > 0.0
    assert document["result"]["x"] == {"r": 1.3, "theta": 0.2}


def test_inverted_annulus_is_input_error(capsys) -> None:
    exit_code, _, err = _run(
        capsys, ["eval", "--a", "2", "--b", "1", "--y", "1.5,0", "--what", "robin"]
    )

    assert exit_code == 2
    assert "inner radius must be less than outer" in err


def test_point_on_boundary_is_input_error(capsys) -> None:
    exit_code, _, err = _run(capsys, ["eval", *GEOMETRY, "--y", "2,0", "--what", "robin"])

    assert exit_code == 2
    assert "Error:" in err


def test_malformed_point_is_usage_error(capsys) -> None:
    exit_code = main(["eval", *GEOMETRY, "--y", "1.5", "--what", "robin"])

    assert exit_code == 2
    assert "expected r,theta" in capsys.readouterr().err


def test_r0_with_profile_csv(tmp_path: Path, capsys) -> None:
    csv_path = tmp_path / "profile.csv"
    exit_code, document, _ = _run(
        capsys, ["r0", *GEOMETRY, "--profile-csv", str(csv_path), "--n-grid", "20"]
    )

    assert exit_code == 0
    result = document["result"]
    assert math.sqrt(2.0) < result["r0"] < 2.0**0.75
    assert result["converged"] is True
    assert abs(result["residual"]) < 1e-10

    rows = {row.r: row for row in read_profile_csv(csv_path)}
    assert len(rows) == 22
    assert abs(rows[math.sqrt(2.0)].g) < 1e-12
    assert abs(rows[2.0**0.75].f) < 1e-14


def test_solve_is_deterministic(capsys) -> None:
    argv = ["solve", *GEOMETRY, "--points", "1", "--starts", "2", "--seed", "5"]
    first_code, first, _ = _run(capsys, argv)
    second_code, second, _ = _run(capsys, argv)

    assert first_code == second_code == 0
    first["manifest"].pop("timestamp")
    second["manifest"].pop("timestamp")
    assert first == second
    assert first["manifest"]["seed"] == 5
    assert len(first["result"]) == 2


def test_solve_writes_out_file(tmp_path: Path, capsys) -> None:
    out = tmp_path / "solve.json"
    exit_code, document, _ = _run(
        capsys, ["solve", *GEOMETRY, "--points", "1", "--starts", "1", "--out", str(out)]
    )

    assert exit_code == 0
    assert load_document(out) == document


def test_solve_without_converged_start(tmp_path: Path, capsys) -> None:
    config = _write_config(tmp_path, "solver:\n  separation_frac: 50\n  max_start_retries: 1\n")
    exit_code, document, err = _run(
        capsys,
        ["--config", str(config), "solve", *GEOMETRY, "--points", "2", "--starts", "2"],
    )

    assert exit_code == 3
    assert "no start converged" in err
    assert all(not report["converged"] for report in document["result"])


def _spy_on_search(monkeypatch) -> dict:
    import annulusgreen.solver as solver

    seen: dict = {}
    search = solver.find_critical_points

    def spy(ann, l, n_starts, opts=None, **kwargs):
        seen["opts"] = opts
        return search(ann, l, n_starts, opts, **kwargs)

    monkeypatch.setattr(solver, "find_critical_points", spy)
    return seen


def test_solve_tolerance_reaches_the_search(capsys, monkeypatch) -> None:
    seen = _spy_on_search(monkeypatch)
    exit_code, document, _ = _run(
        capsys, ["solve", *GEOMETRY, "--points", "1", "--starts", "1", "--tol", "1e-6"]
    )

    assert exit_code == 0
    assert seen["opts"].series_tol == 1e-6
    assert document["manifest"]["tol"] == seen["opts"].series_tol
    assert document["manifest"]["options"]["series_tol"] == 1e-6


def test_solve_uses_config_series_section(tmp_path: Path, capsys, monkeypatch) -> None:
    seen = _spy_on_search(monkeypatch)
    config = _write_config(tmp_path, "series:\n  tol: 1.0e-11\n  m_max: 300\n")
    exit_code, document, _ = _run(
        capsys,
        ["--config", str(config), "solve", *GEOMETRY, "--points", "1", "--starts", "1"],
    )

    assert exit_code == 0
    assert seen["opts"].series_tol == 1e-11
    assert seen["opts"].series_m_max == 300
    assert document["manifest"]["tol"] == 1e-11
    assert document["manifest"]["options"]["m_max"] == 300


def test_validate_respects_mode_cap(tmp_path: Path, capsys) -> None:
    config = _write_config(tmp_path, "series:\n  m_max: 2\nvalidation:\n  n_pairs: 5\n")
    exit_code, document, err = _run(
        capsys, ["--config", str(config), "validate", *GEOMETRY, "--suite", "green"]
    )

    assert exit_code == 4
    assert document["manifest"]["options"]["m_max"] == 2
    assert "boundary" in err


def test_solve_rejects_zero_points(capsys) -> None:
    exit_code, _, err = _run(capsys, ["solve", *GEOMETRY, "--points", "0"])

    assert exit_code == 2
    assert "--points" in err


def test_validate_green(tmp_path: Path, capsys) -> None:
    config = _write_config(tmp_path, "validation:\n  n_pairs: 20\n")
    exit_code, document, _ = _run(
        capsys, ["--config", str(config), "validate", *GEOMETRY, "--suite", "green"]
    )

    assert exit_code == 0
    assert document["result"]["passed"] is True
    assert document["result"]["failed_count"] == 0
    assert len(document["result"]["checks"]) == 5


def test_validate_failure_exit_code(tmp_path: Path, capsys) -> None:
    config = _write_config(tmp_path, "validation:\n  n_pairs: 5\n  gradient_tol: 1.0e-30\n")
    exit_code, document, err = _run(
        capsys, ["--config", str(config), "validate", *GEOMETRY, "--suite", "gradients"]
    )

    assert exit_code == 4
    assert document["result"]["passed"] is False
    assert "grad_green_x" in err


def test_missing_config_file(tmp_path: Path, capsys) -> None:
    missing = tmp_path / "nope.yml"
    exit_code = main(["--config", str(missing), "r0", *GEOMETRY])

    assert exit_code == 2
    assert "failed to read config" in capsys.readouterr().err


def test_no_command_prints_help(capsys) -> None:
    assert main([]) == 0
    assert "usage" in capsys.readouterr().out


def test_init_creates_config(tmp_path: Path, monkeypatch, capsys) -> None:
    monkeypatch.chdir(tmp_path)

    assert main(["init"]) == 0
    config = AnnulusGreenConfig.from_file(tmp_path / "annulusgreen.yml")
    assert config.series.tol == 1e-10
    assert config.solver.n_starts == 20

    assert main(["init"]) == 1
    assert "already exists" in capsys.readouterr().err
