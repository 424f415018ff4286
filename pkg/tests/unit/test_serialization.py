"""Tests for output documents and profile tables."""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from annulusgreen import __version__
from annulusgreen.serialization import (
    PROFILE_HEADER,
    DocumentError,
    build_document,
    dumps_document,
    load_document,
    make_manifest,
    manifest_from_dict,
    read_profile_csv,
    to_json_compatible,
    validate_document,
    write_document,
    write_profile_csv,
)
from annulusgreen.types import Annulus, Configuration, PolarPoint, ProfilePoint, RootResult


def _make_manifest(command: str = "r0"):
    return make_manifest(command, Annulus(1.0, 2.0), 1e-10, 0, {"n_grid": 10})


def test_manifest_fields():
    manifest = _make_manifest()
    assert manifest.command == "r0"
    assert (manifest.a, manifest.b) == (1.0, 2.0)
    assert manifest.version == __version__
    assert manifest.timestamp.endswith("+00:00")
    assert manifest.options == {"n_grid": 10}


def test_manifest_from_dict():
    data = to_json_compatible(_make_manifest("solve"))
    restored = manifest_from_dict(data)
    assert restored.command == "solve"
    assert restored.tol == 1e-10
    assert restored.options == {"n_grid": 10}


class TestJsonCompatible:
    def test_non_finite_floats_become_null(self):
        assert to_json_compatible([1.0, math.inf, math.nan]) == [1.0, None, None]

    def test_numpy_values(self):
        assert to_json_compatible(np.float64(0.5)) == 0.5
        assert to_json_compatible(np.arange(3)) == [0, 1, 2]

    def test_nested_dataclasses(self):
        config = Configuration((PolarPoint(1.5, 0.0), PolarPoint(1.5, math.pi)))
        data = to_json_compatible({"config": config})
        assert data["config"]["points"][1] == {"r": 1.5, "theta": math.pi}

    def test_result_dataclass(self):
        root = RootResult(1.5, 1e-16, (1.4, 1.6), 12, 10, 2, 1e-13, True)
        data = to_json_compatible(root)
        assert data["bracket"] == [1.4, 1.6]
        assert data["converged"] is True


class TestDocuments:
    def test_build_and_dump(self):
        document = build_document(_make_manifest(), {"r0": 1.5})
        parsed = json.loads(dumps_document(document))
        assert parsed["result"] == {"r0": 1.5}
        assert parsed["manifest"]["command"] == "r0"

    def test_list_result(self):
        document = build_document(_make_manifest("solve"), [{"converged": True}])
        assert document["result"] == [{"converged": True}]

    def test_unknown_command_rejected(self):
        with pytest.raises(DocumentError):
            build_document(_make_manifest("plot"), {})

    def test_extra_top_level_key_rejected(self):
        document = build_document(_make_manifest(), {})
        document["extra"] = 1
        with pytest.raises(DocumentError, match="invalid output document"):
            validate_document(document)

    def test_write_and_load(self, tmp_path: Path):
        document = build_document(_make_manifest(), {"r0": 1.5})
        path = tmp_path / "out" / "r0.json"
        write_document(document, path)
        assert load_document(path) == document

    def test_load_rejects_bad_document(self, tmp_path: Path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"result": {}}))
        with pytest.raises(DocumentError):
            load_document(path)


def test_profile_csv(tmp_path: Path):
    rows = [ProfilePoint(math.sqrt(2.0), 0.5, 1e-17), ProfilePoint(1.6, 0.1, 0.2)]
    path = tmp_path / "profile.csv"
    write_profile_csv(rows, path)

    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(PROFILE_HEADER)
    assert len(lines) == 3
    assert read_profile_csv(path) == rows
