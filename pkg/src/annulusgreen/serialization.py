"""JSON documents ({manifest, result}) and CSV profile tables."""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np

from annulusgreen import __version__
from annulusgreen.types import Annulus, ProfilePoint, RunManifest

MANIFEST_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["command", "a", "b", "tol", "seed", "timestamp", "version"],
    "properties": {
        "command": {"type": "string", "enum": ["eval", "r0", "solve", "validate"]},
        "a": {"type": "number", "exclusiveMinimum": 0},
        "b": {"type": "number", "exclusiveMinimum": 0},
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer"},
        "timestamp": {"type": "string"},
        "version": {"type": "string"},
        "options": {"type": "object"},
    },
}

DOCUMENT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["manifest", "result"],
    "additionalProperties": False,
    "properties": {
        "manifest": MANIFEST_SCHEMA,
        "result": {"type": ["object", "array"]},
    },
}

PROFILE_HEADER = ("r", "f", "g")


class DocumentError(ValueError):
    """An output document does not match the {manifest, result} schema."""


def to_json_compatible(value: Any) -> Any:
    """Recursively normalize values so ``json.dump`` never crashes.

    Dataclasses become dicts of their fields, numpy scalars and arrays become
    Python numbers and lists, and non-finite floats become ``None``.
    """
    if value is None or isinstance(value, (str, bool, int)):
        return value

    if isinstance(value, float):
        return value if math.isfinite(value) else None

    if isinstance(value, np.generic):
        return to_json_compatible(value.item())

    if isinstance(value, np.ndarray):
        return [to_json_compatible(item) for item in value.tolist()]

    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            f.name: to_json_compatible(getattr(value, f.name)) for f in dataclasses.fields(value)
        }

    if isinstance(value, dict):
        return {str(key): to_json_compatible(item) for key, item in value.items()}

    if isinstance(value, (list, tuple)):
        return [to_json_compatible(item) for item in value]

    if isinstance(value, Path):
        return str(value)

    return str(value)


def make_manifest(
    command: str,
    ann: Annulus,
    tol: float,
    seed: int,
    options: dict[str, Any] | None = None,
) -> RunManifest:
    return RunManifest(
        command=command,
        a=ann.a,
        b=ann.b,
        tol=tol,
        seed=seed,
        timestamp=datetime.now(timezone.utc).isoformat(),
        version=__version__,
        options=dict(options or {}),
    )


def manifest_from_dict(data: dict[str, Any]) -> RunManifest:
    options = data.get("options")
    return RunManifest(
        command=str(data.get("command", "")),
        a=float(data["a"]),
        b=float(data["b"]),
        tol=float(data["tol"]),
        seed=int(data.get("seed") or 0),
        timestamp=str(data.get("timestamp", "")),
        version=str(data.get("version", "")),
        options=options if isinstance(options, dict) else {},
    )


def validate_document(document: Any) -> None:
    try:
        jsonschema.validate(instance=document, schema=DOCUMENT_SCHEMA)
    except jsonschema.ValidationError as e:
        raise DocumentError(f"invalid output document: {e.message}") from e


def build_document(manifest: RunManifest, result: Any) -> dict[str, Any]:
    """Wrap a result under its manifest and check the envelope."""
    document = {
        "manifest": to_json_compatible(manifest),
        "result": to_json_compatible(result),
    }
    validate_document(document)
    return document


def dumps_document(document: dict[str, Any]) -> str:
    return json.dumps(document, indent=2, allow_nan=False)


def write_document(document: dict[str, Any], path: Path) -> None:
    """Save a document to a JSON file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(dumps_document(document))
        f.write("\n")


def load_document(path: Path) -> dict[str, Any]:
    """Load and validate a document from a JSON file."""
    with open(path) as f:
        document = json.load(f)
    validate_document(document)
    return document


def write_profile_csv(rows: list[ProfilePoint], path: Path) -> None:
    """Header ``r,f,g`` then one row per radius; no comment lines."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(PROFILE_HEADER)
        for row in rows:
            writer.writerow([repr(row.r), repr(row.f), repr(row.g)])


def read_profile_csv(path: Path) -> list[ProfilePoint]:
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        return [
            ProfilePoint(r=float(row["r"]), f=float(row["f"]), g=float(row["g"])) for row in reader
        ]
