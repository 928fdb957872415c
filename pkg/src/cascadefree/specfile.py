"""JSON operation-spec files (version 1)."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .avoidance import StatefulOperation
from .errors import InvalidOperation, SpecFileError

SPEC_VERSION = 1

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["version", "states", "alphabet", "transitions", "forbidden_state"],
    "properties": {
        "version": {"const": SPEC_VERSION},
        "states": {"type": "integer", "minimum": 2},
        "alphabet": {"type": "integer", "minimum": 1},
        "transitions": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "minItems": 2,
                "items": {"type": "integer", "minimum": 0},
            },
        },
        "forbidden_state": {"type": "integer", "minimum": 0},
        "initial_state": {"type": "integer", "minimum": 0, "default": 0},
    },
}


def operation_from_dict(doc: Any) -> StatefulOperation:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecFileError(f"schema violation: {exc.message}") from None
    try:
        return StatefulOperation(
            states=doc["states"],
            alphabet=doc["alphabet"],
            transitions=tuple(tuple(row) for row in doc["transitions"]),
            forbidden=doc["forbidden_state"],
            initial=doc.get("initial_state", 0),
        )
    except InvalidOperation as exc:
        raise SpecFileError(str(exc)) from None


def load_operation(path: str | Path) -> StatefulOperation:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"{path} is not valid JSON: {exc.msg}") from None
    return operation_from_dict(doc)


def operation_to_dict(op: StatefulOperation) -> dict[str, Any]:
    return {
        "version": SPEC_VERSION,
        "states": op.states,
        "alphabet": op.alphabet,
        "transitions": [list(row) for row in op.transitions],
        "forbidden_state": op.forbidden,
        "initial_state": op.initial,
    }


def dump_operation(op: StatefulOperation) -> str:
    """Compact form: one transition row per line."""
    doc = operation_to_dict(op)
    rows = ",\n    ".join(json.dumps(r) for r in doc["transitions"])
    return (
        "{\n"
        f'  "version": {doc["version"]},\n'
        f'  "states": {doc["states"]},\n'
        f'  "alphabet": {doc["alphabet"]},\n'
        f'  "forbidden_state": {doc["forbidden_state"]},\n'
        f'  "initial_state": {doc["initial_state"]},\n'
        f'  "transitions": [\n    {rows}\n  ]\n'
        "}\n"
    )
