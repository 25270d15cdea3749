"""JSON readers and writers for coverings, state spaces, tables, factor systems and graphs.

Inputs are validated against the JSON schemas in :data:`SCHEMAS` (also
published under ``docs/schemas/``) before any object is built.  Malformed
files raise :class:`InputError` carrying the file position when the JSON
itself does not parse.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Union

import jsonschema

from factorspace.ci import JointDistribution
from factorspace.covering import Covering, IndexSet
from factorspace.errors import FactorSpaceError
from factorspace.factorize import FactorSystem
from factorspace.loglin import PositiveTable
from factorspace.markov import Graph
from factorspace.state import StateSpace


class InputError(FactorSpaceError):
    """Unreadable or schema-violating input."""


_labels = {"type": "array", "items": {"type": "string"}}
_subset = {"type": "array", "items": {"type": "string"}, "uniqueItems": True}
_space = {
    "type": "object",
    "required": ["alphabets"],
    "properties": {
        "alphabets": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        }
    },
}
_table = {
    "type": "object",
    "required": ["space", "values"],
    "properties": {
        "space": _space,
        "values": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}},
        "normalized": {"type": "boolean"},
    },
}

SCHEMAS: Dict[str, Dict[str, Any]] = {
    "covering": {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "Covering",
        "description": "A finite family of subsets of an ordered index set; [] encodes the empty subset.",
        "type": "object",
        "required": ["index_set", "members"],
        "properties": {
            "index_set": {**_labels, "minItems": 1, "uniqueItems": True},
            "members": {"type": "array", "items": _subset},
        },
    },
    "state_space": {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "StateSpace",
        "description": "One non-empty alphabet per label; label order is key order.",
        **_space,
    },
    "table": {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "PositiveTable",
        "description": "Strictly positive values in row-major order, last label varying fastest.",
        **_table,
    },
    "distribution": {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "JointDistribution",
        "description": "A table plus normalized=true; values must then sum to one.",
        **_table,
        "required": ["space", "values", "normalized"],
    },
    "factor_system": {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "FactorSystem",
        "description": "Factor tables keyed by comma-joined labels (label order); '' keys the empty subset.",
        "type": "object",
        "required": ["covering", "factors"],
        "properties": {
            "covering": {"type": "array", "items": _subset},
            "factors": {
                "type": "object",
                "additionalProperties": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}},
            },
        },
    },
    "graph": {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "Graph",
        "type": "object",
        "required": ["vertices", "edges"],
        "properties": {
            "vertices": {**_labels, "minItems": 1, "uniqueItems": True},
            "edges": {"type": "array", "items": {**_labels, "minItems": 2, "maxItems": 2}},
        },
    },
}


def read_json(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _validate(data: Any, kind: str, origin: str = "<input>") -> None:
    try:
        jsonschema.validate(data, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"{origin}: {kind} schema violation at {where}: {exc.message}") from None


def covering_from_dict(data: Any, origin: str = "<input>") -> Covering:
    _validate(data, "covering", origin)
    return Covering.of(IndexSet(tuple(data["index_set"])), data["members"])


def covering_to_dict(c: Covering) -> Dict:
    return {"index_set": list(c.index_set.labels), "members": c.to_labels()}


def space_from_dict(data: Any, origin: str = "<input>") -> StateSpace:
    _validate(data, "state_space", origin)
    return StateSpace.from_alphabets(data["alphabets"])


def table_from_dict(data: Any, origin: str = "<input>") -> PositiveTable:
    _validate(data, "table", origin)
    return PositiveTable(StateSpace.from_alphabets(data["space"]["alphabets"]), data["values"])


def distribution_from_dict(data: Any, origin: str = "<input>") -> JointDistribution:
    """A distribution; tables without ``"normalized": true`` are normalised explicitly."""
    table = table_from_dict(data, origin)
    if data.get("normalized", False):
        return JointDistribution(table)
    return JointDistribution.normalize(table)


def factor_system_from_dict(space: StateSpace, data: Any, origin: str = "<input>") -> FactorSystem:
    _validate(data, "factor_system", origin)
    return FactorSystem.from_dict(space, data)


def graph_from_dict(data: Any, origin: str = "<input>") -> Graph:
    _validate(data, "graph", origin)
    return Graph.of(data["vertices"], data["edges"])


def load(kind: str, path: Union[str, Path]):
    """Read and build one object of ``kind`` from a JSON file."""
    data = read_json(path)
    builders = {
        "covering": covering_from_dict,
        "state_space": space_from_dict,
        "table": table_from_dict,
        "distribution": distribution_from_dict,
        "graph": graph_from_dict,
    }
    return builders[kind](data, str(path))


def write_schemas(directory: Union[str, Path]) -> None:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for name, schema in SCHEMAS.items():
        (out / f"{name}.schema.json").write_text(json.dumps(schema, indent=2) + "\n")
