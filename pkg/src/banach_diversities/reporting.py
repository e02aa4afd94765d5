"""Provides the deterministic JSON encoding shared by the sampling harnesses and the command-line interface.

Documents are encoded with sorted keys and shortest round-trip float representations, so that identical inputs
produce byte-identical output. Non-finite floats are encoded as null.

Floats are written with repr(), the shortest decimal string that parses back to the same double. This carries the
same information as a fixed 17 significant digit format: json.loads() restores every finite value bit for bit, and
the output never contains the trailing noise digits of the fixed format, such as 0.10000000000000001.
"""

import json
from enum import Enum
from typing import Any
from pathlib import Path
from dataclasses import fields, is_dataclass

import numpy as np

from .geometry import SymmetricPolytope


def to_jsonable(value: Any) -> Any:
    """Recursively converts the input value into plain JSON-compatible Python objects.

    Dataclasses become dictionaries of their fields, bodies use their {"dim", "generators"} description, numpy arrays
    and scalars become lists and numbers, enumerations become their values, tuples become lists, mapping keys become
    strings, and non-finite floats become None.
    """
    if isinstance(value, SymmetricPolytope):
        return to_jsonable(value.to_dict())
    if is_dataclass(value) and not isinstance(value, type):
        return {field.name: to_jsonable(getattr(value, field.name)) for field in fields(value)}
    if isinstance(value, Enum):
        return to_jsonable(value.value)
    if isinstance(value, dict):
        return {_key(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        return number if np.isfinite(number) else None
    if isinstance(value, Path):
        return str(value)
    return value


def _key(key: Any) -> str:
    """Converts a mapping key to its string form. Tuple keys are joined with commas."""
    if isinstance(key, tuple):
        return ",".join(str(part) for part in key)
    if isinstance(key, Enum):
        return str(key.value)
    return str(key)


def dumps(value: Any, *, indent: int | None = 2) -> str:
    """Encodes the input value as a deterministic JSON document.

    Notes:
        Finite floats round-trip exactly through json.loads(). Non-finite floats become null.
    """
    return json.dumps(to_jsonable(value), sort_keys=True, indent=indent, ensure_ascii=False, allow_nan=False)


def dump_lines(values: list[Any]) -> str:
    """Encodes the input values as JSON lines, one compact document per line."""
    return "".join(dumps(value, indent=None) + "\n" for value in values)
