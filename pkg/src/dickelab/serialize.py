"""Deterministic JSON emission for reports and state files.

Floats are written with 17 significant digits so that every IEEE-754 double
round-trips bit-exactly through the text form, and the same document always
serializes to the same bytes.
"""

from __future__ import annotations

import json
import math

import numpy as np


def format_float(value: float) -> str:
    """Render a finite double as a JSON decimal that parses back to a float."""
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite value {value!r}")
    text = format(value, ".17g")
    if not any(c in text for c in ".eE"):
        # "-0" or "42" would reload as ints; force a float literal.
        text += ".0"
    return text


def _coerce(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value


def _encode(value, pieces: list[str], indent: str, level: int) -> None:
    value = _coerce(value)
    pad = indent * (level + 1)
    close_pad = indent * level
    if value is None:
        pieces.append("null")
    elif isinstance(value, bool):
        pieces.append("true" if value else "false")
    elif isinstance(value, int):
        pieces.append(str(value))
    elif isinstance(value, float):
        pieces.append(format_float(value))
    elif isinstance(value, str):
        pieces.append(json.dumps(value))
    elif isinstance(value, (list, tuple)):
        if not value:
            pieces.append("[]")
            return
        pieces.append("[\n")
        for i, item in enumerate(value):
            pieces.append(pad)
            _encode(item, pieces, indent, level + 1)
            pieces.append(",\n" if i + 1 < len(value) else "\n")
        pieces.append(close_pad + "]")
    elif isinstance(value, dict):
        if not value:
            pieces.append("{}")
            return
        pieces.append("{\n")
        items = list(value.items())
        for i, (key, item) in enumerate(items):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            pieces.append(pad + json.dumps(key) + ": ")
            _encode(item, pieces, indent, level + 1)
            pieces.append(",\n" if i + 1 < len(items) else "\n")
        pieces.append(close_pad + "}")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__} to JSON")


def dumps(document) -> str:
    """Serialize ``document`` to pretty-printed, reproducible JSON."""
    pieces: list[str] = []
    _encode(document, pieces, "  ", 0)
    return "".join(pieces) + "\n"


def complex_pair(value: complex) -> list[float]:
    """A complex number as the ``[re, im]`` pair used by all wire formats."""
    value = complex(value)
    return [value.real, value.imag]
