"""Deterministic JSON/CSV writers.

Floats are rendered with 17 significant digits (enough to round-trip a
double), keys keep insertion order, and no timestamps or environment data
enter the files, so repeated runs with the same configuration are
byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path


def fmt_float(x) -> str:
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite value in output: {x}")
        s = format(x, ".17g")
        return s
    return str(x)


def _render(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = []
        for k, v in obj.items():
            if not isinstance(k, str):
                k = str(k)
            items.append(f"{json.dumps(k)}: {_render(v)}")
        return "{" + ", ".join(items) + "}"
    if hasattr(obj, "item"):  # numpy scalar
        return _render(obj.item())
    raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps_json(obj) -> str:
    return _render(obj) + "\n"


def write_json(path, obj):
    Path(path).write_text(dumps_json(obj), encoding="utf-8")


def write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt_float(c) if isinstance(c, float) else str(c) for c in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
