"""JSON run reports (schema version 1).

Floats are written in exponent form with 17 significant digits so that every value
round-trips exactly; keys are sorted so two runs on the same input give
byte-identical output apart from the ``timing`` block.
"""

from __future__ import annotations

import json
import math

SCHEMA = "bisfptas.report"
SCHEMA_VERSION = 1


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return format(obj, ".16e")
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(obj[k], indent, level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(report: dict, indent: int = 2) -> str:
    return _encode(report, indent, 0) + "\n"


def make_report(command: str, argv: list[str], result: dict, graph_info: dict | None = None,
                seed: int | None = None, wall_time: float | None = None) -> dict:
    report = {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "argv": list(argv),
        "seed": seed,
        "result": result,
    }
    if graph_info is not None:
        report["input"] = graph_info
    if wall_time is not None:
        report["timing"] = {"wall_time_s": wall_time}
    return report


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k != "timing"}
