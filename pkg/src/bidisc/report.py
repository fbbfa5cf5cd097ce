"""Check rows and deterministic JSON/CSV report serialization.

Floats are written with 17 significant digits and object keys keep their
insertion order, so identical inputs give byte-identical documents.
"""
import csv
import io
import json
import math
import numpy as np


class CheckRow:
    """One verified identity: measured ``value`` against ``tolerance``.

    ``passed`` defaults to ``value <= tolerance``; ``None`` marks an item
    that is reported but not evaluated.
    """

    def __init__(self, name, paper_anchor, value, tolerance, window=None, passed="auto", context=None):
        self.name = name
        self.paper_anchor = paper_anchor
        self.value = value
        self.tolerance = tolerance
        self.window = window
        self.context = context
        if passed == "auto":
            passed = value is not None and tolerance is not None and bool(value <= tolerance)
        self.passed = passed

    def __repr__(self):
        return f"CheckRow({self.name!r}, value={self.value!r}, tol={self.tolerance!r}, pass={self.passed})"

    def to_json(self):
        out = {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "value": self.value,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.window is not None:
            out["window"] = self.window
        if self.context:
            out["context"] = self.context
        return out


def summarize(rows):
    failed = [r for r in rows if r.passed is False]
    return {
        "total": len(rows),
        "passed": sum(1 for r in rows if r.passed is True),
        "failed": len(failed),
        "not_evaluated": sum(1 for r in rows if r.passed is None),
        "failing": [r.name for r in failed],
    }


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        return format(x, ".17g")
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode([obj.real, obj.imag], indent, level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if hasattr(obj, "to_json"):
        return _encode(obj.to_json(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=2):
    return _encode(obj, indent, 0) + "\n"


def emit_report(command, rows, payload=None, meta=None):
    """Assemble the report document (a dict) in a fixed field order."""
    doc = {"command": command}
    if meta:
        doc["meta"] = meta
    if payload is not None:
        doc["result"] = payload
    doc["checks"] = [r.to_json() for r in rows]
    doc["summary"] = summarize(rows)
    return doc


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "paper_anchor", "value", "tolerance", "pass"])
    for r in rows:
        w.writerow([
            r.name,
            r.paper_anchor,
            "" if r.value is None else format(float(r.value), ".17g"),
            "" if r.tolerance is None else format(float(r.tolerance), ".17g"),
            {True: "pass", False: "fail", None: "not evaluated"}[r.passed],
        ])
    return buf.getvalue()
