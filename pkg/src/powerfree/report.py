"""Canonical JSON for reports.

Keys are sorted, floats use the shortest round-tripping repr, and the
output ends in a newline, so ``dumps(loads(dumps(x))) == dumps(x)``.
Numbers that came from a printed table are wrapped as
``{"value": v, "provenance": "paper"}``; computed predictions carry
``"derived"`` (or a more specific tag).
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Mapping, Sequence

__all__ = ["PAPER", "DERIVED", "tagged", "dumps", "loads", "without_runtime", "csv_text"]

PAPER = "paper"
DERIVED = "derived"

RUNTIME_KEY = "runtime"


def tagged(value: Any, provenance: str) -> dict:
    return {"provenance": provenance, "value": value}


def _clean(obj: Any) -> Any:
    if isinstance(obj, float):
        if math.isnan(obj):
            raise ValueError("NaN is not allowed in reports")
        return obj
    if isinstance(obj, Mapping):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return _clean(obj.item())
    if hasattr(obj, "numerator") and hasattr(obj, "denominator") and not isinstance(obj, int):
        return f"{obj.numerator}/{obj.denominator}"
    return obj


def dumps(obj: Any) -> str:
    """Canonical serialisation; infinities are written as ``Infinity``."""
    return json.dumps(_clean(obj), sort_keys=True, indent=2, ensure_ascii=True, allow_nan=True) + "\n"


def loads(text: str) -> Any:
    return json.loads(text)


def without_runtime(obj: Any) -> Any:
    """Copy of ``obj`` with every ``runtime`` entry removed (timings, worker counts)."""
    if isinstance(obj, Mapping):
        return {k: without_runtime(v) for k, v in obj.items() if k != RUNTIME_KEY}
    if isinstance(obj, list):
        return [without_runtime(v) for v in obj]
    return obj


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()
