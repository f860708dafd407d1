"""JSON encodings for matrices, density operators and measurements.

Matrix: ``{"rows": r, "cols": c, "data": [[re, im], ...]}`` in row-major
order. A density operator is the same object with ``"kind": "density"``. A
measurement is a list of ``{"value": v, "proj": <matrix>}``.
"""

from __future__ import annotations

import math
from numbers import Real

import numpy as np

from .cxmat import cmatrix
from .errors import SchemaError
from .pmeas import MeasureOutcome, ProjectiveMeasurement, validate_pm
from .qstate import DensityOperator

SIG_DIGITS = 12


def fmt(x: float) -> float:
    """Round to 12 significant digits; normalizes -0.0 to 0.0."""
    y = float(f"{float(x):.{SIG_DIGITS}g}")
    return y + 0.0


def rounded(obj):
    """Recursively apply :func:`fmt` to every float in a JSON-ready structure."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, float):
        return fmt(obj)
    if isinstance(obj, dict):
        return {k: rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def matrix_to_json(a: np.ndarray) -> dict:
    rows, cols = a.shape
    return {
        "rows": rows,
        "cols": cols,
        "data": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def _is_num(x) -> bool:
    return isinstance(x, Real) and not isinstance(x, bool) and math.isfinite(x)


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise SchemaError("matrix must be a JSON object")
    missing = {"rows", "cols", "data"} - obj.keys()
    if missing:
        raise SchemaError(f"matrix object is missing keys {sorted(missing)}")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    for name, v in (("rows", rows), ("cols", cols)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise SchemaError(f"'{name}' must be a positive integer, got {v!r}")
    if not isinstance(data, list) or len(data) != rows * cols:
        n = len(data) if isinstance(data, list) else type(data).__name__
        raise SchemaError(f"'data' must list rows*cols = {rows * cols} entries, got {n}")
    entries = []
    for k, pair in enumerate(data):
        if not (isinstance(pair, list) and len(pair) == 2 and all(_is_num(x) for x in pair)):
            raise SchemaError(f"data[{k}] must be a pair [re, im] of finite numbers, got {pair!r}")
        entries.append(complex(pair[0], pair[1]))
    return cmatrix(np.array(entries).reshape(rows, cols))


def density_to_json(rho: DensityOperator) -> dict:
    return {"kind": "density", **matrix_to_json(rho.mat)}


def density_from_json(obj) -> DensityOperator:
    if isinstance(obj, dict) and obj.get("kind", "density") != "density":
        raise SchemaError(f"expected kind 'density', got {obj.get('kind')!r}")
    return DensityOperator(matrix_from_json(obj))


def measurement_to_json(m: ProjectiveMeasurement) -> list:
    return [{"value": o.value, "proj": matrix_to_json(o.proj)} for o in m.outcomes]


def measurement_from_json(obj) -> ProjectiveMeasurement:
    if not isinstance(obj, list) or not obj:
        raise SchemaError("measurement must be a non-empty JSON array")
    outcomes = []
    for k, item in enumerate(obj):
        if not isinstance(item, dict) or not _is_num(item.get("value")) or "proj" not in item:
            raise SchemaError(f"measurement[{k}] must be an object with a finite 'value' and a 'proj'")
        outcomes.append(MeasureOutcome(item["value"], matrix_from_json(item["proj"])))
    return validate_pm(outcomes[0].proj.shape[0], outcomes)
