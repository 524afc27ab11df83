"""CSV and JSON writers for task results."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np


@dataclass
class TaskResult:
    task: str
    columns: dict
    summary: str
    scalars: dict = field(default_factory=dict)

    def n_rows(self) -> int:
        return len(next(iter(self.columns.values()))) if self.columns else 0


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer, int)) and not isinstance(x, bool):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def emit_csv(result: TaskResult, path) -> None:
    """Header row, then one row per sample; 12 significant digits, ``\\n`` line ends."""
    names = list(result.columns)
    rows = zip(*(result.columns[n] for n in names))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(names)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def emit_json(result: TaskResult, path, meta: dict) -> None:
    """One object: ``meta`` (resolved config) and ``data`` (columnar arrays)."""
    doc = {
        "meta": _jsonable(meta),
        "summary": _jsonable(result.scalars),
        "data": _jsonable(result.columns),
    }
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
