"""Deterministic JSON and CSV output for experiment reports."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from fractions import Fraction
from pathlib import Path

PLACE_COLUMNS = [
    "degree", "place", "a_P_phi1", "a_P_phi2", "norm1", "norm2",
    "symbol", "equal_trace", "equal_charpoly",
]
CHARPOLY_COLUMNS = ["degree", "place", "trace", "norm", "verified"]


def _plain(obj):
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return _plain(obj.to_dict())
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, float):
        # fixed rounding keeps reports byte-stable across platforms
        return round(obj, 12)
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    return str(obj)


def to_json(report):
    return json.dumps(_plain(report), indent=2, sort_keys=True) + "\n"


def write_json(report, path):
    Path(path).write_text(to_json(report), encoding="utf-8")


def rows_to_csv(rows, columns):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for row in rows:
        w.writerow({k: _csv_cell(row.get(k)) for k in columns})
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def write_csv(rows, columns, path):
    Path(path).write_text(rows_to_csv(rows, columns), encoding="utf-8")
