"""Serialization helpers shared by the CLI and report objects."""

from __future__ import annotations

import io
import json
from fractions import Fraction


def fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, compact separators, newline-terminated."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def csv_text(headers: list[str], rows: list[list]) -> str:
    import csv

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(headers)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def plain(obj):
    """Recursively coerce payloads to plain JSON types (Fractions to 'p/q')."""
    import numpy as np

    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj
