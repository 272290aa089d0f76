"""CSV / JSON emission.

CSV layout: a header line, a ``#``-prefixed ``key=value`` parameter echo,
then one row per sample with floats at 17 significant digits.  JSON
carries the same columns (snake_case names) plus the meta block; NaN
becomes ``null``.
"""

import csv
import io
import json
import math

import numpy as np

__all__ = ["format_float", "render_csv", "render_json", "write_table", "flatten_meta"]


def format_float(x):
    return "%.17g" % x


def _cell(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_float(float(value))


def flatten_meta(meta, prefix=""):
    """Flatten nested dicts to ``a.b=value`` pairs in insertion order."""
    out = []
    for key, value in meta.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.extend(flatten_meta(value, name + "."))
        elif isinstance(value, (list, tuple)):
            out.append((name, ";".join(_cell(v) for v in value)))
        elif value is None:
            out.append((name, ""))
        else:
            out.append((name, _cell(value)))
    return out


def _lengths(columns):
    lengths = {len(v) for v in columns.values()}
    if len(lengths) > 1:
        raise ValueError(f"columns have unequal lengths: {sorted(lengths)}")
    return lengths.pop() if lengths else 0


def render_csv(columns, meta):
    n = _lengths(columns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(columns))
    buf.write("# " + " ".join(f"{k}={v}" for k, v in flatten_meta(meta)) + "\n")
    cols = list(columns.values())
    for i in range(n):
        writer.writerow([_cell(c[i]) for c in cols])
    return buf.getvalue()


def _json_value(value):
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_json_value(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return None if math.isnan(value) or math.isinf(value) else value
    return value


def render_json(columns, meta):
    _lengths(columns)
    doc = {"meta": _json_value(meta), "columns": {k: _json_value(v) for k, v in columns.items()}}
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def write_table(path, columns, meta, fmt="csv"):
    if fmt == "csv":
        text = render_csv(columns, meta)
    elif fmt == "json":
        text = render_json(columns, meta)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path
