"""CSV / JSON emission of experiment and comparison tables."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .harness import ExperimentReport, sort_reports

REPORT_COLUMNS = (
    "n",
    "beta",
    "b0",
    "delta",
    "delta0",
    "l",
    "n_centers",
    "diam_q",
    "cond_2norm",
    "norm_f",
    "sup_error",
    "bound_value",
    "log10_legacy_bound",
    "margin_ratio",
    "status",
)


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _json_value(v):
    # JSON has no inf/nan literals
    if isinstance(v, float) and not math.isfinite(v):
        return format(v, ".17g")
    return v


def render_rows(rows: list[dict], columns, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([format_value(row[c]) for c in columns])
        return buf.getvalue()
    if fmt == "json":
        payload = [{c: _json_value(row[c]) for c in columns} for row in rows]
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def render_reports(reports: list[ExperimentReport], fmt: str = "csv") -> str:
    if not reports:
        raise ValueError("no reports to emit")
    rows = [r.as_dict() for r in sort_reports(reports)]
    return render_rows(rows, REPORT_COLUMNS, fmt)


def emit_report(reports: list[ExperimentReport], path, fmt: str = "csv") -> Path:
    text = render_reports(reports, fmt)
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path
