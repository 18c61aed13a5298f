"""Reading data matrices from CSV and rendering reports and study tables.

CSV data files hold one sample per row, one coordinate per column, comma
separated with '.' decimal points.  A single non-numeric first line is
treated as a header.  Ragged rows, empty cells and unparsable or
non-finite values are hard errors that name the offending row and column.

Numeric output uses ``repr`` of the float, the shortest string that parses
back to exactly the same double, so JSON and CSV reports round-trip.
"""

from __future__ import annotations

import csv
import json
from typing import Any

import numpy as np

from .errors import ValidationError

STUDY_CSV_HEADER = (
    "method,n,m,p,distribution,scenario,m_signal,rejection_rate,mc_stderr"
)

REPORT_CSV_COLUMNS = (
    "method",
    "problem",
    "statistic",
    "p_value",
    "reject",
    "alpha",
    "n",
    "m",
    "p",
    "tau_sq",
    "bandwidth",
    "p_max",
    "p_sum",
)


def read_matrix_csv(path: str) -> np.ndarray:
    """Parse a CSV file into a samples-by-coordinates float matrix."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [(i, row) for i, row in enumerate(csv.reader(fh), start=1)]
    rows = [(i, row) for i, row in rows if any(cell.strip() for cell in row)]
    if not rows:
        raise ValidationError(f"{path}: no data rows found")

    start = 1 if _looks_like_header(rows[0][1]) else 0
    data_rows = rows[start:]
    if not data_rows:
        raise ValidationError(f"{path}: header only, no data rows")

    width = len(data_rows[0][1])
    values = np.empty((len(data_rows), width))
    for out_i, (line_no, row) in enumerate(data_rows):
        if len(row) != width:
            raise ValidationError(
                f"{path}: row {line_no} has {len(row)} columns, expected {width}"
            )
        for j, cell in enumerate(row):
            text = cell.strip()
            if not text:
                raise ValidationError(
                    f"{path}: missing value at row {line_no}, column {j + 1}"
                )
            try:
                v = float(text)
            except ValueError:
                raise ValidationError(
                    f"{path}: could not parse {text!r} at row {line_no}, "
                    f"column {j + 1}"
                ) from None
            if not np.isfinite(v):
                raise ValidationError(
                    f"{path}: non-finite value at row {line_no}, column {j + 1}"
                )
            values[out_i, j] = v
    return values


def _looks_like_header(row: list[str]) -> bool:
    for cell in row:
        try:
            float(cell.strip())
        except ValueError:
            return True
    return False


def fmt(value: Any) -> str:
    """Render a value for CSV: full-precision floats, bare ints, lowercase bools."""
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def report_csv_text(records: list[dict[str, Any]]) -> str:
    """Render test-result records (one per method) as CSV."""
    lines = [",".join(REPORT_CSV_COLUMNS)]
    for rec in records:
        meta = rec.get("meta", {})
        row = []
        for col in REPORT_CSV_COLUMNS:
            if col in rec:
                row.append(fmt(rec[col]))
            else:
                row.append(fmt(meta.get(col)))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def report_json_text(records: list[dict[str, Any]]) -> str:
    return json.dumps({"results": records}, indent=2) + "\n"


def study_csv_text(study: dict[str, Any]) -> str:
    """Render a size table or power curve as CSV with the fixed header."""
    lines = [STUDY_CSV_HEADER]
    for cell in study["cells"]:
        lines.append(
            ",".join(
                fmt(cell[key])
                for key in (
                    "method",
                    "n",
                    "m",
                    "p",
                    "distribution",
                    "scenario",
                    "m_signal",
                    "rejection_rate",
                    "mc_stderr",
                )
            )
        )
    return "\n".join(lines) + "\n"


def study_json_text(study: dict[str, Any]) -> str:
    return json.dumps(study, indent=2) + "\n"
