"""Deterministic tabular output.

Numbers are printed with 12 significant digits, switching to scientific
notation below 1e-4 and at or above 1e6 in magnitude so that round-tripping
through text never loses more than the last digit.  An exact zero prints as
"0" (the sweeps produce it from exact cancellations, and distinguishing it
from small-but-nonzero values is useful); missing values print as "nan".
Line endings are LF and provenance is carried in leading comment lines, so
equal inputs always produce byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import IoError, ValidationError


@dataclass(frozen=True)
class ResultTable:
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    provenance: tuple[tuple[str, str], ...] = ()
    diagnostics: tuple[str, ...] = ()

    def __post_init__(self):
        width = len(self.columns)
        if any(len(row) != width for row in self.rows):
            raise ValidationError("ragged table: row width differs from header")


def format_cell(x: float) -> str:
    """Format one numeric cell per the contract above."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0:
        return "0"
    ax = abs(x)
    if ax < 1e-4 or ax >= 1e6:
        return f"{x:.11e}"
    return f"{x:.12g}"


def emit_table(table: ResultTable, format: str = "csv") -> bytes:
    """Serialize the table; only "csv" is supported."""
    if format != "csv":
        raise IoError(f"unsupported output format {format!r}")
    lines = [f"# {key}={value}" for key, value in table.provenance]
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(format_cell(float(x)) for x in row))
    return ("\n".join(lines) + "\n").encode("utf-8")
