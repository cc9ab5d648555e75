"""CSV helpers shared by the exporters."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import IO, Iterable, Sequence


def format_float(x: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(x), ".17g")


def _cell(v) -> str:
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def write_csv(
    target: str | Path | IO[str], header: Sequence[str], rows: Iterable[Sequence]
) -> None:
    if isinstance(target, (str, Path)):
        with open(target, "w", newline="") as fh:
            write_csv(fh, header, rows)
        return
    writer = csv.writer(target, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    write_csv(buf, header, rows)
    return buf.getvalue()
