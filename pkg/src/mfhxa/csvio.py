"""Reading and writing the CSV/TSV files the tools exchange.

Input CSV: UTF-8, '.' decimal separator, one or two numeric columns, an
optional header row and an optional leading date/time column (kept as
opaque text and ignored by the math). Lines starting with '#' are
metadata comments and are skipped on read.
"""

from __future__ import annotations

import numpy as np

from .errors import CsvFormatError
from .series import TimeSeries


def format_number(x) -> str:
    """Numbers are printed with 12 significant digits."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".12g")


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _split(line: str) -> list[str]:
    if "\t" in line:
        return [c.strip() for c in line.split("\t")]
    if "," in line:
        return [c.strip() for c in line.split(",")]
    return [line.strip()]


def read_columns(path) -> tuple[list[str] | None, list[np.ndarray], list[str]]:
    """Parse a CSV file into (dates, numeric columns, column names).

    `dates` is None when there is no leading non-numeric column. Column
    names come from the header row when present, else col1, col2, ...
    """
    rows: list[tuple[int, list[str]]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            rows.append((lineno, _split(line)))
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")

    # shape is inferred from the first data row (the second row when a
    # header is present, which the reference row itself reveals)
    _, ref = rows[1] if len(rows) > 1 else rows[0]
    has_dates = not _is_number(ref[0])
    first_num = 1 if has_dates else 0
    ncols = len(ref)
    if ncols - first_num < 1 or not any(
        _is_number(c) for c in ref[first_num:]
    ):
        raise CsvFormatError(f"{path}: no numeric columns found")

    # header = first row non-numeric in a position that is numeric in data
    _, first = rows[0]
    has_header = len(rows) > 1 and any(
        not _is_number(first[i]) for i in range(first_num, min(len(first), ncols))
    )
    names = (
        [c for c in first[first_num:]]
        if has_header
        else [f"col{i + 1}" for i in range(ncols - first_num)]
    )

    dates: list[str] | None = [] if has_dates else None
    cols: list[list[float]] = [[] for _ in range(ncols - first_num)]
    for lineno, cells in rows[1:] if has_header else rows:
        if len(cells) != ncols:
            raise CsvFormatError(
                f"{path}:{lineno}: expected {ncols} fields, got {len(cells)}"
            )
        if dates is not None:
            dates.append(cells[0])
        for j in range(first_num, ncols):
            cell = cells[j]
            if not _is_number(cell):
                raise CsvFormatError(f"{path}:{lineno}: non-numeric value {cell!r}")
            cols[j - first_num].append(float(cell))
    return dates, [np.asarray(c) for c in cols], names


def read_series(path, column: int = 1) -> TimeSeries:
    """Read one numeric column (1-based index among numeric columns)."""
    _, cols, names = read_columns(path)
    if not 1 <= column <= len(cols):
        raise CsvFormatError(
            f"{path}: column {column} requested but file has {len(cols)} numeric column(s)"
        )
    return TimeSeries(cols[column - 1], names[column - 1])


def write_csv(path, comments: list[str], names: list[str], columns, dates=None) -> None:
    """Write '#'-prefixed comment lines, a header row, then comma-separated data."""
    columns = [np.asarray(c) for c in columns]
    n = len(columns[0])
    with open(path, "w", encoding="utf-8") as fh:
        for c in comments:
            fh.write(f"# {c}\n")
        head = (["date"] if dates is not None else []) + list(names)
        fh.write(",".join(head) + "\n")
        for i in range(n):
            cells = [dates[i]] if dates is not None else []
            cells += [format_number(col[i]) for col in columns]
            fh.write(",".join(cells) + "\n")


def write_table(path, comments: list[str], names: list[str], rows) -> None:
    """Write a tab-separated table with '#'-prefixed metadata comments."""
    with open(path, "w", encoding="utf-8") as fh:
        for c in comments:
            fh.write(f"# {c}\n")
        fh.write("\t".join(names) + "\n")
        for row in rows:
            fh.write("\t".join(_cell(v) for v in row) + "\n")


def _cell(v) -> str:
    if isinstance(v, str):
        return v.replace("\t", " ")
    return format_number(v)
