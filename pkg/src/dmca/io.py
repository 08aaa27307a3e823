"""CSV reading/writing and atomic file output."""

from __future__ import annotations

import csv
import io
import math
import os
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import ParseError

GEN_HEADER = ("t", "x", "y")
COEFF_HEADER = ("lambda", "rho", "f2_x", "f2_y", "f2_xy", "n_residuals", "status")
GRID_HEADER = (
    "d", "rho", "lambda", "T", "q025", "q50", "q975", "mean", "stddev", "reps_used", "status",
)


def fmt(value) -> str:
    """Shortest text that parses back to exactly the same double."""
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    v = float(value)
    if not math.isfinite(v):
        raise ValueError(f"refusing to serialise non-finite value {v!r}")
    return repr(v)


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([c if isinstance(c, str) else fmt(c) for c in row])
    return buf.getvalue()


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and an atomic rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_pair(
    source: str | os.PathLike | io.TextIOBase, columns: Sequence[str | int] | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Read two increment columns from a CSV file.

    A first row containing any non-numeric field is taken as a header. By
    default the last two columns are used, so both plain two-column files and
    ``t,x,y`` files from ``gen`` work unchanged. ``columns`` picks two columns
    by header name or 1-based position instead.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, newline="") as fh:
            rows = list(csv.reader(fh))
    else:
        rows = list(csv.reader(source))
    numbered = [(i + 1, [c.strip() for c in r]) for i, r in enumerate(rows) if any(c.strip() for c in r)]
    if not numbered:
        raise ParseError(1, None, "no data rows")
    header = None
    if not all(_is_number(c) for c in numbered[0][1]):
        header = numbered[0][1]
        numbered = numbered[1:]
        if not numbered:
            raise ParseError(2, None, "header but no data rows")
    width = len(header) if header else len(numbered[0][1])
    if width < 2:
        raise ParseError(numbered[0][0], None, "need at least two columns")
    idx = _resolve_columns(columns, header, width)
    x = np.empty(len(numbered))
    y = np.empty(len(numbered))
    for k, (line, row) in enumerate(numbered):
        if len(row) != width:
            raise ParseError(line, None, f"expected {width} columns, found {len(row)}")
        for out, j in ((x, idx[0]), (y, idx[1])):
            try:
                v = float(row[j])
            except ValueError:
                raise ParseError(line, j + 1, f"not a number: {row[j]!r}") from None
            if not math.isfinite(v):
                raise ParseError(line, j + 1, f"non-finite value {row[j]!r}")
            out[k] = v
    return x, y


def _resolve_columns(columns, header, width) -> tuple[int, int]:
    if columns is None:
        return width - 2, width - 1
    if len(columns) != 2:
        raise ParseError(1, None, f"need exactly two columns, got {list(columns)!r}")
    out = []
    for c in columns:
        if isinstance(c, int) or (isinstance(c, str) and c.isdigit()):
            j = int(c) - 1
        elif header is not None and c in header:
            j = header.index(c)
        else:
            raise ParseError(1, None, f"unknown column {c!r}")
        if not 0 <= j < width:
            raise ParseError(1, None, f"column {c!r} out of range 1..{width}")
        out.append(j)
    return out[0], out[1]
