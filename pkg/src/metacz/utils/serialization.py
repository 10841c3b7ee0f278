"""Deterministic text rendering of results: fixed-precision floats, CSV and JSON."""

import csv
import hashlib
import io
import json
from typing import Any, Iterable, Sequence

SIGNIFICANT_DIGITS = 12
ZERO_THRESHOLD = 1e-15


def clean_float(value: float) -> float:
    """Map numerically dead values (and -0.0) to 0.0."""
    value = float(value)
    if abs(value) < ZERO_THRESHOLD:
        return 0.0
    return value


def format_float(value: float) -> str:
    """
    Fixed-width text with 12 significant digits, e.g. ' 1.11111111111e-01'.

    Positive values carry a leading space so columns line up with negatives.
    """
    return f"{clean_float(value): .{SIGNIFICANT_DIGITS - 1}e}"


def json_float(value: float) -> float:
    """Float rounded to 12 significant digits for JSON output."""
    return float(f"{clean_float(value):.{SIGNIFICANT_DIGITS}g}")


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """
    Render rows as CSV text with a header row.

    Float cells go through ``format_float``; everything else through ``str``.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(cell) if isinstance(cell, float) else str(cell) for cell in row]
        )
    return buffer.getvalue()


def round_floats(document: Any) -> Any:
    """Copy of a JSON-like document with every float passed through ``json_float``."""
    if isinstance(document, bool):
        return document
    if isinstance(document, float):
        return json_float(document)
    if isinstance(document, dict):
        return {key: round_floats(value) for key, value in document.items()}
    if isinstance(document, (list, tuple)):
        return [round_floats(value) for value in document]
    return document


def render_json(document: Any) -> str:
    """Stable, indented JSON text ending in a newline, floats at 12 digits."""
    return json.dumps(round_floats(document), indent=2) + "\n"


def checksum(text: str) -> str:
    """sha256 hex digest of ``text`` encoded as UTF-8."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
