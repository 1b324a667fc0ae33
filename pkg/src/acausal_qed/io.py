"""CSV and JSON helpers shared by the command line tools.

CSV files are comma separated with one header row, LF line endings and
floats written with 17 significant digits so doubles round-trip exactly.
"""
from __future__ import annotations

import csv
import io
import json
import sys

import numpy as np


class ConfigError(ValueError):
    """A scenario file is malformed or has unknown keys."""


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    text = render_csv(header, rows)
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(text)


def read_csv_columns(path, required) -> dict:
    """Read numeric columns by header name."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ConfigError(f"{path}: empty CSV file")
        missing = [c for c in required if c not in reader.fieldnames]
        if missing:
            raise ConfigError(f"{path}: missing column(s) {', '.join(missing)}")
        cols = {c: [] for c in required}
        for lineno, row in enumerate(reader, start=2):
            try:
                for c in required:
                    cols[c].append(float(row[c]))
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{path}:{lineno}: {exc}") from None
    return {c: np.asarray(v) for c, v in cols.items()}


def load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return doc


def take(doc: dict, where: str, required=(), optional=()) -> dict:
    """Return ``doc`` after rejecting unknown keys and checking required ones."""
    if not isinstance(doc, dict):
        raise ConfigError(f"{where}: expected an object")
    allowed = set(required) | set(optional)
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(unknown)}")
    missing = [k for k in required if k not in doc]
    if missing:
        raise ConfigError(f"{where}: missing key(s) {', '.join(missing)}")
    return doc


def parse_complex(value, where: str) -> complex:
    """Accept ``x``, ``[re, im]`` or ``"re,im"``."""
    try:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return complex(value)
        if isinstance(value, str):
            parts = [p.strip() for p in value.split(",")]
            if len(parts) == 1:
                return complex(float(parts[0]))
            if len(parts) == 2:
                return complex(float(parts[0]), float(parts[1]))
        elif isinstance(value, (list, tuple)) and len(value) == 2:
            return complex(float(value[0]), float(value[1]))
    except (TypeError, ValueError):
        pass
    raise ConfigError(f"{where}: cannot read {value!r} as a complex number")
