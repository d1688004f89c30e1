"""Matrix ingestion (JSON with complex literals, CSV for real matrices)
and JSON/CSV emission helpers shared by the reports and the CLI."""

from __future__ import annotations

import json
import re

import numpy as np

from .core import SquareOperator
from .errors import InvalidInput

_COMPLEX_RE = re.compile(
    r"^\s*(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"(?:\s*(?P<sign>[+-])\s*(?P<im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*i)?\s*$"
)
_PURE_IM_RE = re.compile(
    r"^\s*(?P<sign>[+-]?)(?P<im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*i\s*$"
)


def parse_complex_literal(s: str) -> complex:
    """Parse 'a', 'a+bi', 'a-bi' (and bare 'bi') literals."""
    if isinstance(s, (int, float)):
        return complex(s)
    m = _PURE_IM_RE.match(s)
    if m:
        mag = float(m.group("im")) if m.group("im") else 1.0
        return complex(0.0, -mag if m.group("sign") == "-" else mag)
    m = _COMPLEX_RE.match(s)
    if not m:
        raise InvalidInput(f"cannot parse complex literal {s!r}")
    re_part = float(m.group("re"))
    if m.group("im") is None:
        return complex(re_part, 0.0)
    im = float(m.group("im"))
    return complex(re_part, -im if m.group("sign") == "-" else im)


def format_complex_literal(z: complex) -> str:
    if z.imag == 0.0:
        return format_float(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{format_float(z.real)}{sign}{format_float(abs(z.imag))}i"


def format_float(x: float) -> str:
    """17 significant digits, '.' decimal, locale-free."""
    return f"{float(x):.17g}"


def load_matrix_json(path: str) -> SquareOperator:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
        raise InvalidInput(f"{path}: expected an object with 'dim' and 'entries'")
    n = doc["dim"]
    rows = doc["entries"]
    if not isinstance(n, int) or n < 1 or len(rows) != n:
        raise InvalidInput(f"{path}: 'entries' must hold {n} rows")
    data = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InvalidInput(f"{path}: row {i} has {len(row)} fields, wanted {n}")
        for j, cell in enumerate(row):
            data[i, j] = parse_complex_literal(cell)
    return SquareOperator.from_array(data)


def load_matrix_csv(path: str) -> SquareOperator:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(tok) for tok in line.split(",")])
            except ValueError as exc:
                raise InvalidInput(f"{path}: bad CSV field ({exc})") from exc
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise InvalidInput(f"{path}: CSV must hold an n x n real matrix")
    return SquareOperator.from_array(np.array(rows, dtype=float))


def load_matrix(path: str) -> SquareOperator:
    if path.endswith(".json"):
        return load_matrix_json(path)
    if path.endswith(".csv"):
        return load_matrix_csv(path)
    raise InvalidInput(f"unrecognized matrix format: {path} (want .json or .csv)")


def save_matrix_json(path: str, a: SquareOperator) -> None:
    doc = {
        "dim": a.dim,
        "entries": [[format_complex_literal(complex(z)) for z in row]
                    for row in a.entries],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def complex_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def matrix_to_json(a: np.ndarray) -> list:
    a = np.asarray(a, dtype=complex)
    return [[complex_to_json(z) for z in row] for row in a]


def vector_to_json(v: np.ndarray) -> list:
    return [complex_to_json(z) for z in np.asarray(v, dtype=complex).reshape(-1)]


def dump_json(obj, path: str | None):
    text = json.dumps(obj, indent=1, sort_keys=True, allow_nan=True)
    if path is None:
        return text + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
        fh.write("\n")
    return None


def write_csv(path, header, rows):
    """Rows of floats/strings with deterministic 17-digit formatting."""
    lines = [",".join(header)]
    for row in rows:
        fields = []
        for x in row:
            fields.append(x if isinstance(x, str) else format_float(x))
        lines.append(",".join(fields))
    text = "\n".join(lines) + "\n"
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return None
