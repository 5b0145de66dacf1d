"""Reading and writing matrices, weight vectors and traces.

Input formats:

* CSV: ``n`` lines of ``n`` comma-separated numbers (whitespace also
  separates, so the aligned text output re-parses); blank lines and lines
  starting with ``#`` are ignored.
* JSON: ``{"n": 4, "rows": [[...], ...]}`` or ``{"n": 4, "upper": [...]}``
  with the row-major strict upper triangle.

Numbers may be plain decimals or fraction literals such as ``1/16``.
Output never uses fractions; JSON always carries 17 significant digits.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .core import (
    DEFAULT_TOL,
    PairwiseComparisonMatrix,
    PcmError,
    ToleranceConfig,
    build_from_upper_triangle,
    build_matrix,
)
from .triads import ConsistificationTrace


class ParseError(PcmError):
    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        self.row, self.col = row, col
        where = "" if row is None else f" at row {row}" + ("" if col is None else f", column {col}")
        super().__init__(message + where)


def parse_number(token) -> float:
    """Parse ``"0.25"``, ``"1/4"`` or a JSON number into a float."""
    if isinstance(token, bool):
        raise ValueError(f"not a number: {token!r}")
    if isinstance(token, (int, float)):
        return float(token)
    text = str(token).strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return float(Fraction(num.strip()) / Fraction(den.strip()))
    return float(text)


def _parse_cell(token, row, col) -> float:
    try:
        return parse_number(token)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ParseError(f"cannot parse {token!r} as a number", row, col) from None


_SEPARATOR = re.compile(r"\s*,\s*|\s+")


def parse_csv(text: str) -> list[list[float]]:
    rows = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = _SEPARATOR.split(stripped)
        rows.append([_parse_cell(tok, len(rows) + 1, c) for c, tok in enumerate(tokens, 1)])
    if not rows:
        raise ParseError("no matrix rows found")
    return rows


def parse_matrix(text: str, tol: ToleranceConfig = DEFAULT_TOL) -> PairwiseComparisonMatrix:
    """Parse CSV or JSON text (detected by a leading ``{``) into a validated matrix."""
    if text.lstrip().startswith("{"):
        return _parse_json(text, tol)
    return build_matrix(parse_csv(text), tol)


def _parse_json(text: str, tol: ToleranceConfig) -> PairwiseComparisonMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("JSON matrix must be an object")
    if "rows" in obj:
        rows = obj["rows"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError('"rows" must be a list of lists')
        grid = [[_parse_cell(v, r, c) for c, v in enumerate(row, 1)] for r, row in enumerate(rows, 1)]
        if "n" in obj and obj["n"] != len(grid):
            raise ParseError(f'"n" is {obj["n"]} but {len(grid)} rows given')
        return build_matrix(grid, tol)
    if "upper" in obj:
        if "n" not in obj or not isinstance(obj["n"], int):
            raise ParseError('"upper" input needs an integer "n"')
        vals = [_parse_cell(v, None, c) for c, v in enumerate(obj["upper"], 1)]
        return build_from_upper_triangle(vals, obj["n"], tol)
    raise ParseError('JSON matrix needs a "rows" or "upper" key')


def format_number(x: float, precision: int = 6) -> str:
    """Fixed-point with ``precision`` decimals; 17 means lossless (17 significant digits)."""
    if precision >= 17:
        return format(x, ".17g")
    return f"{x:.{precision}f}"


def _json_float(x: float) -> float:
    # 17 significant digits always round-trips a double exactly.
    return float(format(x, ".17g"))


def matrix_to_csv(A: PairwiseComparisonMatrix, precision: int = 6) -> str:
    return "\n".join(",".join(format_number(x, precision) for x in row) for row in A.entries) + "\n"


def matrix_to_text(A: PairwiseComparisonMatrix, precision: int = 6) -> str:
    cells = [[format_number(x, precision) for x in row] for row in A.entries]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells) + "\n"


def matrix_to_obj(A: PairwiseComparisonMatrix) -> dict:
    return {"n": A.n, "rows": [[_json_float(x) for x in row] for row in A.entries]}


def matrix_to_json(A: PairwiseComparisonMatrix) -> str:
    return json.dumps(matrix_to_obj(A)) + "\n"


def render_matrix(A: PairwiseComparisonMatrix, fmt: str = "text", precision: int = 6) -> str:
    if fmt == "json":
        return matrix_to_json(A)
    if fmt == "csv":
        return matrix_to_csv(A, precision)
    return matrix_to_text(A, precision)


def trace_to_obj(trace: ConsistificationTrace, include_identity: bool = True) -> dict:
    steps = []
    for s in trace.steps:
        if s.transform.is_identity and not include_identity:
            continue
        steps.append({
            "triad": list(s.transform.triad.one_based()),
            "alpha": _json_float(s.transform.alpha),
            "matrix": matrix_to_obj(s.matrix),
        })
    return {"initial": matrix_to_obj(trace.initial), "steps": steps, "final": matrix_to_obj(trace.final)}


def trace_to_text(trace: ConsistificationTrace, precision: int = 6, include_identity: bool = True) -> str:
    out = []
    shown = 0
    for s in trace.steps:
        if s.transform.is_identity and not include_identity:
            continue
        shown += 1
        i, j, k = s.transform.triad.one_based()
        tag = " (identity)" if s.transform.is_identity else ""
        out.append(f"step {shown}: triad ({i},{j},{k}) alpha = {format_number(s.transform.alpha, precision)}{tag}")
        out.append(matrix_to_text(s.matrix, precision))
    out.append("final:")
    out.append(matrix_to_text(trace.final, precision))
    return "\n".join(out)
