"""CSV ingestion and JSON report serialization."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .exceptions import ValidationError
from .pav import ForecastDataset

SCHEMA = "corp/1"


def _split_lines(text: str) -> list[str]:
    lines = text.lstrip("\ufeff").replace("\r\n", "\n").replace("\r", "\n").split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    return lines


def _read_lines(path) -> list[str]:
    return _split_lines(Path(path).read_text(encoding="utf-8"))


def parse_csv(text: str) -> ForecastDataset:
    return _parse_lines(_split_lines(text))


def ingest_csv(path) -> ForecastDataset:
    """Read a ``forecast,outcome`` CSV; row numbers in errors start at 1."""
    return _parse_lines(_read_lines(path))


def _parse_lines(lines: list[str]) -> ForecastDataset:
    if not lines:
        raise ValidationError("empty input")
    header = [h.strip() for h in lines[0].split(",")]
    if header != ["forecast", "outcome"]:
        raise ValidationError("missing header: expected 'forecast,outcome'")
    x, y = [], []
    for row, line in enumerate(lines[1:], start=1):
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != 2:
            raise ValidationError(f"row {row}: expected 2 fields, got {len(cells)}")
        try:
            f = float(cells[0])
        except ValueError:
            raise ValidationError(f"row {row}: non-numeric forecast {cells[0]!r}") from None
        try:
            o = float(cells[1])
        except ValueError:
            raise ValidationError(f"row {row}: non-numeric outcome {cells[1]!r}") from None
        if not 0.0 <= f <= 1.0:
            raise ValidationError(f"row {row}: forecast out of range")
        if o not in (0.0, 1.0):
            raise ValidationError(f"row {row}: outcome must be 0 or 1")
        x.append(f)
        y.append(int(o))
    if not x:
        raise ValidationError("empty input")
    return ForecastDataset(np.array(x), np.array(y))


def format_csv(dataset: ForecastDataset) -> str:
    rows = [f"{float(f)!r},{int(o)}" for f, o in zip(dataset.forecasts, dataset.outcomes)]
    return "forecast,outcome\n" + "".join(r + "\n" for r in rows)


def write_csv(dataset: ForecastDataset, path) -> None:
    Path(path).write_text(format_csv(dataset), encoding="utf-8")


def read_columns(path) -> dict[str, np.ndarray]:
    """Read a headed numeric CSV into ``{column: float array}``.

    Cells that are empty or ``NA`` become NaN; quoted headers are unquoted.
    """
    lines = _read_lines(path)
    if not lines:
        raise ValidationError("empty input")
    names = [h.strip().strip('"') for h in lines[0].split(",")]
    cols: list[list[float]] = [[] for _ in names]
    for row, line in enumerate(lines[1:], start=1):
        cells = [c.strip().strip('"') for c in line.split(",")]
        if len(cells) != len(names):
            raise ValidationError(f"row {row}: expected {len(names)} fields")
        for col, cell in zip(cols, cells):
            try:
                col.append(float(cell) if cell not in ("", "NA") else math.nan)
            except ValueError:
                col.append(math.nan)
    return {name: np.array(col) for name, col in zip(names, cols)}


# JSON with fixed key order and 17 significant digits; inf/nan become null.

def _num(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if not math.isfinite(v):
        return "null"
    return format(v, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    import json

    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in seq) + "\n" + end + "]"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    return _num(obj)


def decomposition_block(decomp) -> dict:
    return {
        "rule": str(decomp.rule),
        "mean_score": decomp.mean_score,
        "mcb": decomp.mcb,
        "dsc": decomp.dsc,
        "unc": decomp.unc,
        "finite": decomp.finite,
    }


def band_block(band) -> dict:
    return {
        "kind": band.kind.value,
        "method": band.method.value,
        "level": band.level,
        "positions": band.positions,
        "lower": band.lower,
        "upper": band.upper,
    }


def report(diagram) -> dict:
    """Report dictionary in the fixed key order of the ``corp/1`` schema."""
    doc = {
        "schema": SCHEMA,
        "n": diagram.n,
        "k": diagram.k,
        "mode": diagram.mode.value,
        "points": [list(p) for p in diagram.points],
        "bins": [
            {"lower": b.lower, "upper": b.upper, "value": b.value, "count": b.count}
            for b in diagram.bins
        ],
        "histogram": [
            {"lower": lo, "upper": hi, "count": c}
            for lo, hi, c in zip(diagram.histogram.lower, diagram.histogram.upper, diagram.histogram.counts)
        ],
    }
    if diagram.band is not None:
        doc["band"] = band_block(diagram.band)
    doc["decomposition"] = decomposition_block(diagram.annotation)
    return doc


def emit_report(diagram) -> str:
    return dumps(report(diagram)) + "\n"
