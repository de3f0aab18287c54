"""Serialization of result tables as CSV or JSON.

Output depends only on the rows, the resolved configuration and the tool
version, so identical runs produce identical bytes.
"""

import csv
import io
import json
import math
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .specfun.scaled import ScaledValue

TOOL = "hkasym"


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else str(value)
    if isinstance(value, bool) or value is None:
        return "" if value is None else str(value).lower()
    return value


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def scaled_columns(value: ScaledValue, prefix: str = "") -> dict[str, Any]:
    """mantissa / log_scale columns (real and imaginary mantissa for complex values)."""
    columns: dict[str, Any] = {}
    if value.is_real:
        columns[f"{prefix}mantissa"] = float(value.mantissa)
    else:
        columns[f"{prefix}mantissa_re"] = float(value.mantissa.real)
        columns[f"{prefix}mantissa_im"] = float(value.mantissa.imag)
    columns[f"{prefix}log_scale"] = float(value.log_scale)
    return columns


def render_csv(rows: Sequence[dict[str, Any]], config: dict[str, Any]) -> str:
    buffer = io.StringIO()
    buffer.write(f"# {TOOL} {__version__}\n")
    buffer.write(f"# config: {json.dumps(config, sort_keys=True)}\n")
    if rows:
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(value) for key, value in row.items()})
    return buffer.getvalue()


def render_json(rows: Sequence[dict[str, Any]], config: dict[str, Any], meta: Optional[dict[str, Any]] = None) -> str:
    document = {
        "tool": TOOL,
        "version": __version__,
        "config": config,
        "meta": {key: _json_value(value) for key, value in (meta or {}).items()},
        "rows": [{key: _json_value(value) for key, value in row.items()} for row in rows],
    }
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def render(
    rows: Sequence[dict[str, Any]],
    config: dict[str, Any],
    fmt: str = "csv",
    meta: Optional[dict[str, Any]] = None,
) -> str:
    """Render rows in ``fmt`` ("csv" or "json"); CSV carries meta as extra comment lines."""
    if fmt == "json":
        return render_json(rows, config, meta)
    if fmt != "csv":
        raise ValueError(f"unknown output format {fmt!r}")
    text = render_csv(rows, config)
    if meta:
        head, _, body = text.partition("\n")
        second, _, rest = body.partition("\n")
        extra = "".join(f"# {key}: {_cell(value)}\n" for key, value in meta.items())
        text = f"{head}\n{second}\n{extra}{rest}"
    return text


def write_output(text: str, path: Optional[Path]) -> None:
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
