"""
Rendering of ReportDocument as aligned text, JSON or CSV

Rendering is deterministic: identical documents give identical bytes.
"""
import io
import json
import math
from typing import Any, List

import numpy as np
import pandas as pd

from app.models import OutputFormat, ReportDocument, ReportSection


def format_value(value: Any, decimals: int = 5) -> str:
    """
    Fixed-point text for one cell

    Non-zero numbers smaller than 10^-decimals switch to e-notation so tiny
    p-values stay readable.
    """
    if value is None:
        return "NA"
    if isinstance(value, (bool, np.bool_)):
        return "yes" if value else "no"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "NaN"
        if math.isinf(v):
            return "Inf" if v > 0 else "-Inf"
        if v != 0 and abs(v) < 10 ** -decimals:
            return f"{v:.{decimals}e}"
        return f"{v:.{decimals}f}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "(" + ", ".join(format_value(v, decimals) for v in value) + ")"
    if isinstance(value, dict):
        return ", ".join(f"{k}={format_value(v, decimals)}" for k, v in value.items())
    return str(value)


def _table_lines(section: ReportSection, decimals: int) -> List[str]:
    cells = [[format_value(v, decimals) for v in row] for row in section.rows]
    widths = [len(c) for c in section.columns]
    for row in cells:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    # First column left aligned (labels), the rest right aligned
    def line(values):
        parts = [values[0].ljust(widths[0])] + [v.rjust(w) for v, w in zip(values[1:], widths[1:])]
        return "  ".join(parts).rstrip()
    lines = [line(list(section.columns))]
    lines.extend(line(row) for row in cells)
    return lines


def _value_lines(section: ReportSection, decimals: int) -> List[str]:
    if not section.values:
        return []
    width = max(len(k) for k in section.values)
    return [f"{k.ljust(width)} : {format_value(v, decimals)}" for k, v in section.values.items()]


def render_text(document: ReportDocument, decimals: int = 5) -> str:
    out = []
    header = f"collinear {document.command}"
    if document.source:
        header += f" [{document.source}]"
    out.append(header)
    for section in document.sections:
        out.append("")
        out.append(section.title)
        out.append("-" * len(section.title))
        if section.columns:
            out.extend(_table_lines(section, decimals))
        out.extend(_value_lines(section, decimals))
        out.extend(f"Note: {note}" for note in section.notes)
    return "\n".join(out) + "\n"


def to_plain(value: Any) -> Any:
    """Recursively convert numpy scalars and arrays; non-finite floats become None"""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_json(document: ReportDocument) -> str:
    payload = to_plain(document.model_dump())
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def render_csv(document: ReportDocument) -> str:
    """Each section as a '# name' line followed by its table (or key,value rows)"""
    buffer = io.StringIO()
    for section in document.sections:
        buffer.write(f"# {section.name}\n")
        if section.columns:
            rows = [[_csv_cell(v) for v in row] for row in section.rows]
            frame = pd.DataFrame(rows, columns=section.columns)
        else:
            frame = pd.DataFrame(
                [[k, _csv_cell(v)] for k, v in section.values.items()], columns=["key", "value"]
            )
        frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def _csv_cell(value: Any) -> Any:
    if isinstance(value, (list, tuple, np.ndarray, dict)):
        return format_value(value, 10)
    return to_plain(value)


def render(document: ReportDocument, fmt: OutputFormat = OutputFormat.TEXT, decimals: int = 5) -> str:
    if fmt == OutputFormat.JSON:
        return render_json(document)
    if fmt == OutputFormat.CSV:
        return render_csv(document)
    return render_text(document, decimals)
