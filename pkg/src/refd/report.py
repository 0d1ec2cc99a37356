"""Serialization of danger reports: JSON document and lint-style text."""

from __future__ import annotations

import json

from .refactoring import DangerReport
from .risks import LocationRecord


def location_to_json(record: LocationRecord) -> dict:
    if record.span is None:
        return {"synthetic_desc": record.synthetic_desc or record.id}
    return {
        "file": record.span.file,
        "line": record.span.start_line,
        "col": record.span.start_col,
        "end_line": record.span.end_line,
        "end_col": record.span.end_col,
    }


def report_to_document(report: DangerReport) -> dict:
    """JSON-ready dict. Key order is normalized by the serializer."""
    return {
        "refactoring": report.refactoring,
        "params": report.params,
        "dangers": [
            {
                "label": d.label,
                "detector": d.detector,
                "message": d.message,
                "locations": [location_to_json(loc) for loc in d.locations],
                "microstep": d.microstep_id,
            }
            for d in report.dangers
        ],
        "summary": {"per_label_counts": report.per_label_counts},
        "baseline_generation": report.baseline_generation,
        "diagnostics": list(report.diagnostics),
    }


def serialize_report(report: DangerReport) -> str:
    """Deterministic JSON text: sorted keys, stable ordering, trailing newline."""
    return json.dumps(report_to_document(report), sort_keys=True, indent=2) + "\n"


def document_from_json(text: str) -> dict:
    return json.loads(text)


def report_to_text(report: DangerReport) -> str:
    """One line per reported location: LABEL file:line:col message."""
    lines = []
    for d in report.dangers:
        for loc in d.locations:
            if loc.span is None:
                where = f"[{loc.synthetic_desc or loc.id}]"
            else:
                where = f"{loc.span.file}:{loc.span.start_line}:{loc.span.start_col}"
            lines.append(f"{d.label} {where} {d.message}")
    if not lines:
        lines.append("no dangers detected")
    for diag in report.diagnostics:
        lines.append(f"diagnostic: {diag}")
    return "\n".join(lines) + "\n"
