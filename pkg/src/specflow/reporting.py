"""Report documents: JSON certificates/reports and CSV spectrum tables.

Output is deterministic byte-for-byte for a fixed input: floats are
serialized with Python's shortest round-trip representation (lossless),
dict keys keep construction order, and no timestamps or environment data
are embedded.
"""

from __future__ import annotations

import json
from dataclasses import asdict

import jsonschema
import numpy as np

from .components import ComponentCertification, ComponentReport
from .config import load_schema
from .errors import CertificateBroken
from .flow import FlowCertificate, FlowOptions
from .paths import OperatorPath
from .properties import PropertyReport

__all__ = [
    "flow_certificate_document",
    "component_report_document",
    "property_report_document",
    "validate_document",
    "dumps_document",
    "spectrum_table",
    "spectrum_csv",
]

_KIND_TO_SCHEMA = {
    "flow-certificate": "flow-certificate",
    "component-report": "component-report",
    "property-report": "property-report",
}


def _options_block(options: FlowOptions) -> dict:
    return {
        "init_samples": options.init_samples,
        "max_depth": options.max_depth,
        "witness_points": options.witness_points,
        "cluster_tol": options.cluster_tol,
        "min_margin": options.min_margin,
    }


def flow_certificate_document(
    cert: FlowCertificate,
    path_descriptor: dict | None = None,
) -> dict:
    segments = []
    for w, (c_lo, c_hi) in zip(cert.witnesses, cert.counts):
        segments.append(
            {
                "t_lower": w.t_lower,
                "t_upper": w.t_upper,
                "radius": w.radius,
                "margin": w.margin,
                "witness_grid": list(w.grid),
                "symmetric_count": w.symmetric_count,
                "count_lower": c_lo,
                "count_upper": c_hi,
            }
        )
    doc = {
        "version": 1,
        "kind": "flow-certificate",
        "flow": cert.flow,
        "times": list(cert.times),
        "radii": list(cert.radii),
        "segments": segments,
        "options": _options_block(cert.options),
    }
    if path_descriptor is not None:
        doc["path"] = path_descriptor
    return doc


def component_report_document(
    report: ComponentReport,
    certification: ComponentCertification,
    options: FlowOptions,
) -> dict:
    return {
        "version": 1,
        "kind": "component-report",
        "k": len(report.paths),
        "ambient_dim": report.basepoint.dim,
        "flows": list(report.flows),
        "ledger": [asdict(entry) for entry in report.ledger],
        "pairs": [asdict(pair) for pair in certification.pairs],
        "verdict": certification.verdict,
        "options": _options_block(options),
    }


def property_report_document(report: PropertyReport) -> dict:
    return {
        "version": 1,
        "kind": "property-report",
        "passed": report.passed,
        "checks": [
            {
                "name": c.name,
                "cases": c.cases,
                "failures": list(c.failures),
                "passed": c.passed,
            }
            for c in report.checks
        ],
    }


def validate_document(doc: dict) -> None:
    """Check a report document against its shipped schema."""
    kind = doc.get("kind")
    name = _KIND_TO_SCHEMA.get(kind)
    if name is None:
        raise CertificateBroken(f"document kind {kind!r} has no shipped schema")
    jsonschema.validate(doc, load_schema(name))


def dumps_document(doc: dict) -> str:
    """Canonical JSON serialization: 2-space indent, trailing newline."""
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def spectrum_table(path: OperatorPath, grid: int) -> tuple[list[str], list[list[float]]]:
    """Eigenvalue curves on a uniform parameter grid, sorted per row."""
    if grid < 2:
        raise ValueError("spectrum grid must have at least 2 points")
    header = ["t"] + [f"lambda_{i + 1}" for i in range(path.dim)]
    rows = []
    for t in np.linspace(0.0, 1.0, grid):
        vals = path.at(float(t)).spectrum.values
        rows.append([float(t)] + [float(v) for v in vals])
    return header, rows


def spectrum_csv(path: OperatorPath, grid: int) -> str:
    """CSV rendering: header row, comma separators, LF line endings."""
    header, rows = spectrum_table(path, grid)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(v) for v in row))
    return "\n".join(lines) + "\n"
