"""JSON report schema and conversions of domain objects to plain data."""
import json
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel

from os_dulac.bernstein import Outcome, Violation
from os_dulac.coeffs import format_rational


class OutputFormat(str, Enum):
    json = "json"
    csv = "csv"
    text = "text"


class CertificateModel(BaseModel):
    outcome: Outcome
    carrier: str
    witness: Optional[Tuple[str, str]] = None
    depth: int


class Report(BaseModel):
    system: str
    command: str
    result: Dict[str, Any] = {}
    certificate: Optional[CertificateModel] = None
    notes: List[str] = []


def certificate_model(certificate):
    witness = None
    if isinstance(certificate.outcome, Violation):
        witness = tuple(format_rational(v) for v in certificate.outcome.witness)
    return CertificateModel(
        outcome=certificate.kind,
        carrier=str(certificate.carrier),
        witness=witness,
        depth=certificate.depth,
    )


def certificate_details(certificate):
    o = certificate.outcome
    out = {"box": str(certificate.box)}
    if o.kind is Outcome.POSITIVE:
        out["box_count"] = o.box_count
        out["min_coefficient"] = format_rational(certificate.min_coefficient)
    elif o.kind is Outcome.VIOLATION:
        out["value"] = format_rational(o.value)
    else:
        out["undecided_boxes"] = o.undecided_boxes
    return out


def point(p):
    return [float(p[0]), float(p[1])]


def complex_pair(z):
    return [float(z.real), float(z.imag)]


def equilibrium(report):
    return {
        "location": point(report.location),
        "jacobian": [list(row) for row in report.jacobian],
        "eigenvalues": [complex_pair(v) for v in report.eigenvalues],
        "classification": report.classification.value,
        "hyperbolic": report.hyperbolic,
        "stable": report.stable,
    }


def dulac_result(dulac):
    return {
        "conclusion": dulac.conclusion.value,
        "multiplier": str(dulac.multiplier),
        **certificate_details(dulac.certificate),
    }


def residual(report):
    return {
        "symbolic_residual": str(report.symbolic_residual),
        "is_zero": report.is_zero,
        "numeric_max_drift": report.numeric_max_drift if report.drift_bounded else None,
        "drift_bounded": report.drift_bounded,
        "trajectories_checked": report.trajectories_checked,
    }


def render_text(report):
    lines = [f"system: {report.system}", f"command: {report.command}"]
    for key, value in report.result.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    if report.certificate is not None:
        c = report.certificate
        lines.append(f"certificate: {c.outcome.value} (depth {c.depth})")
        lines.append(f"carrier: {c.carrier}")
        if c.witness is not None:
            lines.append(f"witness: ({c.witness[0]}, {c.witness[1]})")
    lines.extend(f"note: {n}" for n in report.notes)
    return "\n".join(lines) + "\n"


def render(report, fmt=OutputFormat.json):
    if OutputFormat(fmt) is OutputFormat.text:
        return render_text(report)
    return report.model_dump_json(indent=2) + "\n"
