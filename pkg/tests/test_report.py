import json
import math
from fractions import Fraction

from os_dulac.bernstein import certify_positive
from os_dulac.darboux import ResidualReport
from os_dulac.equilibria import find_equilibria
from os_dulac.geometry import Box2
from os_dulac.parser import parse_poly
from os_dulac.poly import Poly
from os_dulac.report import (
    CertificateModel,
    OutputFormat,
    Report,
    certificate_details,
    certificate_model,
    equilibrium,
    render,
    residual,
)


def test_certificate_model():
    cert = certify_positive(parse_poly("1 - x^2"), Box2(-3, 3, -3, 3))
    model = certificate_model(cert)
    assert model.outcome.value == "violation"
    assert model.carrier == "-x^2 + 1"
    assert model.witness == ("-3", "-3")
    assert certificate_details(cert)["value"] == "-8"

    cert = certify_positive(parse_poly("1 - x^2"), Box2(Fraction(-1, 2), Fraction(1, 2), 0, 1))
    model = certificate_model(cert)
    assert model.witness is None
    assert model.depth == 0
    assert certificate_details(cert) == {
        "box": "-1/2:1/2,0:1",
        "box_count": 1,
        "min_coefficient": "3/4",
    }


def test_json_round_trip():
    cert = certify_positive(parse_poly("x + 2"), Box2(0, 1, 0, 1))
    report = Report(
        system="(P, Q) = (y, -x)",
        command="certify",
        result={"conclusion": "NoPeriodicOrbitFullyContained", "box_count": 1},
        certificate=certificate_model(cert),
        notes=["a note"],
    )
    text = render(report, OutputFormat.json)
    data = json.loads(text)
    assert set(data) == {"system", "command", "result", "certificate", "notes"}
    assert data["certificate"]["outcome"] == "positive"
    assert Report.model_validate_json(text) == report
    assert isinstance(Report.model_validate_json(text).certificate, CertificateModel)


def test_text(vdp):
    (eq,) = find_equilibria(vdp, Box2(-1, 1, -1, 1))
    report = Report(
        system=str(vdp),
        command="equilibria",
        result={"equilibria": [equilibrium(eq)]},
        notes=["first", "second"],
    )
    text = render(report, "text")
    lines = text.splitlines()
    assert lines[0] == f"system: {vdp}"
    assert lines[1] == "command: equilibria"
    assert '"classification": "Focus"' in lines[2]
    assert lines[-2:] == ["note: first", "note: second"]


def test_unbounded_drift_survives_json():
    report = Report(
        system="(P, Q) = (x, -y)",
        command="verify-integral",
        result=residual(ResidualReport(Poly(), math.inf, 3)),
    )
    data = json.loads(render(report))["result"]
    assert data["drift_bounded"] is False
    assert data["numeric_max_drift"] is None
    assert data["trajectories_checked"] == 3

    bounded = residual(ResidualReport(Poly(), 1e-9, 3))
    assert bounded["drift_bounded"] is True
    assert bounded["numeric_max_drift"] == 1e-9
