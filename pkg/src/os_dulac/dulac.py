"""Dulac and Bendixson no-periodic-orbit certificates."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

from os_dulac.bernstein import DEFAULT_MAX_DEPTH, Certificate, certify_positive
from os_dulac.multiplier import Multiplier, PolyMultiplier, as_multiplier
from os_dulac.poly import Poly
from os_dulac.vfield import VectorField

logger = logging.getLogger(__name__)

OPEN_BOX_NOTE = (
    "conclusion covers periodic orbits fully contained in the open box; "
    "a periodic orbit forming the box boundary is not excluded"
)
P_CONNECTED_NOTE = (
    "the certified region is not simply connected; a p-connected region "
    "with a Dulac function holds at most p-1 closed orbits"
)


class Conclusion(str, Enum):
    NO_PERIODIC_ORBIT = "NoPeriodicOrbitFullyContained"
    NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class DulacCertificate:
    certificate: Certificate
    multiplier: Multiplier
    system: VectorField = field(repr=False)
    notes: Tuple[str, ...] = (OPEN_BOX_NOTE,)

    @property
    def conclusion(self):
        if self.certificate.is_positive:
            return Conclusion.NO_PERIODIC_ORBIT
        return Conclusion.NOT_CERTIFIED

    @property
    def certified(self):
        return self.conclusion is Conclusion.NO_PERIODIC_ORBIT


def certify_dulac(system, B, box, max_depth=DEFAULT_MAX_DEPTH, workers=1):
    """Certify ``Div(B X) > 0`` on ``box`` through the polynomial sign-carrier."""
    B = as_multiplier(B)
    carrier = B.sign_carrier(system)
    certificate = certify_positive(carrier, box, max_depth=max_depth, workers=workers)
    logger.debug(f"Dulac {B} on {box}: {certificate.kind.value}")
    return DulacCertificate(certificate, B, system)


def bendixson(system, box, max_depth=DEFAULT_MAX_DEPTH, workers=1):
    return certify_dulac(
        system, PolyMultiplier(Poly.constant(1)), box, max_depth=max_depth, workers=workers
    )
