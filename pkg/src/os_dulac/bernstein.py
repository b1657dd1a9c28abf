"""Rigorous positivity of polynomials on rectangles.

The polynomial is mapped affinely onto the unit square and expanded in the
tensor Bernstein basis of degrees ``(deg_x p, deg_y p)``.  Bernstein
coefficients enclose the range of ``p`` on the box and the four corner
coefficients are the corner values, so:

* all coefficients ``> 0``  ->  ``p > 0`` on the box;
* a corner coefficient ``<= 0``  ->  exact violation witness.

Undecided patches are split at the midpoint of both axes by de Casteljau
subdivision.  Everything is exact rational arithmetic.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional, Tuple, Union

import numpy as np

from os_dulac.batch import ordered_map
from os_dulac.geometry import Box2, Point
from os_dulac.poly import Poly

DEFAULT_MAX_DEPTH = 12

logger = logging.getLogger(__name__)


class Outcome(str, Enum):
    POSITIVE = "positive"
    VIOLATION = "violation"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Positive:
    max_depth_used: int
    box_count: int
    kind = Outcome.POSITIVE


@dataclass(frozen=True)
class Violation:
    witness: Tuple[Fraction, Fraction]
    value: Fraction
    depth: int = 0
    kind = Outcome.VIOLATION

    @property
    def point(self):
        return Point(float(self.witness[0]), float(self.witness[1]))


@dataclass(frozen=True)
class Inconclusive:
    depth_limit: int
    undecided_boxes: int
    kind = Outcome.INCONCLUSIVE


@dataclass(frozen=True)
class Certificate:
    outcome: Union[Positive, Violation, Inconclusive]
    carrier: Poly
    box: Box2
    min_coefficient: Optional[Fraction] = None

    @property
    def kind(self):
        return self.outcome.kind

    @property
    def is_positive(self):
        return self.outcome.kind is Outcome.POSITIVE

    @property
    def depth(self):
        o = self.outcome
        if isinstance(o, Positive):
            return o.max_depth_used
        if isinstance(o, Violation):
            return o.depth
        return o.depth_limit


@lru_cache(maxsize=None)
def _power_to_bernstein(n):
    """``T[i, k] = C(i, k) / C(n, k)`` for ``k <= i``."""
    t = np.full((n + 1, n + 1), Fraction(0), dtype=object)
    for i in range(n + 1):
        for k in range(i + 1):
            t[i, k] = Fraction(comb(i, k), comb(n, k))
    t.flags.writeable = False
    return t


def _halves(coeffs, axis):
    """de Casteljau subdivision at 1/2 along ``axis``."""
    c = np.moveaxis(coeffs, axis, 0)
    left, right = [c[0]], [c[-1]]
    while c.shape[0] > 1:
        c = (c[:-1] + c[1:]) / 2
        left.append(c[0])
        right.append(c[-1])
    return (
        np.moveaxis(np.stack(left), 0, axis),
        np.moveaxis(np.stack(right[::-1]), 0, axis),
    )


@dataclass(frozen=True)
class BernsteinPatch:
    box: Box2
    degrees: Tuple[int, int]
    coefficients: np.ndarray = field(compare=False, repr=False)

    @property
    def min_coefficient(self):
        return min(self.coefficients.flat)

    @property
    def max_coefficient(self):
        return max(self.coefficients.flat)

    def corners(self):
        """``((x, y), value)`` for the four corners, ordered like ``Box2.corners``."""
        c = self.coefficients
        values = (c[0, 0], c[0, -1], c[-1, 0], c[-1, -1])
        return tuple(zip(self.box.corners(), values))

    def split(self):
        low_x, high_x = _halves(self.coefficients, 0)
        ll, lh = _halves(low_x, 1)
        hl, hh = _halves(high_x, 1)
        boxes = self.box.split()
        return tuple(
            BernsteinPatch(b, self.degrees, c) for b, c in zip(boxes, (ll, lh, hl, hh))
        )


def bernstein_coefficients(p, box):
    """Exact Bernstein coefficients of ``p`` on ``box`` at degrees ``(deg_x, deg_y)``."""
    p.require_real()
    m, n = max(p.degree_x, 0), max(p.degree_y, 0)
    q = p.affine(box.x_min, box.width, box.y_min, box.height)
    a = np.full((m + 1, n + 1), Fraction(0), dtype=object)
    for (i, j), c in q.terms.items():
        a[i, j] = c
    b = _power_to_bernstein(m).dot(a).dot(_power_to_bernstein(n).T)
    return BernsteinPatch(box, (m, n), b)


def _examine(patch):
    witness = None
    for corner, value in patch.corners():
        if value <= 0 and (witness is None or value < witness[1]):
            witness = (corner, value)
    return witness, patch.min_coefficient


def certify_positive(p, box, max_depth=DEFAULT_MAX_DEPTH, workers=1):
    """Decide ``p > 0`` on ``box`` by Bernstein subdivision.

    Each tree level is examined in tree-position order, so the certificate does
    not depend on how many workers examine it.
    """
    p = p.require_real("carrier")
    level = [bernstein_coefficients(p, box)]
    depth, leaves, deepest, lowest = 0, 0, 0, None
    while level:
        examined = ordered_map(_examine, level, workers)
        violations = [w for w, _ in examined if w is not None]
        if violations:
            corner, value = min(violations, key=lambda w: w[1])
            logger.debug(f"Violation at depth {depth}: p{corner} = {value}")
            return Certificate(Violation(corner, value, depth), p, box)

        following, undecided = [], 0
        for patch, (_, low) in zip(level, examined):
            if low > 0:
                leaves += 1
                deepest = depth
                lowest = low if lowest is None else min(lowest, low)
            elif depth >= max_depth:
                undecided += 1
            else:
                following.extend(patch.split())
        logger.debug(
            f"Depth {depth}: {len(level)} patches, {leaves} leaves, "
            f"{len(following)} to split"
        )
        if undecided:
            return Certificate(Inconclusive(max_depth, undecided), p, box)
        level = following
        depth += 1
    return Certificate(Positive(deepest, leaves), p, box, lowest)


def uniform_lower_bound(p, box, depth):
    """Smallest Bernstein coefficient over the uniform ``4**depth`` subdivision."""
    level = [bernstein_coefficients(p, box)]
    for _ in range(depth):
        level = [child for patch in level for child in patch.split()]
    return min(patch.min_coefficient for patch in level)
