import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Tuple

from os_dulac.coeffs import format_rational, parse_rational
from os_dulac.exceptions import InvalidRegionError


class Point(NamedTuple):
    x: float
    y: float

    @property
    def is_finite(self):
        return math.isfinite(self.x) and math.isfinite(self.y)

    def distance(self, other):
        return math.hypot(self.x - other[0], self.y - other[1])


@dataclass(frozen=True, order=True)
class Box2:
    """Closed axis-aligned rectangle with exact rational corners."""

    x_min: Fraction
    x_max: Fraction
    y_min: Fraction
    y_max: Fraction

    def __post_init__(self):
        for name in ("x_min", "x_max", "y_min", "y_max"):
            value = getattr(self, name)
            if not isinstance(value, Fraction):
                object.__setattr__(self, name, _exact(value))
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise InvalidRegionError(f"degenerate box {self}")

    @classmethod
    def parse(cls, text):
        """Parse ``"xmin:xmax,ymin:ymax"`` with rational or decimal endpoints."""
        try:
            xs, ys = text.split(",")
            x0, x1 = (parse_rational(v) for v in xs.split(":"))
            y0, y1 = (parse_rational(v) for v in ys.split(":"))
        except ValueError as e:
            raise InvalidRegionError(f"invalid region {text!r}: {e}") from e
        return cls(x0, x1, y0, y1)

    @classmethod
    def centered(cls, center, half_width):
        cx, cy = center
        return cls(cx - half_width, cx + half_width, cy - half_width, cy + half_width)

    @property
    def width(self):
        return self.x_max - self.x_min

    @property
    def height(self):
        return self.y_max - self.y_min

    @property
    def center(self):
        return ((self.x_min + self.x_max) / 2, (self.y_min + self.y_max) / 2)

    def corners(self):
        return (
            (self.x_min, self.y_min),
            (self.x_min, self.y_max),
            (self.x_max, self.y_min),
            (self.x_max, self.y_max),
        )

    def split(self):
        xm, ym = self.center
        return (
            Box2(self.x_min, xm, self.y_min, ym),
            Box2(self.x_min, xm, ym, self.y_max),
            Box2(xm, self.x_max, self.y_min, ym),
            Box2(xm, self.x_max, ym, self.y_max),
        )

    def ring(self):
        """The box minus its concentric half-size box, as four flanking rectangles."""
        cx, cy = self.center
        hx, hy = self.width / 4, self.height / 4
        return (
            Box2(self.x_min, self.x_max, self.y_min, cy - hy),
            Box2(self.x_min, self.x_max, cy + hy, self.y_max),
            Box2(self.x_min, cx - hx, cy - hy, cy + hy),
            Box2(cx + hx, self.x_max, cy - hy, cy + hy),
        )

    def inner(self):
        cx, cy = self.center
        hx, hy = self.width / 4, self.height / 4
        return Box2(cx - hx, cx + hx, cy - hy, cy + hy)

    def contains(self, x, y, strict=False):
        if strict:
            return self.x_min < x < self.x_max and self.y_min < y < self.y_max
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def contains_box(self, other):
        return (
            self.x_min <= other.x_min
            and other.x_max <= self.x_max
            and self.y_min <= other.y_min
            and other.y_max <= self.y_max
        )

    def intersect(self, other):
        x0, x1 = max(self.x_min, other.x_min), min(self.x_max, other.x_max)
        y0, y1 = max(self.y_min, other.y_min), min(self.y_max, other.y_max)
        if x0 >= x1 or y0 >= y1:
            return None
        return Box2(x0, x1, y0, y1)

    def as_floats(self) -> Tuple[float, float, float, float]:
        return (
            float(self.x_min),
            float(self.x_max),
            float(self.y_min),
            float(self.y_max),
        )

    def __str__(self):
        return (
            f"{format_rational(self.x_min)}:{format_rational(self.x_max)},"
            f"{format_rational(self.y_min)}:{format_rational(self.y_max)}"
        )


def _exact(value):
    if isinstance(value, float):
        if not math.isfinite(value):
            raise InvalidRegionError(f"non-finite box edge {value}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return parse_rational(value)
    return Fraction(value)
