"""Trajectories, Poincare sections and limit cycles.

Integration is scipy's RK45 (Dormand-Prince 5(4)) with dense output.  Section
crossings are bracketed between accepted steps and refined with ``brentq`` on
the dense interpolant.
"""
import csv
import io
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from os_dulac.exceptions import (
    InvalidToleranceError,
    LimitCycleNotFoundError,
    NoReturnError,
    OffSectionError,
)
from os_dulac.geometry import Box2, Point

MIN_TOL, MAX_TOL = 1e-13, 1e-3
CROSSING_XTOL = 1e-12
CONVERGENCE_TOL = 1e-9
MARGINAL_BAND = 1e-3
ON_SECTION_TOL = 1e-9
ESCAPE_RADIUS = 1e6
CYCLE_SAMPLES = 501
MIN_CYCLE_SPEED = 1e-6

logger = logging.getLogger(__name__)


class Status(str, Enum):
    COMPLETED = "Completed"
    LEFT_DOMAIN = "LeftDomain"
    STEP_FAILURE = "StepFailure"


class CrossingDirection(str, Enum):
    POSITIVE = "PositiveCrossing"
    NEGATIVE = "NegativeCrossing"
    BOTH = "Both"


class Stability(str, Enum):
    STABLE = "Stable"
    UNSTABLE = "Unstable"
    MARGINAL = "Marginal"


@dataclass(frozen=True)
class Trajectory:
    """Accepted steps of one integration; ``times`` run toward ``t_span``."""

    times: np.ndarray = field(repr=False)
    states: np.ndarray = field(repr=False)
    tolerance: float
    status: Status
    solution: object = field(default=None, compare=False, repr=False)

    def __len__(self):
        return len(self.times)

    @property
    def points(self):
        return [Point(float(x), float(y)) for x, y in self.states]

    @property
    def end(self):
        return Point(float(self.states[-1, 0]), float(self.states[-1, 1]))

    def sample(self, times):
        return self.solution(np.asarray(times, dtype=float)).T


@dataclass(frozen=True)
class Section:
    anchor: Point
    normal: Tuple[float, float]
    direction: CrossingDirection = CrossingDirection.BOTH

    def __post_init__(self):
        n = np.asarray(self.normal, dtype=float)
        norm = float(np.hypot(n[0], n[1]))
        if not norm > 0 or not math.isfinite(norm):
            raise ValueError(f"section normal {self.normal} has no direction")
        object.__setattr__(self, "normal", (float(n[0] / norm), float(n[1] / norm)))
        object.__setattr__(self, "anchor", Point(float(self.anchor[0]), float(self.anchor[1])))
        object.__setattr__(self, "direction", CrossingDirection(self.direction))

    @classmethod
    def through(cls, system, seed):
        """The line through ``seed`` orthogonal to the flow, crossed along the flow."""
        px, qy = system(seed[0], seed[1])
        return cls(Point(*seed), (float(px), float(qy)), CrossingDirection.POSITIVE)

    @property
    def tangent(self):
        return (-self.normal[1], self.normal[0])

    def distance(self, z):
        z = np.asarray(z, dtype=float)
        return (z[..., 0] - self.anchor.x) * self.normal[0] + (
            z[..., 1] - self.anchor.y
        ) * self.normal[1]

    def coordinate(self, z):
        t = self.tangent
        return (z[0] - self.anchor.x) * t[0] + (z[1] - self.anchor.y) * t[1]

    def point(self, sigma):
        t = self.tangent
        return Point(self.anchor.x + sigma * t[0], self.anchor.y + sigma * t[1])

    def crosses(self, before, after):
        if self.direction is CrossingDirection.POSITIVE:
            return before < 0 <= after
        if self.direction is CrossingDirection.NEGATIVE:
            return before > 0 >= after
        return (before < 0 <= after) or (before > 0 >= after)


@dataclass(frozen=True)
class LimitCycleReport:
    period: float
    points: np.ndarray = field(repr=False)
    amplitude_x: float
    return_map_slope: float
    stability: Stability
    crossing: Point = None
    iterations: int = 0
    notes: Tuple[str, ...] = ()

    def inside(self, box):
        x0, x1, y0, y1 = box.as_floats()
        xs, ys = self.points[:, 0], self.points[:, 1]
        return bool(np.all((xs > x0) & (xs < x1) & (ys > y0) & (ys < y1)))

    def bounding_box(self):
        xs, ys = self.points[:, 0], self.points[:, 1]
        return Box2(float(xs.min()), float(xs.max()), float(ys.min()), float(ys.max()))

    def summary(self):
        return {
            "period": self.period,
            "amplitude_x": self.amplitude_x,
            "return_map_slope": self.return_map_slope,
            "stability": self.stability.value,
            "crossing": [self.crossing.x, self.crossing.y] if self.crossing else None,
            "iterations": self.iterations,
            "notes": list(self.notes),
        }


def check_tolerance(tol):
    if not MIN_TOL <= tol <= MAX_TOL:
        raise InvalidToleranceError(f"tolerance {tol} outside [{MIN_TOL}, {MAX_TOL}]")
    return tol


def _exit_event(domain):
    x0, x1, y0, y1 = domain.as_floats()

    def event(t, z):
        return min(z[0] - x0, x1 - z[0], z[1] - y0, y1 - z[1])

    event.terminal = True
    event.direction = -1
    return event


def integrate(system, z0, t_span, tol=1e-10, domain=None, atol=None):
    """Integrate ``z' = X(z)`` from ``z0`` over ``[0, t_span]``; negative spans run backward.

    ``tol`` is the relative tolerance and, unless ``atol`` is given, the absolute one.
    """
    check_tolerance(tol)
    z0 = np.array([float(z0[0]), float(z0[1])])
    if domain is not None and not domain.contains(z0[0], z0[1]):
        return Trajectory(np.array([0.0]), z0[None, :], tol, Status.LEFT_DOMAIN)
    if t_span == 0:
        return Trajectory(np.array([0.0]), z0[None, :], tol, Status.COMPLETED)

    sol = solve_ivp(
        system.rhs,
        (0.0, float(t_span)),
        z0,
        method="RK45",
        rtol=tol,
        atol=tol if atol is None else atol,
        dense_output=True,
        events=[_exit_event(domain)] if domain is not None else None,
    )
    if sol.status == 1:
        status = Status.LEFT_DOMAIN
    elif sol.status == 0:
        status = Status.COMPLETED
    else:
        logger.debug(f"Integration from {tuple(z0)} failed: {sol.message}")
        status = Status.STEP_FAILURE
    return Trajectory(sol.t, sol.y.T, tol, status, sol.sol)


def _escape_box(z0):
    r = ESCAPE_RADIUS + max(abs(z0[0]), abs(z0[1]))
    return Box2(-r, r, -r, r)


def poincare_return(system, section, z0, max_time=100.0, tol=1e-10, domain=None):
    """First crossing of ``section`` in its direction after leaving ``z0``.

    Returns ``(point, time)``.  Raises :class:`NoReturnError` when no crossing
    happens within ``max_time``.
    """
    offset = float(section.distance(z0))
    if abs(offset) > ON_SECTION_TOL:
        raise OffSectionError(f"{tuple(z0)} is {offset:.3e} off the section")
    traj = integrate(system, z0, max_time, tol, domain or _escape_box(z0))
    s = section.distance(traj.states)
    for k in range(1, len(s) - 1):
        if section.crosses(s[k], s[k + 1]):
            t_a, t_b = traj.times[k], traj.times[k + 1]

            def signed(t):
                return float(section.distance(traj.solution(t)))

            t_hit = brentq(signed, min(t_a, t_b), max(t_a, t_b), xtol=CROSSING_XTOL)
            hit = traj.solution(t_hit)
            return Point(float(hit[0]), float(hit[1])), float(t_hit)
    raise NoReturnError(
        f"no return to the section from {tuple(z0)} within t = {max_time} "
        f"(trajectory {traj.status.value})"
    )


def _stability(slope):
    if abs(slope) < 1 - MARGINAL_BAND:
        return Stability.STABLE
    if abs(slope) > 1 + MARGINAL_BAND:
        return Stability.UNSTABLE
    return Stability.MARGINAL


def detect_limit_cycle(
    system, section, seed, max_iters=50, tol=1e-12, max_time=100.0
):
    """Fixed point of the return map on ``section`` by secant-accelerated iteration.

    The section is parametrized by the signed coordinate along its tangent.
    """
    seed = Point(float(seed[0]), float(seed[1]))

    def returned(sigma):
        hit, period = poincare_return(
            system, section, section.point(sigma), max_time, tol
        )
        return section.coordinate(hit), hit, period

    sigma = section.coordinate(seed)
    previous, fallback = None, None
    try:
        for iteration in range(1, max_iters + 1):
            try:
                image, hit, period = returned(sigma)
            except NoReturnError:
                if fallback is None:
                    raise
                sigma, fallback = fallback, None
                continue
            residual = image - sigma
            logger.debug(
                f"Return map iteration {iteration}: "
                f"sigma={sigma:.12g} R-sigma={residual:.3e}"
            )
            if abs(residual) <= CONVERGENCE_TOL * max(1.0, abs(image)):
                break
            step = image
            if previous is not None and residual != previous[1]:
                secant = sigma - residual * (sigma - previous[0]) / (residual - previous[1])
                if math.isfinite(secant):
                    step = secant
            # plain iterate, retried when the secant point has no return
            fallback = image if step != image else None
            previous = (sigma, residual)
            sigma = step
        else:
            raise LimitCycleNotFoundError(
                f"return map did not converge in {max_iters} iterations"
            )

        if system.speed(hit.x, hit.y) < MIN_CYCLE_SPEED:
            raise LimitCycleNotFoundError(
                f"return map converged to the equilibrium near {tuple(hit)}"
            )
        h = 1e-5 * max(1.0, abs(sigma))
        slope = (returned(sigma + h)[0] - returned(sigma - h)[0]) / (2 * h)
    except NoReturnError as e:
        raise LimitCycleNotFoundError(f"no periodic orbit through the section: {e}") from e

    stability = _stability(slope)
    notes = ()
    if stability is Stability.MARGINAL:
        notes = (
            "return map slope is 1 within 1e-3: orbit may belong to a non-isolated "
            "family of periodic orbits (not a limit cycle)",
        )
    start = section.point(sigma)
    cycle = integrate(system, start, period, tol=max(tol, MIN_TOL))
    points = cycle.sample(np.linspace(0.0, period, CYCLE_SAMPLES))
    logger.debug(f"Cycle through {tuple(hit)}: period {period:.9g}, slope {slope:.6g}")
    return LimitCycleReport(
        period=float(period),
        points=points,
        amplitude_x=float(np.max(np.abs(points[:, 0]))),
        return_map_slope=float(slope),
        stability=stability,
        crossing=hit,
        iterations=iteration,
        notes=notes,
    )


def format_csv(times, states):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "x", "y"])
    for t, (x, y) in zip(times, states):
        writer.writerow([f"{t:.17g}", f"{x:.17g}", f"{y:.17g}"])
    return buf.getvalue()


def trajectory_csv(trajectory):
    return format_csv(trajectory.times, trajectory.states)


def cycle_csv(report, times=None):
    if times is None:
        times = np.linspace(0.0, report.period, len(report.points))
    return format_csv(times, report.points)


def read_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    times = np.array([float(r["t"]) for r in rows])
    states = np.array([[float(r["x"]), float(r["y"])] for r in rows]).reshape(-1, 2)
    return times, states


def reverse_trajectory(system, trajectory, tol=None):
    span = float(trajectory.times[-1] - trajectory.times[0])
    return integrate(system, trajectory.end, -span, tol or trajectory.tolerance)

