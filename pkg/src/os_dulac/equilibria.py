"""Zeros of the field and their linear type."""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from os_dulac.exceptions import NotAnEquilibriumError
from os_dulac.geometry import Point
from os_dulac.poly import Axis

CLASSIFY_THRESHOLD = 1e-9
EQUILIBRIUM_TOL = 1e-8
DEDUP_RADIUS = 1e-6
NEWTON_ITERS = 50

logger = logging.getLogger(__name__)


class Classification(str, Enum):
    NODE = "Node"
    SADDLE = "Saddle"
    FOCUS = "Focus"
    CENTER_CANDIDATE = "CenterCandidate"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class EquilibriumReport:
    location: Point
    jacobian: Tuple[Tuple[float, float], Tuple[float, float]]
    eigenvalues: Tuple[complex, complex]
    classification: Classification
    hyperbolic: bool
    stable: Optional[bool] = None


def eigenvalues_2x2(jacobian):
    """Closed form ``tr/2 -+ sqrt(tr^2/4 - det)``, ordered by imaginary then real part."""
    (a, b), (c, d) = jacobian
    half = (a + d) / 2
    disc = half * half - (a * d - b * c)
    if disc >= 0:
        root = np.sqrt(disc)
        return (complex(half - root, 0.0), complex(half + root, 0.0))
    root = np.sqrt(-disc)
    return (complex(half, -root), complex(half, root))


def classify_eigenvalues(eigenvalues, threshold=CLASSIFY_THRESHOLD):
    """``(classification, hyperbolic, stable)`` for a pair of eigenvalues.

    ``threshold`` is relative to the largest eigenvalue modulus.
    """
    scale = max(abs(v) for v in eigenvalues)
    eps = threshold * scale
    re = [v.real for v in eigenvalues]
    hyperbolic = all(abs(r) > eps for r in re)
    stable = all(r < 0 for r in re) if hyperbolic else None
    if any(abs(v) <= eps for v in eigenvalues):
        return Classification.DEGENERATE, hyperbolic, stable
    if abs(eigenvalues[0].imag) > eps:
        if abs(re[0]) <= eps:
            return Classification.CENTER_CANDIDATE, hyperbolic, stable
        return Classification.FOCUS, hyperbolic, stable
    if re[0] * re[1] > 0:
        return Classification.NODE, hyperbolic, stable
    return Classification.SADDLE, hyperbolic, stable


def classify_equilibrium(
    system, z, threshold=CLASSIFY_THRESHOLD, tol=EQUILIBRIUM_TOL
):
    z = Point(float(z[0]), float(z[1]))
    residual = float(system.speed(z.x, z.y))
    if not residual <= tol:
        raise NotAnEquilibriumError(z, residual)
    J = system.jacobian_at(z.x, z.y)
    eig = eigenvalues_2x2(J)
    kind, hyperbolic, stable = classify_eigenvalues(eig, threshold)
    return EquilibriumReport(
        z, tuple(tuple(float(v) for v in row) for row in J), eig, kind, hyperbolic, stable
    )


def newton_zeros(
    f,
    g,
    box,
    grid_n=32,
    tol=1e-10,
    max_iters=NEWTON_ITERS,
    dedup_radius=DEDUP_RADIUS,
):
    """Common real zeros of two real polynomials inside ``box``.

    Vectorized Newton iteration from a ``grid_n x grid_n`` seed grid; converged
    points are merged within ``dedup_radius`` and sorted by ``(x, y)``.
    """
    if grid_n < 2:
        raise ValueError(f"grid_n must be at least 2, got {grid_n}")
    fx, fy, gx, gy = f.derive(Axis.X), f.derive(Axis.Y), g.derive(Axis.X), g.derive(Axis.Y)
    x0, x1, y0, y1 = box.as_floats()
    xs, ys = np.meshgrid(np.linspace(x0, x1, grid_n), np.linspace(y0, y1, grid_n))
    x, y = xs.ravel(), ys.ravel()

    with np.errstate(all="ignore"):
        for _ in range(max_iters):
            F, G = f(x, y), g(x, y)
            a, b, c, d = fx(x, y), fy(x, y), gx(x, y), gy(x, y)
            det = a * d - b * c
            dx = (d * F - b * G) / det
            dy = (a * G - c * F) / det
            stalled = ~(np.isfinite(dx) & np.isfinite(dy))
            x = x - np.where(stalled, 0.0, dx)
            y = y - np.where(stalled, 0.0, dy)
        residual = np.hypot(f(x, y), g(x, y))

    ok = (
        np.isfinite(residual)
        & (residual <= tol)
        & (x >= x0)
        & (x <= x1)
        & (y >= y0)
        & (y <= y1)
    )
    kept = []
    for i in np.argsort(np.where(ok, residual, np.inf)):
        if not ok[i]:
            break
        p = Point(float(x[i]), float(y[i]))
        if all(p.distance(q) > dedup_radius for q in kept):
            kept.append(p)
    logger.debug(f"Newton: {int(ok.sum())} converged seeds, {len(kept)} distinct zeros")
    return sorted(kept)


def find_equilibria(
    system,
    box,
    grid_n=32,
    tol=1e-10,
    threshold=CLASSIFY_THRESHOLD,
    dedup_radius=DEDUP_RADIUS,
):
    zeros = newton_zeros(
        system.p, system.q, box, grid_n=grid_n, tol=tol, dedup_radius=dedup_radius
    )
    return [classify_equilibrium(system, z, threshold, max(tol, EQUILIBRIUM_TOL)) for z in zeros]
