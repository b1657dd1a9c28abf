"""Best-effort phase portrait analysis of a region.

1. locate and classify equilibria;
2. certify local Dulac functions at hyperbolic ones and grow their boxes;
3. tile the rest of the region and certify tiles with Bendixson's criterion;
4. look for periodic orbits from the tiles that could not be certified.

Nothing here claims the coverage is maximal.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, NamedTuple

import numpy as np

from os_dulac import report as rp
from os_dulac.batch import ordered_map
from os_dulac.bernstein import certify_positive
from os_dulac.config import KitConfig
from os_dulac.dulac import P_CONNECTED_NOTE, bendixson
from os_dulac.equilibria import find_equilibria
from os_dulac.exceptions import LimitCycleNotFoundError, OsDulacError
from os_dulac.flow import Section, Stability, detect_limit_cycle
from os_dulac.geometry import Box2, Point
from os_dulac.synthesis import local_dulac_hyperbolic, merge_certificates

EXIT_CERTIFIED, EXIT_CYCLE, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3
DUPLICATE_CYCLE_DISTANCE = 1e-2

logger = logging.getLogger(__name__)


class LocalCertificate(NamedTuple):
    equilibrium: Point
    multiplier: object
    box: Box2
    certificate: object
    hole: Box2


class CertifiedBox(NamedTuple):
    box: Box2
    certificate: object


@dataclass
class AnalysisReport:
    system: str
    region: Box2
    equilibria: List = field(default_factory=list)
    local_certificates: List[LocalCertificate] = field(default_factory=list)
    global_boxes_certified: List[CertifiedBox] = field(default_factory=list)
    uncovered_regions: List[Box2] = field(default_factory=list)
    limit_cycles: List = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def exit_code(self):
        if self.limit_cycles:
            return EXIT_CYCLE
        if self.uncovered_regions:
            return EXIT_INCONCLUSIVE
        return EXIT_CERTIFIED

    def to_report(self, command="analyze"):
        result = {
            "region": str(self.region),
            "equilibria": [rp.equilibrium(e) for e in self.equilibria],
            "local_certificates": [
                {
                    "equilibrium": rp.point(c.equilibrium),
                    "multiplier": str(c.multiplier),
                    "box": str(c.box),
                    "hole": str(c.hole),
                    "certificate": rp.certificate_model(c.certificate).model_dump(
                        mode="json"
                    ),
                }
                for c in self.local_certificates
            ],
            "global_boxes_certified": [str(c.box) for c in self.global_boxes_certified],
            "uncovered_regions": [str(b) for b in self.uncovered_regions],
            "limit_cycles": [c.summary() for c in self.limit_cycles],
            "exit_code": self.exit_code,
        }
        return rp.Report(
            system=self.system, command=command, result=result, notes=list(self.notes)
        )


class Analyzer(object):
    def __init__(self, system, region, config=None):
        self.system = system
        self.region = region
        self.config = config or KitConfig()
        self.logger = logging.getLogger(self.__class__.__name__)
        self.report = AnalysisReport(str(system).strip(), region)

    def note(self, message, level=logging.INFO):
        self.logger.log(level, message)
        self.report.notes.append(message)

    def run(self):
        self.find_equilibria()
        self.certify_locally()
        self.certify_tiles()
        self.scan_cycles()
        self.check_consistency()
        self.note(
            "coverage is best effort: boxes grow on a fixed doubling schedule and "
            "maximality is not proven"
        )
        return self.report

    def find_equilibria(self):
        c = self.config
        try:
            self.report.equilibria = find_equilibria(
                self.system,
                self.region,
                grid_n=c.GRID_N,
                tol=c.TOL,
                threshold=c.CLASSIFY_THRESHOLD,
                dedup_radius=c.DEDUP_RADIUS,
            )
        except OsDulacError as e:
            self.note(f"equilibrium search failed: {e}", logging.WARNING)
        self.logger.debug(f"{len(self.report.equilibria)} equilibria in {self.region}")

    def certify_locally(self):
        c = self.config
        for eq in self.report.equilibria:
            z = eq.location
            if not eq.hyperbolic:
                self.note(
                    f"equilibrium ({z.x:.6g}, {z.y:.6g}) is "
                    f"{eq.classification.value} and not hyperbolic; no local "
                    f"Dulac function attempted",
                    logging.WARNING,
                )
                continue
            try:
                local = local_dulac_hyperbolic(
                    self.system,
                    z,
                    min_radius=c.MIN_RADIUS,
                    max_depth=c.DEPTH,
                    workers=c.WORKERS,
                    tol=max(c.TOL, 1e-10),
                )
            except OsDulacError as e:
                self.note(f"local Dulac at ({z.x:.6g}, {z.y:.6g}) failed: {e}")
                continue
            self.report.local_certificates.append(self.grow(z, local))

    def grow(self, z, local):
        """Double the local box while the new outer ring certifies inside the region."""
        carrier = local.certificate.carrier
        center = local.box.center
        radius = local.box.width / 2
        pieces = [local.certificate]
        while not Box2.centered(center, radius).contains_box(self.region):
            bigger = 2 * radius
            rects = [
                r.intersect(self.region) for r in Box2.centered(center, bigger).ring()
            ]
            rects = [r for r in rects if r is not None]
            certs = ordered_map(
                lambda r: certify_positive(carrier, r, self.config.DEPTH),
                rects,
                self.config.WORKERS,
            )
            if not all(cert.is_positive for cert in certs):
                break
            pieces.extend(certs)
            radius = bigger
        box = Box2.centered(center, radius).intersect(self.region)
        certificate = merge_certificates(pieces, carrier, box)
        self.logger.debug(f"Local box at {z} grown to half-width {radius}")
        return LocalCertificate(z, local.multiplier, box, certificate, local.hole)

    def cells(self):
        r = self.region
        tiles = self.config.TILES
        xs = {r.x_min + r.width * Fraction(i, tiles) for i in range(tiles + 1)}
        ys = {r.y_min + r.height * Fraction(j, tiles) for j in range(tiles + 1)}
        for local in self.report.local_certificates:
            for b in (local.box, local.hole.intersect(r)):
                if b is None:
                    continue
                xs.update((b.x_min, b.x_max))
                ys.update((b.y_min, b.y_max))
        xs = sorted(v for v in xs if r.x_min <= v <= r.x_max)
        ys = sorted(v for v in ys if r.y_min <= v <= r.y_max)
        return [
            Box2(x0, x1, y0, y1)
            for x0, x1 in zip(xs, xs[1:])
            for y0, y1 in zip(ys, ys[1:])
        ]

    def locally_covered(self, cell):
        for local in self.report.local_certificates:
            if local.box.contains_box(cell) and local.hole.intersect(cell) is None:
                return True
        return False

    def certify_tiles(self):
        c = self.config
        pending = [cell for cell in self.cells() if not self.locally_covered(cell)]
        results = ordered_map(
            lambda cell: bendixson(self.system, cell, max_depth=c.DEPTH), pending, c.WORKERS
        )
        for cell, dulac in zip(pending, results):
            if dulac.certified:
                self.report.global_boxes_certified.append(
                    CertifiedBox(cell, dulac.certificate)
                )
            else:
                self.report.uncovered_regions.append(cell)
        self.logger.debug(
            f"Tiles: {len(self.report.global_boxes_certified)} certified, "
            f"{len(self.report.uncovered_regions)} uncovered"
        )
        if self.encloses_uncovered():
            self.note(P_CONNECTED_NOTE)

    def encloses_uncovered(self):
        """Some connected group of uncovered cells does not reach the region boundary."""
        cells = self.report.uncovered_regions
        r = self.region
        seen = set()
        for start in range(len(cells)):
            if start in seen:
                continue
            group, stack = [], [start]
            seen.add(start)
            while stack:
                i = stack.pop()
                group.append(cells[i])
                for j, other in enumerate(cells):
                    if j not in seen and _touching(cells[i], other):
                        seen.add(j)
                        stack.append(j)
            if not any(_on_boundary(b, r) for b in group):
                return True
        return False

    def scan_seeds(self):
        anchors = [e.location for e in self.report.equilibria] or [
            Point(*(float(v) for v in self.region.center))
        ]

        def priority(cell):
            cx, cy = (float(v) for v in cell.center)
            return (min(Point(cx, cy).distance(a) for a in anchors), cx, cy)

        return [
            Point(*(float(v) for v in cell.center))
            for cell in sorted(self.report.uncovered_regions, key=priority)
        ]

    def scan_cycles(self):
        c = self.config
        found = self.report.limit_cycles
        tried = 0
        for seed in self.scan_seeds():
            if tried >= c.MAX_SCAN_SEEDS:
                break
            if any(cycle.bounding_box().contains(seed.x, seed.y) for cycle in found):
                continue
            if self.system.speed(seed.x, seed.y) < 1e-8:
                continue
            tried += 1
            try:
                cycle = detect_limit_cycle(
                    self.system,
                    Section.through(self.system, seed),
                    seed,
                    max_iters=c.MAX_ITERS,
                    max_time=3 * c.T_SPAN,
                )
            except LimitCycleNotFoundError as e:
                self.logger.debug(f"No cycle from {seed}: {e}")
                continue
            except OsDulacError as e:
                self.logger.warning(f"Cycle scan from {seed} failed: {e}")
                continue
            if any(_same_cycle(cycle, other) for other in found):
                continue
            found.append(cycle)
            self.note(
                f"periodic orbit through ({cycle.crossing.x:.6g}, "
                f"{cycle.crossing.y:.6g}): period {cycle.period:.6g}, "
                f"{cycle.stability.value}"
            )
            if cycle.stability is Stability.MARGINAL:
                self.note(
                    "return map is marginal: the periodic orbits form a "
                    "non-isolated family; scan stopped"
                )
                break

    def check_consistency(self):
        boxes = [c.box for c in self.report.global_boxes_certified]
        for cycle in self.report.limit_cycles:
            for box in boxes:
                if cycle.inside(box):
                    self.note(
                        f"inconsistent: a periodic orbit lies inside certified box {box}",
                        logging.ERROR,
                    )


def _on_boundary(box, region):
    return (
        box.x_min == region.x_min
        or box.x_max == region.x_max
        or box.y_min == region.y_min
        or box.y_max == region.y_max
    )


def _touching(a, b):
    if a.x_max == b.x_min or b.x_max == a.x_min:
        return min(a.y_max, b.y_max) > max(a.y_min, b.y_min)
    if a.y_max == b.y_min or b.y_max == a.y_min:
        return min(a.x_max, b.x_max) > max(a.x_min, b.x_min)
    return False


def _same_cycle(a, b):
    """``a`` crosses its section on the sampled closed curve of ``b``."""
    p = np.array([a.crossing.x, a.crossing.y])
    start, step = b.points[:-1], b.points[1:] - b.points[:-1]
    length = np.maximum(np.einsum("ij,ij->i", step, step), np.finfo(float).tiny)
    t = np.clip(np.einsum("ij,ij->i", p - start, step) / length, 0.0, 1.0)
    nearest = start + t[:, None] * step
    d = np.hypot(nearest[:, 0] - p[0], nearest[:, 1] - p[1])
    return float(d.min()) < DUPLICATE_CYCLE_DISTANCE


def run_analyze(system, region, config=None):
    return Analyzer(system, region, config).run()

