"""Brute-force ground truth: count how many translates cover each point.

Nothing here uses the edge-pair structure of the tile.  The exact verifier
lays out every translate that meets a window containing one full period,
cuts the window into trapezoids along all translate edges, and counts the
coverage of each trapezoid at an exact interior point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Union

from .arrangement import Cell, Segment, clip_to_box, decompose, simplicity_key
from .errors import DegenerateInput
from .geometry import BBox, Location, PolygonalRegion, Rational2, area, clip_convex, signed_area
from .lattice import Box, Lattice, QuasiPeriodicSet, TranslatedLattice, as_quasi_periodic

LatticeLike = Union[Lattice, TranslatedLattice, QuasiPeriodicSet]


@dataclass(frozen=True)
class Coverage:
    count: int
    on_boundary: bool


@dataclass(frozen=True)
class CoverageWitness:
    point: Rational2
    count_low: int
    count_high: int
    high_point: Rational2 | None = None


@dataclass(frozen=True)
class CoverageReport:
    """Outcome of an oracle run.

    ``exact`` reports are proofs.  Sampled reports with ``constant=True`` only
    say the coverage looked like ``weight`` at ``samples`` random points; a
    sampled witness is still definitive.
    """

    constant: bool
    weight: int | None
    witness: CoverageWitness | None = None
    exact: bool = True
    samples: int | None = None
    cells: int | None = None

    def __post_init__(self):
        if self.constant and self.weight is None:
            raise ValueError("constant coverage needs a weight")
        if not self.constant and self.witness is None:
            raise ValueError("non-constant coverage needs a witness")


def _translates_meeting(region: PolygonalRegion, lat: LatticeLike, box: BBox) -> list[Rational2]:
    """Every lambda (with multiplicity) such that bbox(K) + lambda meets ``box``."""
    kb = region.bbox()
    search = Box(box.xmin - kb.xmax, box.xmax - kb.xmin, box.ymin - kb.ymax, box.ymax - kb.ymin, closed=True)
    return as_quasi_periodic(lat).points_in_box(search)


def _count(region: PolygonalRegion, kbox: BBox, translates, x: Rational2) -> Coverage:
    count = 0
    boundary = False
    for lam in translates:
        p = x - lam
        if not kbox.contains(p):
            continue
        for comp in region.components:
            loc = comp.locate(p)
            if loc is Location.INTERIOR:
                count += 1
                break
            if loc is Location.BOUNDARY:
                boundary = True
    return Coverage(count, boundary)


def coverage_at(region: PolygonalRegion, lat: LatticeLike, x: Rational2) -> Coverage:
    """Number of translates K + lambda whose interior contains ``x``."""
    box = BBox(x.x, x.x, x.y, x.y)
    return _count(region, region.bbox(), _translates_meeting(region, lat, box), x)


def period_lattice(lat: LatticeLike) -> Lattice:
    """A lattice of periods of the (multi)set: the common sublattice of all parts."""
    if isinstance(lat, Lattice):
        return lat
    if isinstance(lat, TranslatedLattice):
        return lat.lattice
    return reduce(Lattice.intersection, (p.lattice for p, _ in lat.parts))


def _window(period: Lattice) -> BBox:
    d = period.fundamental_domain().bbox()
    mx, my = (d.xmax - d.xmin) / 4, (d.ymax - d.ymin) / 4
    return BBox(d.xmin - mx, d.xmax + mx, d.ymin - my, d.ymax + my)


def coverage_cells(region: PolygonalRegion, lat: LatticeLike) -> tuple[list[Cell], Lattice]:
    """Trapezoidal cells, with coverage counts, of a window holding one full period."""
    if area(region) <= 0:
        raise DegenerateInput("region has zero area", field="polygons")
    period = period_lattice(lat)
    window = _window(period)
    translates = _translates_meeting(region, lat, window)
    segments = []
    for lam in translates:
        for comp in region.components:
            for a, b in comp.edges():
                clipped = clip_to_box(a + lam, b + lam, window)
                if clipped is None:
                    continue
                segments.append(Segment.boundary_edge(*clipped))
    kbox = region.bbox()
    cells = decompose(segments, window, lambda x: _count(region, kbox, translates, x).count)
    return cells, period


def _witness(cells: list[Cell]) -> CoverageWitness:
    low = min(c.count for c in cells)
    high = max(c.count for c in cells)
    p_low = min((c.point for c in cells if c.count == low), key=simplicity_key)
    p_high = min((c.point for c in cells if c.count == high), key=simplicity_key)
    return CoverageWitness(p_low, low, high, p_high)


def verify_tiling_exact(region: PolygonalRegion, lat: LatticeLike) -> CoverageReport:
    """Decide exactly whether K + lat covers almost every point equally often.

    ``lat`` may be a lattice, a translated lattice or a quasi-periodic set;
    in the last case the common sublattice of its parts serves as period.
    """
    cells, _ = coverage_cells(region, lat)
    counts = {c.count for c in cells}
    if len(counts) == 1:
        (w,) = counts
        if w >= 1:
            return CoverageReport(True, w, None, exact=True, cells=len(cells))
    return CoverageReport(False, None, _witness(cells), exact=True, cells=len(cells))


def cell_area_in_domain(cell: Cell, period: Lattice) -> Fraction:
    """Area of the part of ``cell`` inside the period's fundamental parallelogram."""
    poly = cell.polygon()
    if len(poly) < 3:
        return Fraction(0)
    piece = clip_convex(poly, period.fundamental_domain().vertices)
    return signed_area(piece) if len(piece) >= 3 else Fraction(0)


def _sampling_box(region: PolygonalRegion, qps: QuasiPeriodicSet) -> BBox:
    boxes = [p.lattice.fundamental_domain().bbox() for p, _ in qps.parts]
    kb = region.bbox()
    span = max(max(b.xmax - b.xmin, b.ymax - b.ymin) for b in boxes)
    span = max(span, kb.xmax - kb.xmin, kb.ymax - kb.ymin) * 2
    return BBox(-span, span, -span, span)


SAMPLE_DENOMINATOR = 1_000_003


def verify_tiling_sampled(
    region: PolygonalRegion, lat: LatticeLike, samples: int, seed: int
) -> CoverageReport:
    """Coverage at ``samples`` pseudo-random rational points (boundary hits redrawn)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    qps = as_quasi_periodic(lat)
    rng = random.Random(seed)
    box = _sampling_box(region, qps)
    lo_x, hi_x = int(box.xmin * SAMPLE_DENOMINATOR), int(box.xmax * SAMPLE_DENOMINATOR)
    lo_y, hi_y = int(box.ymin * SAMPLE_DENOMINATOR), int(box.ymax * SAMPLE_DENOMINATOR)
    seen: dict[int, Rational2] = {}
    taken = 0
    while taken < samples:
        x = Rational2(
            Fraction(rng.randint(lo_x, hi_x), SAMPLE_DENOMINATOR),
            Fraction(rng.randint(lo_y, hi_y), SAMPLE_DENOMINATOR),
        )
        cov = coverage_at(region, qps, x)
        if cov.on_boundary:
            continue
        taken += 1
        seen.setdefault(cov.count, x)
    low, high = min(seen), max(seen)
    if low == high and low >= 1:
        return CoverageReport(True, low, None, exact=False, samples=samples)
    return CoverageReport(
        False, None, CoverageWitness(seen[low], low, high, seen[high]), exact=False, samples=samples
    )
