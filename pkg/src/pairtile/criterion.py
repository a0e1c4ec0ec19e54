"""Exact decision of multiple lattice tilings for polygons with paired edges.

Two deciders are provided:

* :func:`check_lattice_tiling` works for any region with the pairing
  property.  A pair ``(e, tau)`` is fine when ``tau`` is a lattice vector, or
  when ``e`` is a lattice vector and ``tau + theta*e`` is one for some
  ``0 < theta < 1``.
* :func:`check_bolle` is the older edge-by-edge test for convex regions that
  are symmetric about the origin.

Both return a :class:`TilingVerdict` whose justifications can be re-checked
against the lattice without trusting this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonIntegerWeight, NotConvex, NotSymmetric
from .geometry import (
    EdgePair,
    PolygonalRegion,
    Rational2,
    area,
    extract_pairing,
    is_centrally_symmetric,
    is_convex,
)
from .lattice import Lattice, segment_interior_point


class Rule(enum.Enum):
    TAU_IN_LATTICE = "TauInLattice"
    EDGE_RULE = "EdgeRule"
    FAILS = "Fails"


@dataclass(frozen=True)
class PairJustification:
    pair: EdgePair
    rule: Rule
    theta: Fraction | None = None

    def __post_init__(self):
        if self.rule is Rule.EDGE_RULE:
            if self.theta is None or not 0 < self.theta < 1:
                raise ValueError("EdgeRule needs 0 < theta < 1")
        elif self.theta is not None:
            raise ValueError(f"{self.rule.value} carries no theta")

    def recheck(self, lattice: Lattice) -> bool:
        """Re-verify the certificate from scratch (Fails re-checks as 'no rule applies')."""
        e, tau = self.pair.e, self.pair.tau
        if self.rule is Rule.TAU_IN_LATTICE:
            return lattice.contains(tau)
        if self.rule is Rule.EDGE_RULE:
            return lattice.contains(e) and lattice.contains(tau + e * self.theta)
        return not lattice.contains(tau) and (
            not lattice.contains(e) or segment_interior_point(lattice, tau, e) is None
        )


@dataclass(frozen=True)
class TilingVerdict:
    tiles: bool
    weight: int | None
    justifications: tuple[PairJustification, ...] = field(default_factory=tuple)
    witness_pair: int | None = None
    criterion: str = "pairing"

    def __post_init__(self):
        if self.tiles and (self.weight is None or self.weight < 1):
            raise ValueError("a tiling verdict needs a positive weight")
        if not self.tiles and self.witness_pair is None:
            raise ValueError("a negative verdict needs a failing pair index")

    @property
    def failure_witness(self) -> int | None:
        return self.witness_pair


def judge_pair(pair: EdgePair, lattice: Lattice) -> PairJustification:
    if lattice.contains(pair.tau):
        return PairJustification(pair, Rule.TAU_IN_LATTICE)
    if lattice.contains(pair.e):
        theta = segment_interior_point(lattice, pair.tau, pair.e)
        if theta is not None:
            return PairJustification(pair, Rule.EDGE_RULE, theta)
    return PairJustification(pair, Rule.FAILS)


def _weight(region: PolygonalRegion, lattice: Lattice) -> int:
    w = area(region) / lattice.det()
    if w.denominator != 1 or w < 1:
        raise NonIntegerWeight(
            f"criterion holds but area/det = {w} is not a positive integer",
            weight=str(w),
        )
    return int(w)


def _verdict(region, lattice, justifications, criterion) -> TilingVerdict:
    failing = [i for i, j in enumerate(justifications) if j.rule is Rule.FAILS]
    if failing:
        return TilingVerdict(False, None, tuple(justifications), failing[0], criterion)
    return TilingVerdict(True, _weight(region, lattice), tuple(justifications), None, criterion)


def check_lattice_tiling(region: PolygonalRegion, lattice: Lattice) -> TilingVerdict:
    pairs = extract_pairing(region)
    return _verdict(region, lattice, [judge_pair(p, lattice) for p in pairs], "pairing")


def center(region: PolygonalRegion) -> tuple[PolygonalRegion, Rational2]:
    c = is_centrally_symmetric(region)
    if c is None:
        raise NotSymmetric("region is not centrally symmetric", field="polygons")
    return region.translate(-c), c


def check_bolle(region: PolygonalRegion, lattice: Lattice) -> TilingVerdict:
    """Edge conditions for a convex region symmetric about the origin.

    Every edge must have a point of (1/2)Lambda in its relative interior, and
    an edge whose midpoint is not in (1/2)Lambda must itself be a lattice
    vector.
    """
    if not is_convex(region):
        raise NotConvex("region is not convex", field="polygons")
    c = is_centrally_symmetric(region)
    if c is None:
        raise NotSymmetric("region is not centrally symmetric", field="polygons")
    if not c.is_zero():
        raise NotSymmetric(
            f"region is symmetric about {c}, not the origin; center it first",
            field="polygons",
            center=[str(c.x), str(c.y)],
        )
    half = lattice.halved()
    justifications = []
    for pair in extract_pairing(region):
        hits = []
        ok = True
        for start, end in pair.edges():
            e = end - start
            theta = segment_interior_point(half, start, e)
            mid = (start + end) / 2
            if theta is None or not (half.contains(mid) or lattice.contains(e)):
                ok = False
                break
            hits.append(start + e * theta)
        if not ok:
            justifications.append(PairJustification(pair, Rule.FAILS))
        elif half.contains(pair.midpoints[0]):
            justifications.append(PairJustification(pair, Rule.TAU_IN_LATTICE))
        else:
            justifications.append(PairJustification(pair, Rule.EDGE_RULE, _edge_theta(pair, hits[0])))
    return _verdict(region, lattice, justifications, "bolle")


def _edge_theta(pair: EdgePair, half_point: Rational2) -> Fraction:
    # first midpoint is -tau/2, so 2*half_point = -tau + t*e is in Lambda;
    # negate and use e in Lambda to bring the coefficient into (0, 1)
    t = (half_point * 2 + pair.tau).dot(pair.e) / pair.length_sq
    return (-t) % 1
