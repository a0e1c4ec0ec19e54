"""Exact planar geometry over the rationals.

All coordinates are :class:`fractions.Fraction`; nothing in this module ever
rounds.  Polygons are normalized on construction (duplicate vertices dropped,
collinear runs merged, orientation made counter-clockwise) and then validated.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import InvariantViolation, MultiComponent, NotPairing, UnequalLengths

Rational = Fraction


def as_fraction(value) -> Fraction:
    if type(value) is Fraction:
        return value
    if isinstance(value, float):
        raise TypeError(f"refusing to convert float {value!r} to an exact rational")
    return Fraction(value)


@dataclass(frozen=True, slots=True)
class Rational2:
    """Exact point / vector in the plane."""

    x: Fraction
    y: Fraction

    def __post_init__(self):
        if type(self.x) is not Fraction:
            object.__setattr__(self, "x", as_fraction(self.x))
        if type(self.y) is not Fraction:
            object.__setattr__(self, "y", as_fraction(self.y))

    def __add__(self, other: Rational2) -> Rational2:
        return Rational2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Rational2) -> Rational2:
        return Rational2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Rational2:
        return Rational2(-self.x, -self.y)

    def __mul__(self, s) -> Rational2:
        return Rational2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __truediv__(self, s) -> Rational2:
        return Rational2(self.x / s, self.y / s)

    def __iter__(self) -> Iterator[Fraction]:
        yield self.x
        yield self.y

    def dot(self, other: Rational2) -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Rational2) -> Fraction:
        return self.x * other.y - self.y * other.x

    def perp(self) -> Rational2:
        """Counter-clockwise rotation by a right angle."""
        return Rational2(-self.y, self.x)

    def norm_sq(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def key(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def __lt__(self, other: Rational2) -> bool:
        return (self.x, self.y) < (other.x, other.y)

    def __repr__(self) -> str:
        return f"Rational2({self.x}, {self.y})"


ORIGIN = Rational2(0, 0)


def vec(x, y) -> Rational2:
    return Rational2(x, y)


def has_canonical_sign(v: Rational2) -> bool:
    return v.x > 0 or (v.x == 0 and v.y > 0)


def canonical_sign(v: Rational2) -> Rational2:
    """Return ``v`` or ``-v``, whichever has x > 0 (or x == 0 and y > 0)."""
    if v.is_zero():
        raise InvariantViolation("zero vector has no canonical sign")
    return v if has_canonical_sign(v) else -v


def primitive_direction(v: Rational2) -> tuple[int, int]:
    """The primitive integer vector parallel to ``v`` with canonical sign."""
    if v.is_zero():
        raise InvariantViolation("zero vector has no direction")
    den = math.lcm(v.x.denominator, v.y.denominator)
    a, b = int(v.x * den), int(v.y * den)
    g = math.gcd(a, b)
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return (a, b)


def orient(a: Rational2, b: Rational2, c: Rational2) -> int:
    """Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear."""
    d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (d > 0) - (d < 0)


def on_segment(p: Rational2, a: Rational2, b: Rational2) -> bool:
    """True when p lies on the closed segment [a, b]."""
    if orient(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def segments_intersect(a: Rational2, b: Rational2, c: Rational2, d: Rational2) -> bool:
    """Closed-segment intersection test."""
    if orient(a, b, c) * orient(a, b, d) < 0 and orient(c, d, a) * orient(c, d, b) < 0:
        return True
    return on_segment(c, a, b) or on_segment(d, a, b) or on_segment(a, c, d) or on_segment(b, c, d)


def signed_area(points: Sequence[Rational2]) -> Fraction:
    n = len(points)
    s = Fraction(0)
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        s += p.x * q.y - q.x * p.y
    return s / 2


class Location(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    EXTERIOR = "Exterior"


@dataclass(frozen=True)
class BBox:
    xmin: Fraction
    xmax: Fraction
    ymin: Fraction
    ymax: Fraction

    @classmethod
    def of(cls, points: Iterable[Rational2]) -> BBox:
        pts = list(points)
        return cls(
            min(p.x for p in pts), max(p.x for p in pts), min(p.y for p in pts), max(p.y for p in pts)
        )

    def overlaps(self, other: BBox) -> bool:
        return not (
            self.xmax < other.xmin or other.xmax < self.xmin or self.ymax < other.ymin or other.ymax < self.ymin
        )

    def contains(self, p: Rational2) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax


def _normalize_ring(points: Sequence[Rational2], where: str) -> list[Rational2]:
    pts: list[Rational2] = []
    for p in points:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()

    changed = True
    while changed and len(pts) >= 3:
        changed = False
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            u, v = b - a, c - b
            if u.cross(v) == 0:
                if u.dot(v) > 0:
                    del pts[i]
                    changed = True
                    break
                raise InvariantViolation(
                    f"polygon folds back on itself at vertex {b}", field=where, vertex=_pt(b)
                )
    if len(pts) < 3:
        raise InvariantViolation("polygon has fewer than 3 distinct corners", field=where)
    return pts


def _pt(p: Rational2) -> list[str]:
    return [str(p.x), str(p.y)]


@dataclass(frozen=True)
class SimplePolygon:
    """Counter-clockwise simple polygon with rational vertices.

    The constructor normalizes its input, so ``SimplePolygon(pts)`` may hold
    fewer vertices than ``pts`` (collinear corners removed) or hold them in
    reverse order (clockwise input).
    """

    vertices: tuple[Rational2, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", _validated_ring(self.vertices, "polygon"))

    @classmethod
    def at(cls, points, where: str) -> SimplePolygon:
        """Build with error messages pointing at ``where`` (a JSON path)."""
        return _trusted_polygon(_validated_ring(points, where))

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[Rational2, Rational2]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def area(self) -> Fraction:
        return signed_area(self.vertices)

    def bbox(self) -> BBox:
        return BBox.of(self.vertices)

    def translate(self, t: Rational2) -> SimplePolygon:
        return _trusted_polygon(tuple(p + t for p in self.vertices))

    def scale(self, s) -> SimplePolygon:
        s = as_fraction(s)
        if s == 0:
            raise InvariantViolation("scale factor must be non-zero")
        # point reflection (s < 0) preserves orientation
        return _trusted_polygon(tuple(p * s for p in self.vertices))

    def locate(self, p: Rational2) -> Location:
        inside = False
        verts = self.vertices
        n = len(verts)
        for i in range(n):
            a, b = verts[i], verts[(i + 1) % n]
            if on_segment(p, a, b):
                return Location.BOUNDARY
            if (a.y > p.y) != (b.y > p.y):
                # x-coordinate of the crossing, compared without dividing
                t = (p.y - a.y) * (b.x - a.x) - (p.x - a.x) * (b.y - a.y)
                if (t > 0) == (b.y > a.y):
                    inside = not inside
        return Location.INTERIOR if inside else Location.EXTERIOR

    def is_convex(self) -> bool:
        v = self.vertices
        n = len(v)
        return all(orient(v[i - 1], v[i], v[(i + 1) % n]) > 0 for i in range(n))


def _validated_ring(points, where: str) -> tuple[Rational2, ...]:
    pts = _normalize_ring([p if isinstance(p, Rational2) else Rational2(*p) for p in points], where)
    a = signed_area(pts)
    if a == 0:
        raise InvariantViolation("polygon has zero area", field=where)
    if a < 0:
        pts.reverse()
    _check_simple(pts, where)
    return tuple(pts)


def _trusted_polygon(vertices: tuple[Rational2, ...]) -> SimplePolygon:
    # skips validation; only for images of valid polygons under similarities
    obj = object.__new__(SimplePolygon)
    object.__setattr__(obj, "vertices", vertices)
    return obj


def _check_simple(pts: list[Rational2], where: str) -> None:
    n = len(pts)
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    boxes = [BBox.of(e) for e in edges]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if boxes[i].overlaps(boxes[j]) and segments_intersect(*edges[i], *edges[j]):
                raise InvariantViolation(
                    f"polygon is not simple: edges {i} and {j} intersect",
                    field=where,
                    edges=[i, j],
                )


def triangulate(poly: SimplePolygon) -> list[tuple[Rational2, Rational2, Rational2]]:
    """Ear-clipping triangulation; triangles are counter-clockwise."""
    pts = list(poly.vertices)
    tris = []
    while len(pts) > 3:
        n = len(pts)
        for i in range(n):
            a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
            if orient(a, b, c) <= 0:
                continue
            blocked = False
            for p in pts:
                if p is a or p is b or p is c:
                    continue
                if orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0:
                    blocked = True
                    break
            if not blocked:
                tris.append((a, b, c))
                del pts[i]
                break
        else:  # pragma: no cover - impossible for a simple polygon
            raise InvariantViolation("ear clipping found no ear")
    if orient(*pts) > 0:
        tris.append(tuple(pts))
    return tris


def clip_convex(subject: Sequence[Rational2], window: Sequence[Rational2]) -> list[Rational2]:
    """Sutherland-Hodgman clip of ``subject`` by the convex CCW polygon ``window``."""
    out = list(subject)
    m = len(window)
    for i in range(m):
        if not out:
            break
        a, b = window[i], window[(i + 1) % m]
        edge = b - a
        src, out = out, []
        k = len(src)
        for j in range(k):
            p, q = src[j], src[(j + 1) % k]
            sp = edge.cross(p - a)
            sq = edge.cross(q - a)
            if sp >= 0:
                out.append(p)
            if (sp > 0 and sq < 0) or (sp < 0 and sq > 0):
                t = sp / (sp - sq)
                out.append(p + (q - p) * t)
    return out


def intersection_area(p: SimplePolygon, q: SimplePolygon) -> Fraction:
    if not p.bbox().overlaps(q.bbox()):
        return Fraction(0)
    total = Fraction(0)
    tq = triangulate(q)
    for t1 in triangulate(p):
        b1 = BBox.of(t1)
        for t2 in tq:
            if b1.overlaps(BBox.of(t2)):
                piece = clip_convex(t1, t2)
                if len(piece) >= 3:
                    total += signed_area(piece)
    return total


@dataclass(frozen=True)
class PolygonalRegion:
    """Finite union of interior-disjoint simple polygons (the tile K)."""

    components: tuple[SimplePolygon, ...]

    def __post_init__(self):
        comps = tuple(
            c if isinstance(c, SimplePolygon) else SimplePolygon.at(c, f"polygons[{i}]")
            for i, c in enumerate(self.components)
        )
        if not comps:
            raise InvariantViolation("region needs at least one polygon", field="polygons")
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                if intersection_area(comps[i], comps[j]) != 0:
                    raise InvariantViolation(
                        f"polygons {i} and {j} overlap (nested polygons and holes are not supported)",
                        field="polygons",
                        components=[i, j],
                    )
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_points(cls, *rings) -> PolygonalRegion:
        return cls(tuple(SimplePolygon(tuple(Rational2(*p) for p in ring)) for ring in rings))

    def edges(self) -> list[tuple[Rational2, Rational2]]:
        return [e for c in self.components for e in c.edges()]

    def vertices(self) -> list[Rational2]:
        return [v for c in self.components for v in c.vertices]

    def area(self) -> Fraction:
        return area(self)

    def bbox(self) -> BBox:
        return BBox.of(self.vertices())

    def translate(self, t: Rational2) -> PolygonalRegion:
        return _trusted_region(tuple(c.translate(t) for c in self.components))

    def scale(self, s) -> PolygonalRegion:
        return _trusted_region(tuple(c.scale(s) for c in self.components))

    def triangles(self) -> list[tuple[Rational2, Rational2, Rational2]]:
        return [t for c in self.components for t in triangulate(c)]


def _trusted_region(components: tuple[SimplePolygon, ...]) -> PolygonalRegion:
    obj = object.__new__(PolygonalRegion)
    object.__setattr__(obj, "components", components)
    return obj


def area(region: PolygonalRegion) -> Fraction:
    return sum((c.area() for c in region.components), Fraction(0))


def point_location(region: PolygonalRegion, p: Rational2) -> Location:
    result = Location.EXTERIOR
    for comp in region.components:
        if not comp.bbox().contains(p):
            continue
        loc = comp.locate(p)
        if loc is Location.BOUNDARY:
            return loc
        if loc is Location.INTERIOR:
            result = loc
    return result


@dataclass(frozen=True)
class EdgePair:
    """Two parallel edges of equal length; the second is the first moved by ``tau``.

    ``e`` is the edge vector with canonical sign, ``midpoints`` are ordered
    lexicographically and ``tau = midpoints[1] - midpoints[0]``.
    """

    e: Rational2
    tau: Rational2
    midpoints: tuple[Rational2, Rational2]
    length_sq: Fraction

    def __post_init__(self):
        if self.e.is_zero() or self.tau.is_zero():
            raise InvariantViolation("edge pair needs non-zero e and tau")
        if self.length_sq != self.e.norm_sq():
            raise InvariantViolation("length_sq must equal |e|^2")
        if self.midpoints[1] - self.midpoints[0] != self.tau:
            raise InvariantViolation("tau must join the two midpoints")

    @classmethod
    def from_vectors(cls, e: Rational2, tau: Rational2) -> EdgePair:
        """Pair with midpoints placed symmetrically at -tau/2 and tau/2."""
        e = canonical_sign(e)
        tau = canonical_sign(tau)
        return cls(e, tau, (tau * Fraction(-1, 2), tau * Fraction(1, 2)), e.norm_sq())

    def edges(self) -> tuple[tuple[Rational2, Rational2], tuple[Rational2, Rational2]]:
        h = self.e / 2
        return tuple((m - h, m + h) for m in self.midpoints)  # type: ignore[return-value]


def _angle_key(e: Rational2):
    # e has canonical sign: order by slope, vertical last
    return (0, e.y / e.x) if e.x > 0 else (1, Fraction(0))


def extract_pairing(region: PolygonalRegion) -> list[EdgePair]:
    """Group all edges of ``region`` into parallel pairs.

    Pairs come back sorted by the angle of ``e`` in (-pi/2, pi/2].
    """
    classes: dict[tuple[int, int], list[tuple[int, int, Rational2, Rational2]]] = defaultdict(list)
    for ci, comp in enumerate(region.components):
        for ei, (p, q) in enumerate(comp.edges()):
            classes[primitive_direction(q - p)].append((ci, ei, p, q))

    for direction, members in sorted(classes.items()):
        if len(members) != 2:
            raise NotPairing(
                f"direction {direction} has {len(members)} edges, expected 2",
                field="polygons",
                direction=list(direction),
                count=len(members),
                edges=[f"polygons[{ci}] edge {ei}" for ci, ei, _, _ in members],
            )

    unequal = []
    pairs = []
    for direction, members in sorted(classes.items()):
        (c1, i1, p1, q1), (c2, i2, p2, q2) = members
        v1, v2 = q1 - p1, q2 - p2
        where = [f"polygons[{c1}] edge {i1}", f"polygons[{c2}] edge {i2}"]
        if v1 != v2 and v1 != -v2:
            unequal.append({"direction": list(direction), "edges": where,
                            "lengths_sq": [str(v1.norm_sq()), str(v2.norm_sq())]})
            continue
        if v1 == v2:
            # boundary contributions with the same outward normal can never cancel
            raise NotPairing(
                f"the two edges of direction {direction} are traversed in the same sense",
                field="polygons",
                direction=list(direction),
                edges=where,
            )
        m1, m2 = (p1 + q1) / 2, (p2 + q2) / 2
        if v1.cross(m2 - m1) == 0:
            raise NotPairing(
                f"the two edges of direction {direction} lie on one line",
                field="polygons",
                direction=list(direction),
                edges=where,
            )
        if m2 < m1:
            m1, m2 = m2, m1
        e = canonical_sign(v1)
        pairs.append(EdgePair(e, m2 - m1, (m1, m2), e.norm_sq()))
    if unequal:
        raise UnequalLengths(
            "parallel edges of unequal length: the region cannot tile",
            field="polygons",
            pairs=unequal,
        )
    pairs.sort(key=lambda pr: _angle_key(pr.e))
    return pairs


def _cyclic_form(vertices: Sequence[Rational2]) -> tuple[Rational2, ...]:
    k = min(range(len(vertices)), key=lambda i: vertices[i].key())
    return tuple(vertices[k:]) + tuple(vertices[:k])


def is_centrally_symmetric(region: PolygonalRegion) -> Rational2 | None:
    """Center c with 2c - K = K, or None."""
    verts = region.vertices()
    c = Rational2(sum(v.x for v in verts), sum(v.y for v in verts)) / len(verts)
    forms = sorted(_cyclic_form(comp.vertices) for comp in region.components)
    images = sorted(_cyclic_form([c * 2 - v for v in comp.vertices]) for comp in region.components)
    return c if forms == images else None


def _single(region: PolygonalRegion, what: str) -> SimplePolygon:
    if len(region.components) != 1:
        raise MultiComponent(f"{what} is only defined for single-polygon regions", field="polygons")
    return region.components[0]


def is_convex(region: PolygonalRegion) -> bool:
    return _single(region, "convexity").is_convex()


def is_parallelogram(region: PolygonalRegion) -> bool:
    poly = _single(region, "parallelogram test")
    return len(poly) == 4 and poly.is_convex()
