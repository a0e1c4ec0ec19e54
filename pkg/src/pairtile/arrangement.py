"""Exact vertical (slab) decomposition of a segment arrangement inside a box.

The window is cut at the x-coordinate of every segment endpoint and every
crossing.  Inside each open slab no two segments cross, so they are totally
ordered by height and the pieces between consecutive segments are
trapezoids.  Every face of the arrangement is a union of such trapezoids,
so anything constant on faces can be checked trapezoid by trapezoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .geometry import BBox, Rational2


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def simplest_between(lo: Fraction, hi: Fraction | None) -> Fraction:
    """Rational with the smallest denominator in the open interval (lo, hi).

    ``hi=None`` stands for +infinity.  Ties go to the value nearest zero.
    """
    if hi is not None and hi <= 0:
        return -simplest_between(-hi, -lo)
    if lo < 0:
        return Fraction(0)
    m = _floor(lo)
    if hi is None or m + 1 < hi:
        return Fraction(m + 1)
    # no integer inside: x = m + 1/y with y in (1/(hi-m), 1/(lo-m))
    y = simplest_between(1 / (hi - m), None if lo == m else 1 / (lo - m))
    return m + 1 / y


def simplicity_key(p: Rational2):
    return (max(p.x.denominator, p.y.denominator), abs(p.x) + abs(p.y), p.x, p.y)


@dataclass(frozen=True)
class Segment:
    """Closed segment stored left to right (bottom to top when vertical).

    ``sign`` is the jump in the tracked count when the segment is crossed
    upwards.
    """

    p: Rational2
    q: Rational2
    sign: int = 0

    @classmethod
    def boundary_edge(cls, start: Rational2, end: Rational2) -> Segment:
        """Edge of a counter-clockwise polygon: the interior lies to its left,
        so crossing upwards enters on rightward edges and leaves on leftward ones."""
        sign = (end.x > start.x) - (end.x < start.x)
        if (end.x, end.y) < (start.x, start.y):
            start, end = end, start
        return cls(start, end, sign)

    def is_vertical(self) -> bool:
        return self.p.x == self.q.x

    def y_at(self, x: Fraction) -> Fraction:
        p, q = self.p, self.q
        return p.y + (x - p.x) * (q.y - p.y) / (q.x - p.x)


def clip_to_box(a: Rational2, b: Rational2, box: BBox) -> tuple[Rational2, Rational2] | None:
    """Liang-Barsky clip of segment [a, b] to a closed box, exactly."""
    t0, t1 = Fraction(0), Fraction(1)
    dx, dy = b.x - a.x, b.y - a.y
    for p, q in ((-dx, a.x - box.xmin), (dx, box.xmax - a.x), (-dy, a.y - box.ymin), (dy, box.ymax - a.y)):
        if p == 0:
            if q < 0:
                return None
            continue
        r = q / p
        if p < 0:
            if r > t1:
                return None
            t0 = max(t0, r)
        else:
            if r < t0:
                return None
            t1 = min(t1, r)
    pa = a if t0 == 0 else Rational2(a.x + t0 * dx, a.y + t0 * dy)
    pb = b if t1 == 1 else Rational2(a.x + t1 * dx, a.y + t1 * dy)
    return pa, pb


def crossing_xs(segments: Sequence[Segment]) -> set[Fraction]:
    """x-coordinates of all transversal crossings between segments."""
    order = sorted(range(len(segments)), key=lambda i: segments[i].p.x)
    xs: set[Fraction] = set()
    for ii, i in enumerate(order):
        s = segments[i]
        sp, sq = s.p, s.q
        d1x, d1y = sq.x - sp.x, sq.y - sp.y
        ylo, yhi = min(sp.y, sq.y), max(sp.y, sq.y)
        for j in order[ii + 1:]:
            t = segments[j]
            if t.p.x > sq.x:
                break
            if max(t.p.y, t.q.y) < ylo or min(t.p.y, t.q.y) > yhi:
                continue
            d2x, d2y = t.q.x - t.p.x, t.q.y - t.p.y
            den = d1x * d2y - d1y * d2x
            if den == 0:
                continue  # parallel: overlaps only matter at endpoints
            wx, wy = t.p.x - sp.x, t.p.y - sp.y
            u = (wx * d2y - wy * d2x) / den
            if not 0 <= u <= 1:
                continue
            v = (wx * d1y - wy * d1x) / den
            if 0 <= v <= 1:
                xs.add(sp.x + u * d1x)
    return xs


@dataclass(frozen=True)
class Cell:
    """Open trapezoid x0 < x < x1 between two consecutive boundaries."""

    x0: Fraction
    x1: Fraction
    lower: tuple[Fraction, Fraction]
    upper: tuple[Fraction, Fraction]
    point: Rational2
    count: int

    def polygon(self) -> list[Rational2]:
        pts = [
            Rational2(self.x0, self.lower[0]),
            Rational2(self.x1, self.lower[1]),
            Rational2(self.x1, self.upper[1]),
            Rational2(self.x0, self.upper[0]),
        ]
        out: list[Rational2] = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        if len(out) > 1 and out[0] == out[-1]:
            out.pop()
        return out

    def area(self) -> Fraction:
        return (self.x1 - self.x0) * ((self.upper[0] - self.lower[0]) + (self.upper[1] - self.lower[1])) / 2


def decompose(
    segments: Iterable[Segment],
    window: BBox,
    count_at: Callable[[Rational2], int],
) -> list[Cell]:
    """Trapezoids of the arrangement of ``segments`` (already clipped to ``window``).

    ``count_at`` is called once per slab, at the lowest trapezoid; the count
    in the others follows from the ``sign`` of each segment crossed on the
    way up.
    """
    segs = [s for s in segments if s.p != s.q]
    xs = {window.xmin, window.xmax}
    for s in segs:
        xs.add(s.p.x)
        xs.add(s.q.x)
    xs |= crossing_xs(segs)
    xs = sorted(x for x in xs if window.xmin <= x <= window.xmax)

    slanted = sorted((s for s in segs if not s.is_vertical()), key=lambda s: s.p.x)
    cells: list[Cell] = []
    start = 0
    for x0, x1 in zip(xs, xs[1:]):
        xm = simplest_between(x0, x1)
        while start < len(slanted) and slanted[start].q.x <= x0:
            start += 1
        levels: dict[Fraction, list] = {}
        for s in slanted[start:]:
            if s.p.x > x0:
                if s.p.x >= x1:
                    break
                continue
            if s.q.x < x1:
                continue
            ym = s.y_at(xm)
            entry = levels.get(ym)
            if entry is None:
                levels[ym] = [s, s.sign]
            else:
                entry[1] += s.sign
        bounds: list[tuple[Fraction, Fraction, Fraction, int]] = [(window.ymin, window.ymin, window.ymin, 0)]
        for ym in sorted(levels):
            s, sign = levels[ym]
            if ym == window.ymin:
                continue
            if ym == window.ymax:
                continue
            bounds.append((ym, s.y_at(x0), s.y_at(x1), sign))
        bounds.append((window.ymax, window.ymax, window.ymax, 0))

        count = None
        for lo, hi in zip(bounds, bounds[1:]):
            point = Rational2(xm, simplest_between(lo[0], hi[0]))
            count = count_at(point) if count is None else count + lo[3]
            cells.append(Cell(x0, x1, (lo[1], lo[2]), (hi[1], hi[2]), point, count))
    return cells
