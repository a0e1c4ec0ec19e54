"""Random pairing polygons and lattices with small denominators, for fuzzing.

All generators take a ``random.Random`` so runs are reproducible from a seed.
Hypothesis strategies built on the same constructions live at the bottom.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from hypothesis import strategies as st

from pairtile.errors import InvariantViolation
from pairtile.geometry import PolygonalRegion, Rational2, SimplePolygon, area, extract_pairing
from pairtile.lattice import Lattice

DIRECTIONS = sorted(
    {
        (x // math.gcd(x, y), y // math.gcd(x, y))
        for x in range(0, 4)
        for y in range(-3, 4)
        if (x, y) != (0, 0) and (x > 0 or y > 0)
    }
)


def _frac(rng: random.Random, dens=(1, 2, 4), lo=1, hi=2) -> Fraction:
    d = rng.choice(dens)
    return Fraction(rng.randint(lo * d, hi * d), d)


def _angle(v: Rational2) -> float:
    return math.atan2(float(v.y), float(v.x))


def _edge_vectors(rng: random.Random, n: int) -> list[Rational2]:
    dirs = rng.sample(DIRECTIONS, n)
    out = []
    for dx, dy in dirs:
        # keep edges short enough that the polygon stays desk-sized
        big = max(abs(dx), abs(dy)) > 1
        s = Fraction(rng.randint(1, 2), 4) * rng.choice((1, 2)) if big else _frac(rng)
        out.append(Rational2(dx * s, dy * s))
    return out


def _ring(start: Rational2, edges: list[Rational2]) -> list[Rational2]:
    pts = [start]
    for e in edges[:-1]:
        pts.append(pts[-1] + e)
    return pts


def symmetric_convex(rng: random.Random, n_pairs: int | None = None, centered: bool = True) -> PolygonalRegion:
    """Centrally symmetric convex 2n-gon (n = 2..4), centered at 0 unless asked otherwise."""
    n = n_pairs or rng.randint(2, 4)
    es = _edge_vectors(rng, n)
    ring = sorted(es + [-e for e in es], key=_angle)
    start = Rational2(0, 0)
    for e in ring[: len(ring) // 2]:
        start = start - e / 2
    pts = _ring(start, ring)
    if not centered:
        shift = Rational2(_frac(rng, lo=-1, hi=1), _frac(rng, lo=-1, hi=1))
        pts = [p + shift for p in pts]
    return PolygonalRegion((SimplePolygon(tuple(pts)),))


def lattice_vertex_convex(rng: random.Random) -> PolygonalRegion:
    """Symmetric convex polygon whose vertices are integer points."""
    n = rng.randint(2, 4)
    dirs = rng.sample(DIRECTIONS, n)
    es = [Rational2(dx * k, dy * k) for (dx, dy), k in zip(dirs, (rng.randint(1, 2) for _ in dirs))]
    ring = sorted(es + [-e for e in es], key=_angle)
    shift = Rational2(rng.randint(-2, 2), rng.randint(-2, 2))
    return PolygonalRegion((SimplePolygon(tuple(_ring(shift, ring))),))


def nonconvex_pairing(rng: random.Random, attempts: int = 200) -> PolygonalRegion:
    """Simple polygon with the pairing property, usually not convex."""
    for _ in range(attempts):
        n = rng.randint(3, 4)
        es = _edge_vectors(rng, n)
        ring = es + [-e for e in es]
        rng.shuffle(ring)
        start = Rational2(_frac(rng, lo=-1, hi=1), _frac(rng, lo=-1, hi=1))
        try:
            region = PolygonalRegion((SimplePolygon(tuple(_ring(start, ring))),))
            if len(region.components[0].vertices) != len(ring):
                continue
            extract_pairing(region)
        except InvariantViolation:
            continue
        return region
    raise RuntimeError("no simple pairing polygon found")


def two_triangles(rng: random.Random) -> PolygonalRegion:
    """T together with a disjoint copy of -T: each edge pairs with its reflection."""
    while True:
        a = Rational2(_frac(rng, lo=1, hi=2), 0) if rng.random() < 0.5 else Rational2(*_edge_vectors(rng, 1)[0])
        b = _edge_vectors(rng, 1)[0]
        if a.cross(b) != 0:
            break
    tri = [Rational2(0, 0), a, a + b]
    width = max(p.x for p in tri) - min(p.x for p in tri)
    gap = width + _frac(rng, dens=(2, 4), lo=1, hi=2) + max(abs(p.x) for p in tri)
    shift = Rational2(gap, _frac(rng, dens=(2,), lo=0, hi=1))
    other = [shift - p for p in tri]
    region = PolygonalRegion((SimplePolygon(tuple(tri)), SimplePolygon(tuple(other))))
    try:
        extract_pairing(region)
    except InvariantViolation:
        return two_triangles(rng)  # an edge and its partner ended up on one line
    return region


def random_region(rng: random.Random) -> PolygonalRegion:
    r = rng.random()
    if r < 0.45:
        return symmetric_convex(rng, centered=rng.random() < 0.5)
    if r < 0.85:
        return nonconvex_pairing(rng)
    return two_triangles(rng)


def random_lattice(rng: random.Random, max_den: int = 8) -> Lattice:
    dens = [d for d in (1, 2, 4, 8) if d <= max_den]
    while True:
        entries = [Fraction(rng.randint(-2 * d, 2 * d), d) for d in (rng.choice(dens) for _ in range(4))]
        v1, v2 = Rational2(entries[0], entries[1]), Rational2(entries[2], entries[3])
        if v1.cross(v2) != 0:
            return Lattice(v1, v2)


def justified_lattice(rng: random.Random, region: PolygonalRegion) -> Lattice | None:
    """Lattice generated so that every pair satisfies one of the two rules.

    Some pairs get tau, others e together with tau + theta*e (theta 1/2 or 1/4).
    Returns None when the vectors are dependent or denominators exceed 8.
    """
    vecs = []
    for p in extract_pairing(region):
        if rng.random() < 0.5:
            vecs.append(p.tau)
        else:
            vecs += [p.e, p.tau + p.e * rng.choice((Fraction(1, 2), Fraction(1, 4)))]
    try:
        lat = Lattice.generated_by(vecs)
    except InvariantViolation:
        return None
    if max(lat.a.denominator, lat.b.denominator, lat.c.denominator) > 8:
        return None
    return lat


def adapted_lattice(rng: random.Random, region: PolygonalRegion) -> Lattice:
    """Lattice spanned by a few of the pair vectors and their halves."""
    pool = []
    for p in extract_pairing(region):
        pool += [p.tau, p.e, p.tau + p.e / 2, p.tau * 2, p.e / 2, p.tau / 2]
    while True:
        v1, v2 = rng.sample(pool, 2)
        if v1.cross(v2) == 0:
            continue
        extra = rng.random() < 0.3
        vecs = [v1, v2] + ([rng.choice(pool)] if extra else [])
        lat = Lattice.generated_by(vecs)
        if max(lat.a.denominator, lat.b.denominator, lat.c.denominator) <= 8:
            return lat


def bounded_weight(region: PolygonalRegion, lat: Lattice, max_weight: int = 6) -> bool:
    return area(region) / lat.det() <= max_weight


def fuzz_case(rng: random.Random, max_weight: int = 6) -> tuple[PolygonalRegion, Lattice]:
    if rng.random() < 0.4:
        # aim for a tiling; most regions give too large a weight, so retry
        for _ in range(100):
            region = random_region(rng)
            lat = justified_lattice(rng, region)
            if lat is not None and bounded_weight(region, lat, max_weight):
                return region, lat
    region = random_region(rng)
    while True:
        lat = adapted_lattice(rng, region) if rng.random() < 0.7 else random_lattice(rng)
        if bounded_weight(region, lat, max_weight):
            return region, lat


# --- hypothesis strategies -----------------------------------------------------


def _seeded(builder):
    return st.integers(min_value=0, max_value=2**32 - 1).map(lambda s: builder(random.Random(s)))


symmetric_convex_regions = _seeded(symmetric_convex)
centered_symmetric_convex_regions = _seeded(lambda r: symmetric_convex(r, centered=True))
pairing_regions = _seeded(random_region)
fuzz_cases = _seeded(fuzz_case)
small_rationals = st.builds(
    Fraction, st.integers(min_value=-16, max_value=16), st.sampled_from([1, 2, 3, 4, 8])
)
rational_points = st.builds(Rational2, small_rationals, small_rationals)
lattices = _seeded(random_lattice)
