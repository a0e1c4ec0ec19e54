"""Zero sets of edge-pair Fourier transforms and related diagnostics.

For an edge pair ``(e, tau)`` let ``mu`` be arc length on the segment ``e``
centred at ``tau/2`` minus arc length on the same segment centred at
``-tau/2``.  Its Fourier transform is

    mu^(xi) = -2i |e| sinc(<e, xi>) sin(pi <tau, xi>),   sinc(x) = sin(pi x)/(pi x)

and vanishes exactly when ``<tau, xi>`` is an integer or ``<e, xi>`` is a
non-zero integer.  The zero set is therefore two families of parallel lines,
one of them missing its line through the origin.  Only ``e`` and ``tau``
enter; where the region sits in the plane is irrelevant here.

Everything symbolic is exact.  :func:`ft_eval`, :func:`density_at_zero` and
:func:`poisson_gaussian_sums` are floating-point diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import NotConvex, NotDiscrete, NotSymmetric, ZeroVector
from .geometry import (
    EdgePair,
    PolygonalRegion,
    Rational2,
    extract_pairing,
    is_centrally_symmetric,
    is_convex,
    is_parallelogram,
    primitive_direction,
)
from .lattice import Box, Lattice, QuasiPeriodicSet, TranslatedLattice, as_quasi_periodic


def geometric_inverse(v: Rational2) -> Rational2:
    """v / |v|^2."""
    n = v.norm_sq()
    if n == 0:
        raise ZeroVector("the zero vector has no geometric inverse")
    return v / n


@dataclass(frozen=True)
class Orientation:
    """Direction of a vector modulo sign, as a primitive integer vector."""

    dir: tuple[int, int]

    @classmethod
    def of(cls, v: Rational2) -> Orientation:
        return cls(primitive_direction(v))

    def __lt__(self, other: Orientation) -> bool:
        return self.dir < other.dir


@dataclass(frozen=True)
class LineFamily:
    """Z*w + R*w_perp: lines orthogonal to ``spacing``, |spacing| apart.

    A punctured family omits the line through the origin.
    """

    spacing: Rational2
    punctured: bool = False

    def __post_init__(self):
        if self.spacing.is_zero():
            raise ZeroVector("line family spacing must be non-zero")

    def index(self, xi: Rational2) -> Fraction:
        """Signed line coordinate of xi; xi is on a line iff this is an integer."""
        return xi.dot(self.spacing) / self.spacing.norm_sq()

    def contains(self, xi: Rational2) -> bool:
        k = self.index(xi)
        return k.denominator == 1 and not (self.punctured and k == 0)

    def lines_in_disc(self, radius) -> list[tuple[int, Rational2, Rational2]]:
        """(index, point on line, direction) for every line meeting the closed disc."""
        r2 = Fraction(radius) ** 2
        kmax = math.isqrt(math.floor(r2 / self.spacing.norm_sq()))
        out = []
        for k in range(-kmax, kmax + 1):
            if self.punctured and k == 0:
                continue
            out.append((k, self.spacing * k, self.spacing.perp()))
        return out

    def describe(self) -> dict:
        return {
            "spacing": [str(self.spacing.x), str(self.spacing.y)],
            "direction": [str(-self.spacing.y), str(self.spacing.x)],
            "punctured": self.punctured,
        }


@dataclass(frozen=True)
class ZeroSet:
    tau_family: LineFamily
    e_family: LineFamily

    def contains(self, xi: Rational2) -> bool:
        return self.tau_family.contains(xi) or self.e_family.contains(xi)


def zero_set(pair: EdgePair) -> ZeroSet:
    return ZeroSet(
        LineFamily(geometric_inverse(pair.tau), punctured=False),
        LineFamily(geometric_inverse(pair.e), punctured=True),
    )


def vanishes_at(pair: EdgePair, xi: Rational2) -> bool:
    a = pair.e.dot(xi)
    b = pair.tau.dot(xi)
    return b.denominator == 1 or (a.denominator == 1 and a != 0)


def _sinpi(x) -> float:
    if isinstance(x, Fraction):
        r = x % 2
        if r.denominator == 1:
            return 0.0
        return math.sin(math.pi * float(r))
    r = math.fmod(x, 2.0)
    return math.sin(math.pi * r)


def _sinc(x) -> float:
    if x == 0:
        return 1.0
    return _sinpi(x) / (math.pi * float(x))


def ft_eval(pair: EdgePair, xi) -> complex:
    """Closed-form Fourier transform of the pair measure at ``xi``.

    ``xi`` may be a :class:`Rational2` (inner products taken exactly before
    rounding) or any pair of floats.
    """
    if isinstance(xi, Rational2):
        a, b = pair.e.dot(xi), pair.tau.dot(xi)
    else:
        x, y = float(xi[0]), float(xi[1])
        a = float(pair.e.x) * x + float(pair.e.y) * y
        b = float(pair.tau.x) * x + float(pair.tau.y) * y
    length = math.sqrt(pair.length_sq)
    return complex(0.0, -2.0 * length * _sinc(a) * _sinpi(b))


@dataclass(frozen=True)
class QuasiPeriodicityCertificate:
    guaranteed: bool
    common_orientations: frozenset[Orientation]
    orientation_sets: tuple[frozenset[Orientation], ...] = ()


def _orientation_sets(pairs: Sequence[EdgePair]) -> list[frozenset[Orientation]]:
    return [frozenset({Orientation.of(p.e), Orientation.of(p.tau)}) for p in pairs]


def certificate_for_pairs(pairs: Sequence[EdgePair]) -> QuasiPeriodicityCertificate:
    sets = _orientation_sets(pairs)
    common = frozenset.intersection(*sets) if sets else frozenset()
    return QuasiPeriodicityCertificate(not common, common, tuple(sets))


def quasi_periodicity_certificate(region: PolygonalRegion) -> QuasiPeriodicityCertificate:
    """Every multiple tiling by ``region`` is quasi-periodic when ``guaranteed``.

    The condition: no single orientation occurs in the {orientation(e),
    orientation(tau)} set of every pair.
    """
    return certificate_for_pairs(extract_pairing(region))


@dataclass(frozen=True)
class ConvexClassification:
    guaranteed: bool
    parallelogram: bool


def convex_classifier(region: PolygonalRegion) -> ConvexClassification:
    """Symmetric convex regions tile only quasi-periodically unless parallelograms."""
    if not is_convex(region):
        raise NotConvex("region is not convex", field="polygons")
    if is_centrally_symmetric(region) is None:
        raise NotSymmetric("region is not centrally symmetric", field="polygons")
    para = is_parallelogram(region)
    return ConvexClassification(guaranteed=not para, parallelogram=para)


def _families(pair: EdgePair) -> list[tuple[Rational2, bool]]:
    # line {xi : <n, xi> = k}; punctured families skip k = 0
    return [(pair.tau, False), (pair.e, True)]


def _k_range(normal: Rational2, radius: Fraction, punctured: bool) -> list[int]:
    kmax = math.isqrt(math.floor(normal.norm_sq() * radius * radius))
    return [k for k in range(-kmax, kmax + 1) if not (punctured and k == 0)]


def zero_set_intersection_in_disc(pairs: Sequence[EdgePair], radius) -> list[Rational2]:
    """All points of the common zero set of ``pairs`` in the closed disc |xi| <= radius.

    Raises :class:`NotDiscrete` when the common zero set contains a line.
    """
    radius = Fraction(radius)
    if radius < 0:
        raise ValueError("radius must be non-negative")
    cert = certificate_for_pairs(pairs)
    if not cert.guaranteed:
        raise NotDiscrete(
            "the zero sets share an orientation, so their intersection contains lines",
            common_orientations=[list(o.dir) for o in sorted(cert.common_orientations)],
            families=[
                {"pair_index": i, "tau": zero_set(p).tau_family.describe(), "e": zero_set(p).e_family.describe()}
                for i, p in enumerate(pairs)
            ],
        )
    r2 = radius * radius
    found: set[Rational2] = set()
    first = pairs[0]
    for n_a, punct_a in _families(first):
        dir_a = primitive_direction(n_a)
        # a pair with no family parallel to this one cuts each of its lines in points
        other = next(
            p for p in pairs
            if dir_a not in (primitive_direction(p.e), primitive_direction(p.tau))
        )
        ka_values = _k_range(n_a, radius, punct_a)
        for n_b, punct_b in _families(other):
            d = n_a.x * n_b.y - n_a.y * n_b.x
            kb_values = _k_range(n_b, radius, punct_b)
            for ka in ka_values:
                for kb in kb_values:
                    xi = Rational2((ka * n_b.y - kb * n_a.y) / d, (n_a.x * kb - n_b.x * ka) / d)
                    if xi.norm_sq() <= r2 and all(vanishes_at(p, xi) for p in pairs):
                        found.add(xi)
    return sorted(found, key=lambda p: (p.norm_sq(), p.key()))


# --- numeric diagnostics -------------------------------------------------------

TRUNCATION_FACTOR = 6


def _lattice_points_array(part: TranslatedLattice, radius: float) -> np.ndarray:
    """Float coordinates of all points of ``part`` in the disc |x| <= radius."""
    lat = part.lattice
    a, b, c = float(lat.a), float(lat.b), float(lat.c)
    ox, oy = float(part.offset.x), float(part.offset.y)
    k1 = np.arange(math.floor((-radius - ox) / a) - 1, math.ceil((radius - ox) / a) + 2)
    x = ox + k1 * a
    base = oy + k1 * b
    lo = math.floor((-radius - base.max()) / c) - 1
    hi = math.ceil((radius - base.min()) / c) + 1
    k2 = np.arange(lo, hi + 1)
    xs = np.repeat(x, k2.size)
    ys = (base[:, None] + k2[None, :] * c).ravel()
    keep = xs * xs + ys * ys <= radius * radius
    return np.stack([xs[keep], ys[keep]], axis=1)


def density_at_zero(qps: Union[QuasiPeriodicSet, Lattice, TranslatedLattice], t: float) -> float:
    """Estimate of the mass of the Fourier transform of the point set at 0.

    Uses phi^(xi) = exp(-pi |xi|^2) (so phi(0) = 1): the estimate is
    t^-2 * sum over points lambda of phi^(lambda / t), truncated at
    |lambda| <= 6t.  It tends to the density sum(mult / det) as t grows.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    qps = as_quasi_periodic(qps)
    radius = TRUNCATION_FACTOR * t
    terms = []
    for part, mult in qps.parts:
        pts = _lattice_points_array(part, radius)
        r2 = (pts * pts).sum(axis=1) / (t * t)
        vals = np.exp(-math.pi * r2)
        terms.extend([float(v) for v in vals] * mult)
    return math.fsum(terms) / (t * t)


def density_truncation_bound(qps: Union[QuasiPeriodicSet, Lattice, TranslatedLattice], t: float) -> float:
    """Upper estimate of the tail dropped by :func:`density_at_zero`.

    Spreads each point over its fundamental cell (diameter d) and integrates
    the radial Gaussian beyond 6t - d: rho * exp(-pi (6t - d)^2 / t^2).
    """
    qps = as_quasi_periodic(qps)
    total = 0.0
    for part, mult in qps.parts:
        v1, v2 = part.lattice.basis
        diam = max(math.sqrt(float((v1 + v2).norm_sq())), math.sqrt(float((v1 - v2).norm_sq())))
        r = max(TRUNCATION_FACTOR * t - diam, 0.0)
        total += mult / float(part.det()) * math.exp(-math.pi * r * r / (t * t))
    return total


def poisson_gaussian_sums(lattice: Lattice, s: float = 1.0, radius: int = 8) -> tuple[float, float]:
    """Both sides of the Poisson summation identity for psi(x) = exp(-pi s |x|^2).

    Returns ``(sum over Lambda of psi, det(Lambda*) * sum over Lambda* of psi^)``
    with both sums over the box [-radius, radius]^2; psi^(xi) = exp(-pi |xi|^2 / s) / s.
    """
    box = Box(-radius, radius, -radius, radius, closed=True)
    direct = [math.exp(-math.pi * s * float(p.norm_sq())) for p in lattice.points_in_box(box)]
    dual = lattice.dual()
    spectral = [math.exp(-math.pi * float(m.norm_sq()) / s) / s for m in dual.points_in_box(box)]
    return math.fsum(direct), float(dual.det()) * math.fsum(spectral)
