"""Full-rank rational lattices in the plane, their translates and finite unions.

A lattice is kept in column Hermite normal form: generators ``(a, b)`` and
``(0, c)`` with ``a > 0``, ``c > 0`` and ``0 <= b < c``.  The form is unique,
so two :class:`Lattice` objects are equal exactly when they describe the same
point set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .errors import InvariantViolation
from .geometry import Rational2, SimplePolygon, as_fraction


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _is_int(q: Fraction) -> bool:
    return q.denominator == 1


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _hnf(vectors) -> tuple[Fraction, Fraction, Fraction]:
    """Column Hermite normal form (a, b, c) of the lattice spanned by ``vectors``."""
    vs = [v if isinstance(v, Rational2) else Rational2(*v) for v in vectors]
    den = math.lcm(*(d for v in vs for d in (v.x.denominator, v.y.denominator)))
    cols = [(int(v.x * den), int(v.y * den)) for v in vs]
    px, py = 0, 0
    rest = []
    for x, y in cols:
        # fold (x, y) into the pivot column so that only the pivot has x != 0
        g, s, t = _ext_gcd(px, x)
        if g == 0:
            rest.append(y)
            continue
        npy = s * py + t * y
        rest.append((x // g) * py - (px // g) * y)
        px, py = g, npy
    c = 0
    for y in rest:
        c = math.gcd(c, y)
    if px == 0 or c == 0:
        raise InvariantViolation("basis is singular (determinant 0)", field="basis")
    return Fraction(px, den), Fraction(py % c, den), Fraction(c, den)


class Lattice:
    """The lattice A Z^2 spanned by two rational column vectors."""

    __slots__ = ("a", "b", "c")

    def __init__(self, v1: Rational2, v2: Rational2):
        self._set(_hnf([v1, v2]))

    def _set(self, abc: tuple[Fraction, Fraction, Fraction]) -> None:
        self.a, self.b, self.c = abc

    @classmethod
    def generated_by(cls, vectors) -> Lattice:
        """Lattice spanned by any finite set of rational vectors (must have rank 2)."""
        obj = object.__new__(cls)
        obj._set(_hnf(list(vectors)))
        return obj

    @classmethod
    def from_basis(cls, basis) -> Lattice:
        (a11, a21), (a12, a22) = basis
        return cls(Rational2(a11, a21), Rational2(a12, a22))

    @classmethod
    def integer(cls) -> Lattice:
        return cls(Rational2(1, 0), Rational2(0, 1))

    @property
    def basis(self) -> tuple[Rational2, Rational2]:
        return (Rational2(self.a, self.b), Rational2(0, self.c))

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c))

    def __repr__(self) -> str:
        return f"Lattice(({self.a}, {self.b}), (0, {self.c}))"

    def sort_key(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def det(self) -> Fraction:
        return self.a * self.c

    def coords(self, v: Rational2) -> tuple[Fraction, Fraction]:
        """Coefficients of ``v`` in the canonical basis (A^-1 v)."""
        k1 = v.x / self.a
        return k1, (v.y - k1 * self.b) / self.c

    def point(self, k1, k2) -> Rational2:
        return Rational2(k1 * self.a, k1 * self.b + k2 * self.c)

    def contains(self, v: Rational2) -> bool:
        k1, k2 = self.coords(v)
        return _is_int(k1) and _is_int(k2)

    def half_contains(self, p: Rational2) -> bool:
        """Membership of ``p`` in (1/2) Lambda."""
        return self.contains(p * 2)

    def dual(self) -> Lattice:
        # columns of A^-T are the rows of A^-1
        a, b, c = self.a, self.b, self.c
        return Lattice(Rational2(1 / a, 0), Rational2(-b / (a * c), 1 / c))

    def scale(self, s) -> Lattice:
        s = as_fraction(s)
        if s == 0:
            raise InvariantViolation("scale factor must be non-zero")
        v1, v2 = self.basis
        return Lattice(v1 * s, v2 * s)

    def halved(self) -> Lattice:
        return self.scale(Fraction(1, 2))

    def intersection(self, other: Lattice) -> Lattice:
        """Largest common sublattice; full rank because both lattices are rational."""
        # (L1 & L2)* = L1* + L2*
        return Lattice.generated_by([*self.dual().basis, *other.dual().basis]).dual()

    def fundamental_domain(self) -> SimplePolygon:
        """Closure of the half-open cell A[0,1)^2 (counter-clockwise)."""
        v1, v2 = self.basis
        o = Rational2(0, 0)
        return SimplePolygon((o, v1, v1 + v2, v2))

    def reduce(self, v: Rational2) -> Rational2:
        """Representative of v + Lambda inside the half-open fundamental cell."""
        k1, k2 = self.coords(v)
        return self.point(k1 - _floor(k1), k2 - _floor(k2))

    def points_in_box(self, box: Box, offset: Rational2 | None = None) -> list[Rational2]:
        offset = offset or Rational2(0, 0)
        out = []
        lo = (box.xmin - offset.x) / self.a
        hi = (box.xmax - offset.x) / self.a
        for k1 in range(_ceil(lo), _floor(hi) + 1):
            x = offset.x + k1 * self.a
            if not box.contains_x(x):
                continue
            base = offset.y + k1 * self.b
            for k2 in range(_ceil((box.ymin - base) / self.c), _floor((box.ymax - base) / self.c) + 1):
                y = base + k2 * self.c
                if box.contains_y(y):
                    out.append(Rational2(x, y))
        return out


@dataclass(frozen=True)
class Box:
    """Axis-aligned box; half-open ``[xmin, xmax) x [ymin, ymax)`` unless ``closed``."""

    xmin: Fraction
    xmax: Fraction
    ymin: Fraction
    ymax: Fraction
    closed: bool = False

    def __post_init__(self):
        for name in ("xmin", "xmax", "ymin", "ymax"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def contains_x(self, x: Fraction) -> bool:
        return self.xmin <= x <= self.xmax if self.closed else self.xmin <= x < self.xmax

    def contains_y(self, y: Fraction) -> bool:
        return self.ymin <= y <= self.ymax if self.closed else self.ymin <= y < self.ymax


@dataclass(frozen=True)
class TranslatedLattice:
    """offset + Lambda, with the offset reduced into the fundamental cell."""

    lattice: Lattice
    offset: Rational2 = Rational2(0, 0)

    def __post_init__(self):
        object.__setattr__(self, "offset", self.lattice.reduce(self.offset))

    def contains(self, v: Rational2) -> bool:
        return self.lattice.contains(v - self.offset)

    def points_in_box(self, box: Box) -> list[Rational2]:
        return self.lattice.points_in_box(box, self.offset)

    def sort_key(self):
        return (self.lattice.sort_key(), self.offset.key())

    def det(self) -> Fraction:
        return self.lattice.det()


def enumerate_in_box(lat: Union[Lattice, TranslatedLattice], box: Box) -> list[Rational2]:
    return lat.points_in_box(box)


def fundamental_domain(lat: Lattice) -> SimplePolygon:
    return lat.fundamental_domain()


@dataclass(frozen=True)
class QuasiPeriodicSet:
    """Finite union of translated lattices, with multiplicities (a multiset)."""

    parts: tuple[tuple[TranslatedLattice, int], ...]

    def __post_init__(self):
        merged: dict[TranslatedLattice, int] = {}
        for i, (part, mult) in enumerate(self.parts):
            if isinstance(part, Lattice):
                part = TranslatedLattice(part)
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
                raise InvariantViolation(
                    "multiplicity must be a positive integer", field=f"parts[{i}].multiplicity"
                )
            merged[part] = merged.get(part, 0) + mult
        if not merged:
            raise InvariantViolation("quasi-periodic set needs at least one part", field="parts")
        ordered = tuple(sorted(merged.items(), key=lambda pm: pm[0].sort_key()))
        object.__setattr__(self, "parts", ordered)

    @classmethod
    def of(cls, *parts: Union[Lattice, TranslatedLattice]) -> QuasiPeriodicSet:
        return cls(tuple((p, 1) for p in parts))

    def density(self) -> Fraction:
        return sum((Fraction(m) / p.det() for p, m in self.parts), Fraction(0))

    def multiplicity(self, v: Rational2) -> int:
        return sum(m for p, m in self.parts if p.contains(v))

    def points_in_box(self, box: Box) -> list[Rational2]:
        """Points with repetition according to multiplicity."""
        out = []
        for part, mult in self.parts:
            pts = part.points_in_box(box)
            for _ in range(mult):
                out.extend(pts)
        return out

    def is_plain_lattice(self) -> bool:
        return len(self.parts) == 1 and self.parts[0][1] == 1


def contains(lat: Union[Lattice, TranslatedLattice], v: Rational2) -> bool:
    return lat.contains(v)


def det(lat: Lattice) -> Fraction:
    return lat.det()


def dual(lat: Lattice) -> Lattice:
    return lat.dual()


def half_contains(lat: Lattice, p: Rational2) -> bool:
    return lat.half_contains(p)


# --- exact theta search -------------------------------------------------------

ALL = "all"


def _progression(p: Fraction, q: Fraction):
    """Solutions theta of p + theta*q in Z: ALL, None (empty) or (offset, step)."""
    if q == 0:
        return ALL if _is_int(p) else None
    step = 1 / abs(q)
    off = (-p / q) % step
    return (off, step)


def _intersect(s1, s2):
    if s1 is None or s2 is None:
        return None
    if s1 == ALL:
        return s2
    if s2 == ALL:
        return s1
    (a1, t1), (a2, t2) = s1, s2
    den = math.lcm(a1.denominator, t1.denominator, a2.denominator, t2.denominator)
    A1, T1, A2, T2 = (int(v * den) for v in (a1, t1, a2, t2))
    # A1 + T1*k == A2 + T2*m
    g, s, _ = _ext_gcd(T1, T2)
    if (A2 - A1) % g:
        return None
    k = s * ((A2 - A1) // g)
    step = T1 * T2 // g
    off = (A1 + T1 * k) % step
    return (Fraction(off, den), Fraction(step, den))


def theta_solutions(lat: Lattice, tau: Rational2, e: Rational2):
    """All real theta with tau + theta*e in Lambda, as (offset, step) or None.

    ``e`` must be non-zero, so the set is empty or an arithmetic progression.
    """
    if e.is_zero():
        raise InvariantViolation("edge vector must be non-zero")
    p1, p2 = lat.coords(tau)
    q1, q2 = lat.coords(e)
    return _intersect(_progression(p1, q1), _progression(p2, q2))


def segment_interior_point(lat: Lattice, tau: Rational2, e: Rational2) -> Fraction | None:
    """Smallest theta in (0, 1) with tau + theta*e in Lambda, or None."""
    sol = theta_solutions(lat, tau, e)
    if sol is None:
        return None
    off, step = sol
    theta = off if off > 0 else step
    return theta if theta < 1 else None


def iter_points(lat: Lattice, radius: int) -> Iterator[Rational2]:
    """Points k1*v1 + k2*v2 with |k1|, |k2| <= radius."""
    for k1 in range(-radius, radius + 1):
        for k2 in range(-radius, radius + 1):
            yield lat.point(k1, k2)


def as_quasi_periodic(obj: Union[Lattice, TranslatedLattice, QuasiPeriodicSet]) -> QuasiPeriodicSet:
    if isinstance(obj, QuasiPeriodicSet):
        return obj
    return QuasiPeriodicSet.of(obj)


def parts_of(obj) -> Iterable[tuple[TranslatedLattice, int]]:
    return as_quasi_periodic(obj).parts
