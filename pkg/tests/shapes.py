"""Named regions and lattices used across the tests."""

from fractions import Fraction as F

from pairtile import Lattice, PolygonalRegion, vec

HALF = F(1, 2)


def square_region(cx=0, cy=0):
    c = vec(cx, cy)
    pts = [vec(HALF, HALF), vec(-HALF, HALF), vec(-HALF, -HALF), vec(HALF, -HALF)]
    return PolygonalRegion.from_points([tuple(p + c) for p in pts])


def hexagon_region():
    return PolygonalRegion.from_points([(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)])


def rectangle_region(w, h):
    return PolygonalRegion.from_points([(0, 0), (w, 0), (w, h), (0, h)])


def l_region():
    """L-shaped hexagon: three horizontal and three vertical edges."""
    return PolygonalRegion.from_points([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])


def triangle_region():
    return PolygonalRegion.from_points([(0, 0), (1, 0), (0, 1)])


def basis(a, b, c, d):
    """Lattice with generator columns (a, b) and (c, d)."""
    return Lattice(vec(a, b), vec(c, d))


Z2 = Lattice.integer()
SHEARED = basis(0, 1, 1, HALF)
DOUBLE = basis(1, 0, 0, HALF)
WIDE = basis(2, 0, 0, 1)
HEX_LATTICE = basis(1, 1, 2, -1)
