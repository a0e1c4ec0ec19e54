import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from generators import pairing_regions, rational_points, symmetric_convex_regions
from pairtile import (
    InvariantViolation,
    Location,
    MultiComponent,
    NotPairing,
    PolygonalRegion,
    Rational2,
    SimplePolygon,
    UnequalLengths,
    area,
    extract_pairing,
    is_centrally_symmetric,
    is_convex,
    is_parallelogram,
    point_location,
    vec,
)
from pairtile.geometry import canonical_sign, primitive_direction, triangulate
from shapes import hexagon_region, l_region, square_region, triangle_region


def shoelace_by_hand(points):
    # independent of the library: plain integer-free Fractions over explicit tuples
    s = F(0)
    n = len(points)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        s += F(x1) * F(y2) - F(x2) * F(y1)
    return abs(s) / 2


def winding_number(vertices, p):
    """Reference point-in-polygon by winding number (non-boundary points only)."""
    w = 0
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        cross = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)
        if a.y <= p.y < b.y and cross > 0:
            w += 1
        elif b.y <= p.y < a.y and cross < 0:
            w -= 1
    return w


class TestRational2:
    def test_lowest_terms_and_exact_arithmetic(self):
        v = Rational2(F(2, 4), 3)
        assert v.x == F(1, 2) and v.x.denominator == 2
        w = v + Rational2(F(1, 3), F(-1, 3))
        assert w == Rational2(F(5, 6), F(8, 3))
        assert v.dot(w) == F(5, 12) + 8
        assert v.perp() == Rational2(-3, F(1, 2))

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            Rational2(0.5, 1)

    def test_canonical_sign(self):
        assert canonical_sign(vec(-1, 2)) == vec(1, -2)
        assert canonical_sign(vec(0, -3)) == vec(0, 3)
        assert primitive_direction(vec(F(3, 2), F(-9, 4))) == (2, -3)


class TestArea:
    def test_unit_square(self):
        assert area(square_region()) == 1

    def test_hexagon_matches_hand_shoelace(self):
        pts = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
        assert area(hexagon_region()) == shoelace_by_hand(pts) == 3

    def test_two_disjoint_squares(self):
        a = square_region().components[0]
        b = square_region(3, 0).components[0]
        assert area(PolygonalRegion((a, b))) == 2

    @given(pairing_regions)
    def test_triangulation_preserves_area(self, region):
        total = sum(shoelace_by_hand([tuple(p) for p in t]) for c in region.components for t in triangulate(c))
        assert total == area(region)


class TestValidation:
    def test_clockwise_input_is_reoriented(self):
        cw = SimplePolygon(tuple(vec(*p) for p in [(0, 0), (0, 1), (1, 1), (1, 0)]))
        assert cw.area() == 1

    def test_collinear_vertices_merged(self):
        poly = SimplePolygon(tuple(vec(*p) for p in [(0, 0), (1, 0), (2, 0), (2, 1), (0, 1)]))
        assert len(poly) == 4

    def test_self_intersection_rejected(self):
        with pytest.raises(InvariantViolation):
            SimplePolygon(tuple(vec(*p) for p in [(0, 0), (2, 2), (2, 0), (0, 2)]))

    def test_fold_back_rejected(self):
        with pytest.raises(InvariantViolation):
            SimplePolygon(tuple(vec(*p) for p in [(0, 0), (2, 0), (1, 0), (1, 1)]))

    def test_degenerate_rejected(self):
        with pytest.raises(InvariantViolation):
            SimplePolygon(tuple(vec(*p) for p in [(0, 0), (1, 0), (1, 0)]))

    def test_overlapping_components_rejected(self):
        a = square_region().components[0]
        b = square_region(F(1, 2), 0).components[0]
        with pytest.raises(InvariantViolation) as exc:
            PolygonalRegion((a, b))
        assert exc.value.field == "polygons"

    def test_nested_component_rejected(self):
        outer = PolygonalRegion.from_points([(-2, -2), (2, -2), (2, 2), (-2, 2)]).components[0]
        with pytest.raises(InvariantViolation):
            PolygonalRegion((outer, square_region().components[0]))

    def test_touching_components_allowed(self):
        a = square_region().components[0]
        b = square_region(1, 0).components[0]
        assert area(PolygonalRegion((a, b))) == 2


class TestPairing:
    def test_square(self):
        pairs = extract_pairing(square_region())
        assert [(p.e, p.tau) for p in pairs] == [(vec(1, 0), vec(0, 1)), (vec(0, 1), vec(1, 0))]
        assert pairs[0].midpoints == (vec(0, F(-1, 2)), vec(0, F(1, 2)))

    def test_hexagon(self):
        pairs = extract_pairing(hexagon_region())
        assert {(p.e, p.tau) for p in pairs} == {
            (vec(1, -1), vec(1, 1)),
            (vec(1, 0), vec(1, -2)),
            (vec(0, 1), vec(2, -1)),
        }

    def test_triangle_not_pairing(self):
        with pytest.raises(NotPairing):
            extract_pairing(triangle_region())

    def test_three_parallel_edges(self):
        with pytest.raises(NotPairing) as exc:
            extract_pairing(l_region())
        assert exc.value.details["count"] == 3
        assert exc.value.field == "polygons"

    def test_unequal_lengths(self):
        region = PolygonalRegion.from_points([(0, 0), (2, 0), (3, 1), (3, 3), (2, 3), (0, 1)])
        with pytest.raises(UnequalLengths) as exc:
            extract_pairing(region)
        assert len(exc.value.details["pairs"]) == 3

    def test_same_sense_edges_rejected(self):
        tri = [(0, 0), (1, 0), (0, 1)]
        moved = [(x + 3, y) for x, y in tri]
        with pytest.raises(NotPairing):
            extract_pairing(PolygonalRegion.from_points(tri, moved))

    def test_collinear_pair_rejected(self):
        # T and -T side by side, so the two horizontal edges share the line y = 0
        tri = [(0, 0), (1, 0), (0, 1)]
        flipped = [(3 - x, -y) for x, y in tri]
        with pytest.raises(NotPairing, match="one line"):
            extract_pairing(PolygonalRegion.from_points(tri, flipped))

    def test_two_components_pair_across(self):
        tri = [(0, 0), (1, 0), (0, 1)]
        flipped = [(3 - x, 1 - y) for x, y in tri]
        pairs = extract_pairing(PolygonalRegion.from_points(tri, flipped))
        assert len(pairs) == 3

    @given(pairing_regions)
    def test_perimeter_identity(self, region):
        pairs = extract_pairing(region)
        perimeter = math.fsum(math.sqrt((b - a).norm_sq()) for a, b in region.edges())
        assert math.isclose(math.fsum(2 * math.sqrt(p.length_sq) for p in pairs), perimeter)

    @given(pairing_regions)
    def test_every_edge_in_exactly_one_pair(self, region):
        edges = {frozenset((a, b)) for a, b in region.edges()}
        from_pairs = [frozenset(e) for p in extract_pairing(region) for e in p.edges()]
        assert len(from_pairs) == len(edges) and set(from_pairs) == edges

    @given(pairing_regions, rational_points)
    def test_translation_invariance(self, region, t):
        before = [(p.e, p.tau) for p in extract_pairing(region)]
        after = [(p.e, p.tau) for p in extract_pairing(region.translate(t))]
        assert before == after

    @given(pairing_regions)
    def test_idempotent(self, region):
        once = extract_pairing(region)
        rebuilt = PolygonalRegion(tuple(SimplePolygon(c.vertices) for c in region.components))
        assert extract_pairing(rebuilt) == once == extract_pairing(region)


class TestSymmetryAndConvexity:
    def test_square_center(self):
        assert is_centrally_symmetric(square_region(F(1, 2), F(1, 2))) == vec(F(1, 2), F(1, 2))

    def test_triangle_has_no_center(self):
        assert is_centrally_symmetric(triangle_region()) is None

    def test_hexagon_center(self):
        assert is_centrally_symmetric(hexagon_region()) == vec(0, 0)

    @given(symmetric_convex_regions)
    def test_center_reflects_region_onto_itself(self, region):
        c = is_centrally_symmetric(region)
        assert c is not None
        verts = set(region.vertices())
        assert {c * 2 - v for v in verts} == verts

    def test_convexity_examples(self):
        assert is_convex(square_region()) and is_parallelogram(square_region())
        assert is_convex(hexagon_region()) and not is_parallelogram(hexagon_region())
        assert not is_convex(l_region())

    def test_multi_component_convexity_is_an_error(self):
        region = PolygonalRegion((square_region().components[0], square_region(3, 0).components[0]))
        with pytest.raises(MultiComponent):
            is_convex(region)


class TestPointLocation:
    def test_examples(self):
        sq = square_region()
        assert point_location(sq, vec(F(1, 4), F(1, 4))) is Location.INTERIOR
        assert point_location(sq, vec(F(1, 2), 0)) is Location.BOUNDARY
        assert point_location(sq, vec(3, 3)) is Location.EXTERIOR

    def test_vertex_is_boundary(self):
        assert point_location(hexagon_region(), vec(-1, 1)) is Location.BOUNDARY

    @given(pairing_regions, st.lists(rational_points, min_size=5, max_size=5))
    def test_agrees_with_winding_number(self, region, points):
        for p in points:
            loc = point_location(region, p)
            if loc is Location.BOUNDARY:
                continue
            inside = any(winding_number(c.vertices, p) != 0 for c in region.components)
            assert inside == (loc is Location.INTERIOR)

    def test_monte_carlo_area(self):
        region = l_region()
        rng = random.Random(7)
        box = region.bbox()
        n = 4000
        hits = 0
        for _ in range(n):
            p = vec(F(rng.randint(0, 10**6), 10**6) * (box.xmax - box.xmin) + box.xmin,
                    F(rng.randint(0, 10**6), 10**6) * (box.ymax - box.ymin) + box.ymin)
            hits += point_location(region, p) is Location.INTERIOR
        estimate = hits / n * float((box.xmax - box.xmin) * (box.ymax - box.ymin))
        assert abs(estimate - float(area(region))) < 0.1
