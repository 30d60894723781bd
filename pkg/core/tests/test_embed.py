import math
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core.constants import Domain
from core.exceptions import InvalidParameterError
from core.geometry.curve_core import is_injective
from core.geometry.embed import (
    BVMap,
    generic_project,
    graph_lift,
    make_injective,
    projection_for,
    secant_cover_bound,
)
from core.geometry.scalar import RATIONAL
from core.tests.factories import figure_eight_points, random_closed_polyline, simple_curve_c2

EPS = Fraction(1, 100)


class BVMapTest(SimpleTestCase):
    def test_domain_decides_closedness(self):
        self.assertTrue(BVMap.build(figure_eight_points(), domain=Domain.CIRCLE).curve.closed)
        self.assertFalse(BVMap.build([(0, 0), (1, 1)]).curve.closed)

    def test_constant_pieces_are_allowed(self):
        gamma = BVMap.build([(0, 0, 0), (0, 0, 0), (1, 0, 0)])
        self.assertEqual(gamma.k, 3)
        self.assertFalse(is_injective(gamma.curve))

    def test_interval_graph_prepends_the_parameter(self):
        gamma = BVMap.build([(0, 0, 0), (1, 0, 0), (1, 1, 0)])
        lifted = graph_lift(gamma)
        self.assertEqual([p[0] for p in lifted.curve.points], list(gamma.curve.params))
        self.assertTrue(is_injective(lifted.curve))

    def test_circle_graph_lands_on_the_unit_circle(self):
        lifted = graph_lift(BVMap.build(figure_eight_points(), domain=Domain.CIRCLE))
        self.assertEqual(lifted.k, 5)
        self.assertTrue(all(p[0] ** 2 + p[1] ** 2 == 1 for p in lifted.curve.points))
        self.assertTrue(is_injective(lifted.curve))


class ProjectionTest(SimpleTestCase):
    def test_deviation_of_a_tilted_direction(self):
        op = projection_for((Fraction(1), Fraction(1, 10), Fraction(0)), RATIONAL)
        self.assertEqual(op.deviation_sq, Fraction(1, 100))
        self.assertAlmostEqual(op.deviation, 0.1)
        self.assertEqual(op.apply((Fraction(1), Fraction(1, 10), Fraction(2))), (0, 2))

    def test_projection_needs_four_coordinates(self):
        with self.assertRaises(InvalidParameterError):
            generic_project(BVMap.build([(0, 0, 0), (1, 0, 0)]), EPS)


class MakeInjectiveTest(SimpleTestCase):
    def test_constant_interval_map(self):
        gamma = BVMap.build([(0, 0, 0), (0, 0, 0)])
        result = make_injective(gamma, EPS)
        self.assertTrue(is_injective(result.bvmap.curve))
        self.assertEqual(result.bvmap.k, 3)
        self.assertEqual(len(result.projections), 1)
        self.assertLess(result.bv_distance_upper, EPS)
        self.assertLess(result.bv_distance, float(EPS))
        self.assertFalse(result.unchanged)

    def test_self_crossing_circle_map(self):
        gamma = BVMap.build(figure_eight_points(), domain=Domain.CIRCLE)
        self.assertFalse(is_injective(gamma.curve))
        result = make_injective(gamma, EPS)
        self.assertTrue(is_injective(result.bvmap.curve))
        self.assertEqual(result.bvmap.domain, Domain.CIRCLE)
        self.assertEqual(len(result.projections), 2)
        self.assertLess(result.bv_distance_upper, EPS)

    def test_same_seed_gives_the_same_map(self):
        gamma = BVMap.build(figure_eight_points(), domain=Domain.CIRCLE)
        first = make_injective(gamma, EPS, seed=5)
        second = make_injective(gamma, EPS, seed=5)
        self.assertEqual(first.bvmap.digest(), second.bvmap.digest())

    def test_injective_maps_are_returned_unchanged(self):
        gamma = BVMap.of(simple_curve_c2(2))
        result = make_injective(gamma, EPS)
        self.assertTrue(result.unchanged)
        self.assertIs(result.bvmap, gamma)
        self.assertEqual(result.bv_distance, 0.0)

    def test_planar_maps_are_out_of_reach(self):
        with self.assertRaises(InvalidParameterError):
            make_injective(BVMap.build([(-1, 1), (1, -1), (1, 1), (-1, -1)], domain=Domain.CIRCLE), EPS)

    def test_eps_must_be_positive(self):
        with self.assertRaises(InvalidParameterError):
            make_injective(BVMap.build([(0, 0, 0), (0, 0, 0)]), 0)


class SecantCoverTest(SimpleTestCase):
    @settings(derandomize=True, deadline=None, max_examples=25)
    @given(seed=st.integers(0, 10_000), exponent=st.integers(0, 6))
    def test_box_bounds_hold_on_random_polylines(self, seed, exponent):
        curve = random_closed_polyline(np.random.default_rng(seed), 2, 7)
        report = secant_cover_bound(BVMap.of(curve), 2 ** exponent)
        self.assertTrue(report.holds)
        self.assertLessEqual(report.sum_sq, report.total_bound)
        self.assertEqual(report.deltas.shape, (2 ** exponent, 2 ** exponent))

    def test_seeded_curves_over_dyadic_partitions(self):
        for seed in range(20):
            bvmap = BVMap.of(random_closed_polyline(np.random.default_rng(seed), 2, 6))
            for m in (1, 2, 4, 8, 16, 32, 64):
                report = secant_cover_bound(bvmap, m)
                self.assertTrue(report.holds, (seed, m))
                self.assertLessEqual(report.max_delta, report.box_bound)

    def test_piece_diameters_never_exceed_the_piece_length(self):
        report = secant_cover_bound(BVMap.of(simple_curve_c2(5)), 16)
        self.assertTrue(all(d <= report.length / 16 * (1 + 1e-9) for d in report.diameters))
        self.assertAlmostEqual(report.measure_bound, np.pi / 4 * report.sum_sq)

    def test_unit_segment_meets_the_bounds_with_equality(self):
        report = secant_cover_bound(BVMap.build([(0, 0, 0), (1, 0, 0)]), 4)
        self.assertTrue(report.holds)
        self.assertEqual(report.length, 1.0)
        self.assertEqual(report.diameters, [0.25] * 4)
        self.assertEqual(report.sum_sq, 2.0)
        self.assertEqual(report.total_bound, 2.0)
        self.assertEqual(report.max_delta, report.box_bound)
        self.assertAlmostEqual(report.box_bound, math.sqrt(2) / 4)

    def test_unit_square_meets_the_bounds_with_equality(self):
        square = BVMap.build([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)], domain=Domain.CIRCLE)
        report = secant_cover_bound(square, 8)
        self.assertTrue(report.holds)
        self.assertEqual(report.diameters, [0.5] * 8)
        self.assertEqual(report.sum_sq, report.total_bound)
        self.assertEqual(report.total_bound, 32.0)

    def test_zero_length_map_is_degenerate(self):
        report = secant_cover_bound(BVMap.build([(0, 0, 0), (0, 0, 0)]), 4)
        self.assertTrue(report.degenerate)
        self.assertTrue(report.holds)
        self.assertEqual(report.length, 0.0)

    def test_partition_size_must_be_positive(self):
        with self.assertRaises(InvalidParameterError):
            secant_cover_bound(BVMap.build([(0, 0, 0), (1, 0, 0)]), 0)
