from fractions import Fraction

from django.test import SimpleTestCase

from core.exceptions import DimensionMismatchError, InvalidParameterError, ShrinkExhaustedError
from core.geometry.closing import Tube, close_arc, contain_in_pc_curve, contains_subpolyline, inside_tube
from core.geometry.curve_core import PolyCurve, is_simple, mesh
from core.geometry.metrics import hausdorff_polylines
from core.tests.factories import helix_arc, segment_arc

RADIUS = Fraction(1, 5)
EPS = Fraction(1, 20)


class TubeTest(SimpleTestCase):
    def test_membership(self):
        tube = Tube(segment_arc(), RADIUS)
        self.assertTrue(tube.contains((Fraction(1, 2), Fraction(1, 10), 0, 0)))
        self.assertFalse(tube.contains((Fraction(1, 2), RADIUS, 0, 0)))
        self.assertTrue(inside_tube(segment_arc(), tube))

    def test_core_must_be_open(self):
        square = PolyCurve.build([(0, 0), (1, 0), (1, 1), (0, 1)])
        with self.assertRaises(InvalidParameterError):
            Tube(square, RADIUS)
        with self.assertRaises(InvalidParameterError):
            Tube(segment_arc(), 0)

    def test_contains_subpolyline_ignores_direction(self):
        arc = segment_arc()
        loop = PolyCurve.build([(1, 0, 0, 0), (0, 0, 0, 0), (0, 1, 0, 0)])
        self.assertTrue(contains_subpolyline(loop, arc))
        self.assertFalse(contains_subpolyline(loop, helix_arc()))


class CloseArcTest(SimpleTestCase):
    def assertClosesInside(self, arc, radius=RADIUS):
        tube = Tube(arc, radius)
        closed = close_arc(arc, tube)
        self.assertTrue(closed.closed)
        self.assertTrue(is_simple(closed))
        self.assertTrue(inside_tube(closed, tube))
        self.assertTrue(contains_subpolyline(closed, arc))
        return closed

    def test_segment(self):
        self.assertClosesInside(segment_arc())

    def test_helix(self):
        closed = self.assertClosesInside(helix_arc())
        self.assertEqual(closed.points[:9], helix_arc().points)

    def test_rejects_closed_and_planar_input(self):
        square = PolyCurve.build([(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0)])
        with self.assertRaises(InvalidParameterError):
            close_arc(square, Tube(segment_arc(), RADIUS))
        planar = PolyCurve.build([(0, 0), (1, 0)], closed=False)
        with self.assertRaises(DimensionMismatchError):
            close_arc(planar, Tube(planar, RADIUS))

    def test_arc_must_start_inside_the_tube(self):
        far = PolyCurve.build([(5, 5, 0, 0), (6, 5, 0, 0)], closed=False)
        with self.assertRaises(InvalidParameterError):
            close_arc(segment_arc(), Tube(far, RADIUS))


class ContainTest(SimpleTestCase):
    def assertContained(self, arc, radius=RADIUS):
        tube = Tube(arc, radius)
        result = contain_in_pc_curve(arc, tube, EPS)
        self.assertTrue(result.certificate.certified)
        self.assertTrue(is_simple(result.curve))
        self.assertTrue(inside_tube(result.curve, tube))
        self.assertTrue(contains_subpolyline(result.curve, arc))
        for point in arc.points:
            self.assertFalse(result.ball.contains(point))
        return result

    def test_segment(self):
        self.assertContained(segment_arc())

    def test_helix(self):
        self.assertContained(helix_arc())

    def test_thin_tube_keeps_the_curve_close(self):
        arc = helix_arc()
        radius = Fraction(1, 20)
        result = self.assertContained(arc, radius)
        step = mesh(arc) / 64
        self.assertLess(hausdorff_polylines(result.curve, arc, step), float(radius))

    def test_shrink_limit_reaches_the_perturbation(self):
        arc = segment_arc()
        with self.assertRaises(ShrinkExhaustedError):
            contain_in_pc_curve(arc, Tube(arc, RADIUS), EPS, shrink_limit=1)
