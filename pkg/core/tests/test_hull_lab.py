import math

import numpy as np
from django.test import SimpleTestCase

from core.constants import DemoName, HullKind
from core.exceptions import InvalidParameterError
from core.geometry.certificates import winding_number_about
from core.geometry.curve_core import is_simple
from core.geometry.hull_lab import (
    DEMO_COLUMNS,
    convergence_report,
    graph_family,
    graph_row,
    hull_limit_inequality,
    kallin_example,
    kallin_lengths,
    kallin_row,
    slit_annulus_family,
    slit_row,
    tangent_circles,
    tangent_row,
)
from core.geometry.polynomials import CPolynomial
from core.geometry.scalar import F64

KS = (2, 4, 8, 16)


class SlitAnnulusTest(SimpleTestCase):
    def test_curve_is_simple_and_misses_the_origin(self):
        curve, model = slit_annulus_family(4, 64)
        self.assertTrue(is_simple(curve))
        self.assertEqual(winding_number_about(curve, (0, 0)), 0)
        self.assertEqual(model.kind, HullKind.POLYGON_WITH_INTERIOR)
        self.assertTrue(model.contains_planar((-1 - 1 / 8, 0.0)))
        self.assertFalse(model.contains_planar((0.0, 0.0)))
        self.assertGreaterEqual(model.distance_to((0.0, 0.0)), 1.0)

    def test_parameter_ranges(self):
        with self.assertRaises(InvalidParameterError):
            slit_annulus_family(1, 64)
        with self.assertRaises(InvalidParameterError):
            slit_annulus_family(4, 8)

    def test_rows_converge_to_the_circle(self):
        rows = [slit_row(k, 512) for k in KS]
        for row in rows:
            with self.subTest(k=row['k']):
                self.assertTrue(row['holds'])
                self.assertEqual(row['winding_origin'], 0)
                self.assertLessEqual(row['hausdorff_curve'], row['curve_bound'])
        report = convergence_report(DemoName.SLIT, rows, {'n': 512})
        self.assertTrue(report.holds)
        self.assertTrue(report.verdicts['monotone'])
        self.assertEqual(report.columns, DEMO_COLUMNS[DemoName.SLIT])


class GraphFamilyTest(SimpleTestCase):
    def test_image_lies_on_the_hyperbola(self):
        sigma_k, sigma = graph_family(4, 64)
        self.assertEqual(sigma_k.exponents, (1, -1))
        for point in sigma_k.sample(2):
            z, w = complex(point[0], point[1]), complex(point[2], point[3])
            self.assertAlmostEqual(abs(z * w - 1), 0.0)
        self.assertEqual(sigma.dim, 2)

    def test_limit_is_certified_while_the_family_is_not(self):
        row = graph_row(4, 128)
        self.assertTrue(row['holds'])
        self.assertEqual(row['nonzero_integrals'], 0)
        self.assertEqual(row['sigma_k_certificate'], 'none')
        self.assertAlmostEqual(row['sigma_integral'], 2 * math.pi, places=2)
        self.assertLessEqual(row['hausdorff_curve'], row['curve_bound'])


class KallinTest(SimpleTestCase):
    def test_limit_of_hulls_misses_the_left_disc(self):
        row = kallin_row(4, 128)
        self.assertEqual(row['violations'], 0)
        self.assertGreaterEqual(row['limit_gap'], 0.99)
        self.assertLessEqual(row['uniform_distance'], math.sqrt(2) / 4 + 1e-12)
        self.assertTrue(row['holds'])

    def test_lengths_stay_bounded(self):
        first, second = kallin_lengths(1)
        bound = 2 * (math.sqrt(2) + 1) * math.pi
        self.assertLess(abs(first + second - bound) / bound, 0.01)
        self.assertLessEqual(first + second, bound)

    def test_hull_models_contain_their_sets(self):
        data = kallin_example(2, 64)
        self.assertEqual(data.x_k.shape, (128, 4))
        self.assertEqual(data.hull_k.kind, HullKind.EXPLICIT_UNION)
        self.assertLess(data.hull.distance_to(np.array([0.0, 0.0, 0.0, 0.0])), 1e-12)

    def test_unpacks_into_sets_and_hulls(self):
        x_k, hull_k, x, hull = kallin_example(3, 32)
        self.assertEqual(x_k.shape, x.shape)
        self.assertEqual(hull_k.parameters['k'], 3)
        self.assertEqual(hull.kind, HullKind.EXPLICIT_UNION)

    def test_constant_polynomial_is_tight_at_one(self):
        data = kallin_example(2, 64)
        one = CPolynomial.constant(2, 1, F64)
        report = hull_limit_inequality([data.x_k], [data.hull_k], data.x, meshes=[data.mesh], polynomials=[one])
        row = report.rows[0]
        self.assertEqual((row['hull_sup'], row['set_sup'], row['limit_sup']), (1.0, 1.0, 1.0))
        self.assertEqual(row['max_gap'], 0.0)
        self.assertTrue(report.holds)

    def test_second_coordinate_has_sup_one_over_k(self):
        w = CPolynomial.variable(2, 1, F64)
        for k in (1, 2, 4, 8):
            data = kallin_example(k, 64)
            self.assertAlmostEqual(data.hull_k.sup_modulus(w), 1 / k, places=12)
            report = hull_limit_inequality([data.x_k], [data.hull_k], data.x, meshes=[data.mesh], polynomials=[w])
            row = report.rows[0]
            self.assertAlmostEqual(row['hull_sup'], 1 / k, places=12)
            self.assertAlmostEqual(row['set_sup'], 1 / k, places=12)
            self.assertEqual(row['limit_sup'], 0.0)
            self.assertTrue(report.holds, k)

    def test_seeded_reports_are_reproducible(self):
        data = kallin_example(2, 32)
        first = hull_limit_inequality([data.x_k], [data.hull_k], data.x, trials=5, seed=3, meshes=[data.mesh])
        second = hull_limit_inequality([data.x_k], [data.hull_k], data.x, trials=5, seed=3, meshes=[data.mesh])
        self.assertEqual(first.rows, second.rows)
        self.assertEqual(first.parameters['trials'], 5)

    def test_models_and_sets_must_pair_up(self):
        data = kallin_example(2, 32)
        with self.assertRaises(InvalidParameterError):
            hull_limit_inequality([data.x_k, data.x_k], [data.hull_k], data.x)

    def test_parameter_ranges(self):
        with self.assertRaises(InvalidParameterError):
            kallin_example(0)
        with self.assertRaises(InvalidParameterError):
            kallin_example(1, 2)


class TangentCirclesTest(SimpleTestCase):
    def test_replacements_keep_their_length(self):
        rows = [tangent_row(k, 8, 128) for k in range(1, 9)]
        self.assertTrue(all(row['holds'] for row in rows))
        report = convergence_report('tangent', rows, {'count': 8})
        self.assertTrue(report.verdicts['monotone'])

    def test_attached_circles_shrink(self):
        circles = tangent_circles(6, 64)
        self.assertEqual(len(circles.attached), 6)
        self.assertTrue(all(b < a for a, b in zip(circles.radii, circles.radii[1:])))
        self.assertEqual(circles.x_k(3).shape, circles.x().shape)

    def test_index_must_name_an_attached_circle(self):
        with self.assertRaises(InvalidParameterError):
            tangent_row(9, 8)
        with self.assertRaises(InvalidParameterError):
            tangent_circles(0)
