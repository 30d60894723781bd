from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from core.constants import Domain, Mode
from core.geometry.certificates import certify
from core.geometry.curve_core import circle_polygon, conjugate_lift
from core.geometry.hull_lab import convergence_report
from core.geometry.polynomials import ContourValue
from core.geometry.scalar import CScalar
from core.serializers import (
    BallSerializer,
    BVMapSerializer,
    CertificateSerializer,
    CompactSampleSerializer,
    ConvergenceReportSerializer,
    CurveSerializer,
    OneFormSerializer,
    TubeSerializer,
)
from core.serializers.fields import encode_value
from core.tests.factories import conjugate_form, simple_curve_c2

SQUARE = {'dim': 1, 'points': [[0, 0], ['1', 0], ['1', '1/2'], [0, '1/2']]}


class CurveSerializerTest(SimpleTestCase):
    def test_rational_strings_become_fractions(self):
        serializer = CurveSerializer(data=SQUARE)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        curve = serializer.save()
        self.assertEqual(curve.mode, Mode.RATIONAL)
        self.assertEqual(curve.points[2], (1, Fraction(1, 2)))
        self.assertEqual(curve.params, (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)))

    def test_canonical_form_reads_back_to_the_same_curve(self):
        curve = simple_curve_c2(3)
        serializer = CurveSerializer(data=CurveSerializer(curve).data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save().digest(), curve.digest())

    def test_context_mode_applies_when_the_payload_has_none(self):
        serializer = CurveSerializer(data=SQUARE, context={'mode': Mode.F64, 'tolerance': 1e-6})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        curve = serializer.save()
        self.assertEqual(curve.mode, Mode.F64)
        self.assertEqual(curve.tol, 1e-6)
        self.assertIsInstance(curve.points[2][1], float)

    def test_coordinate_count_must_match_the_dimension(self):
        serializer = CurveSerializer(data={'dim': 2, 'points': [[0, 0], [1, 0]]})
        self.assertFalse(serializer.is_valid())
        self.assertIn('points', serializer.errors)

    def test_params_must_pair_with_points(self):
        serializer = CurveSerializer(data={**SQUARE, 'params': [0, '1/2']})
        self.assertFalse(serializer.is_valid())
        self.assertIn('params', serializer.errors)

    def test_scalars_reject_booleans_and_garbage(self):
        for bad in (True, 'one half', '1/0', [1], float('inf')):
            with self.subTest(value=bad):
                serializer = CurveSerializer(data={'dim': 1, 'points': [[0, 0], [bad, 1]]})
                self.assertFalse(serializer.is_valid())


class OtherInputSerializerTest(SimpleTestCase):
    def test_bv_map_domain_follows_closedness(self):
        serializer = BVMapSerializer(data={'dim': 3, 'closed': False, 'points': [[0, 0, 0], [0, 0, 0]]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        bvmap = serializer.save()
        self.assertEqual(bvmap.domain, Domain.INTERVAL)
        self.assertTrue(bvmap.curve.real_space)
        self.assertEqual(serializer.data['domain'], 'interval')

    def test_compact_sample(self):
        serializer = CompactSampleSerializer(data={'dim': 2, 'points': [[0, 0], ['1/3', 2]]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save().points[1], (Fraction(1, 3), 2))
        serializer = CompactSampleSerializer(data={'dim': 2, 'points': [[0, 0, 0]]})
        self.assertFalse(serializer.is_valid())

    def test_ball(self):
        serializer = BallSerializer(data={'center': [0, 0, 0, 0], 'radius': '1/2'})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        ball = serializer.save()
        self.assertEqual(ball.radius, Fraction(1, 2))
        self.assertTrue(ball.contains((0, 0, 0, Fraction(1, 3))))

    def test_tube_nests_its_core(self):
        data = {'core': {'dim': 2, 'closed': False, 'points': [[0, 0, 0, 0], [1, 0, 0, 0]]}, 'radius': '1/5'}
        serializer = TubeSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        tube = serializer.save()
        self.assertFalse(tube.core.closed)
        self.assertEqual(tube.radius, Fraction(1, 5))

    def test_one_form(self):
        data = {'nvars': 2, 'components': [
            {'nvars': 2, 'terms': [{'exponent': [0, 1], 'coefficient': [1, 0]}]},
            {'nvars': 2, 'terms': []},
        ]}
        serializer = OneFormSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.save(), conjugate_form())

    def test_one_form_needs_one_component_per_variable(self):
        data = {'nvars': 2, 'components': [{'nvars': 2, 'terms': []}]}
        serializer = OneFormSerializer(data=data)
        self.assertFalse(serializer.is_valid())
        self.assertIn('components', serializer.errors)


class OutputSerializerTest(SimpleTestCase):
    def test_certificate(self):
        certificate = certify(conjugate_lift(circle_polygon(4)), conjugate_form())
        data = CertificateSerializer(certificate).data
        self.assertEqual(data['verdict'], 'certified-polynomially-convex')
        self.assertEqual(data['integral'], ['0', '4'])
        self.assertEqual(data['form_label'], 'z2dz1')
        self.assertAlmostEqual(data['integral_float'][1], 4.0)

    def test_encode_value(self):
        self.assertEqual(encode_value(Fraction(3, 4), Mode.RATIONAL), '3/4')
        self.assertEqual(encode_value(Fraction(3, 4), Mode.F64), 0.75)
        self.assertEqual(encode_value(np.float64(0.5), Mode.F64), 0.5)
        value = ContourValue(CScalar.zero(), CScalar.one())
        self.assertEqual(encode_value(value, Mode.RATIONAL), {'value': ['0', '0'], 'two_pi_i': ['1', '0']})
        self.assertEqual(encode_value({'ok': True, 'k': (1, None)}, Mode.RATIONAL), {'ok': True, 'k': [1, None]})

    def test_convergence_report(self):
        rows = [{'k': 4, 'hausdorff_curve': 0.2, 'holds': True}, {'k': 2, 'hausdorff_curve': 0.4, 'holds': True}]
        data = ConvergenceReportSerializer(convergence_report('slit', rows, {'n': 16})).data
        self.assertEqual([row['k'] for row in data['rows']], [2, 4])
        self.assertEqual(data['verdicts'], {'k=2': True, 'k=4': True, 'monotone': True})
        self.assertTrue(data['holds'])
