import math
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from core.constants import Mode, Verdict
from core.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    LinearDependenceError,
    NotSimpleError,
    OpenCurveError,
    VanishingError,
)
from core.geometry.certificates import (
    certificate_search,
    certify,
    complex_independent,
    contour_integral,
    integral_scale,
    is_zero_integral,
    search_integrals,
    totally_real_frame,
    triangle_integral,
    winding_number,
    winding_number_about,
)
from core.geometry.curve_core import PolyCurve, circle_polygon, conjugate_lift, diagonal_lift, refine, reverse
from core.geometry.polynomials import ContourValue, CPolynomial, LaurentImage, OneForm
from core.geometry.scalar import F64, RATIONAL, CScalar
from core.tests.factories import (
    conjugate_form,
    random_closed_polyline,
    random_cpoint,
    random_rational_polynomial,
)


def shoelace(points):
    return sum((p[0] * q[1] - q[0] * p[1] for p, q in zip(points, points[1:] + points[:1])), Fraction(0)) / 2


class FrameCertificateTest(SimpleTestCase):
    def test_frame_form_integrates_to_i_over_the_triangle(self):
        rng = np.random.default_rng(2024)
        checked = 0
        for n in (2, 3):
            for _ in range(50):
                a, b, c = (random_cpoint(rng, n) for _ in range(3))
                u = [y - x for x, y in zip(a, b)]
                w = [y - x for x, y in zip(a, c)]
                if not complex_independent(u, w, RATIONAL):
                    continue
                frame, form = totally_real_frame(a, u, w, RATIONAL)
                self.assertEqual(frame.apply(u), (CScalar(1, 0), CScalar(1, 0)))
                self.assertEqual(triangle_integral(form, a, b, c, RATIONAL), CScalar.i())
                checked += 1
        self.assertGreaterEqual(checked, 95)

    def test_dependent_vectors_span_a_complex_line(self):
        u = [CScalar(1, 0), CScalar(1, 0)]
        w = [CScalar(0, 1), CScalar(0, 1)]
        self.assertFalse(complex_independent(u, w, RATIONAL))
        with self.assertRaises(LinearDependenceError):
            totally_real_frame([CScalar.zero(), CScalar.zero()], u, w, RATIONAL)


class ConjugateCircleTest(SimpleTestCase):
    def test_float_value_matches_closed_form(self):
        n = 1024
        curve = conjugate_lift(circle_polygon(n, ctx=F64))
        value = complex(contour_integral(curve, OneForm.monomial(2, (0, 1), 0, F64)))
        self.assertLess(abs(value - 1j * n * math.sin(2 * math.pi / n)), 1e-12)
        self.assertLess(abs(value - 2j * math.pi), 1e-4)

    def test_rational_value_is_twice_i_times_the_area(self):
        polygon = circle_polygon(64)
        value = contour_integral(conjugate_lift(polygon), conjugate_form())
        self.assertEqual(value, CScalar(0, 2 * shoelace(list(polygon.points))))

    def test_certify_reports_exact_verdict(self):
        certificate = certify(conjugate_lift(circle_polygon(16)), conjugate_form())
        self.assertEqual(certificate.verdict, Verdict.CERTIFIED)
        self.assertTrue(certificate.certified)
        self.assertEqual(certificate.mode, Mode.RATIONAL)

    def test_float_verdict_is_marked(self):
        curve = conjugate_lift(circle_polygon(16, ctx=F64))
        certificate = certify(curve, OneForm.monomial(2, (0, 1), 0, F64))
        self.assertEqual(certificate.verdict, Verdict.CERTIFIED_FLOAT)

    def test_curve_in_a_complex_line_is_inconclusive(self):
        curve = diagonal_lift(circle_polygon(16))
        self.assertEqual(certify(curve, conjugate_form()).verdict, Verdict.INCONCLUSIVE)
        self.assertIsNone(certificate_search(curve, 3))

    def test_search_finds_a_degree_one_certificate(self):
        found = certificate_search(conjugate_lift(circle_polygon(16)), 3)
        self.assertIsNotNone(found)
        self.assertEqual(max(p.degree for p in found.form.components), 1)

    def test_search_integrals_lists_every_monomial_form(self):
        values = search_integrals(conjugate_lift(circle_polygon(8)), 1)
        # dz1, dz2, then z1 dz1, z2 dz1, z1 dz2, z2 dz2
        self.assertEqual(len(values), 6)
        self.assertEqual(sum(1 for _, v in values if not is_zero_integral(v, RATIONAL)), 2)


class PolynomialTest(SimpleTestCase):
    def test_evaluate(self):
        poly = CPolynomial.from_terms(2, [((1, 1), (0, 1)), ((0, 0), 3)])
        self.assertEqual(poly.evaluate([CScalar(1, 1), CScalar(2, 0)]), CScalar(1, 2))
        self.assertEqual(poly.degree, 2)

    def test_differential_components_are_partial_derivatives(self):
        poly = CPolynomial.from_terms(2, [((2, 1), 1)])
        form = poly.differential()
        self.assertEqual(form.components[0], CPolynomial.from_terms(2, [((1, 1), 2)]))
        self.assertEqual(form.components[1], CPolynomial.from_terms(2, [((2, 0), 1)]))


class ExactFormTest(SimpleTestCase):
    def test_exact_forms_integrate_to_zero(self):
        rng = np.random.default_rng(7)
        curves = [random_closed_polyline(rng, n, 5) for n in (1, 2, 3) for _ in range(4)][:10]
        for index in range(50):
            curve = curves[index % len(curves)]
            poly = random_rational_polynomial(rng, curve.dim, 5)
            self.assertEqual(contour_integral(curve, poly.differential()), CScalar.zero())


class ValidationTest(SimpleTestCase):
    def test_open_curves_have_no_contour_integral(self):
        arc = PolyCurve.build([(0, 0, 0, 0), (1, 0, 1, 0)], closed=False)
        with self.assertRaises(OpenCurveError):
            contour_integral(arc, conjugate_form())

    def test_form_and_curve_dimensions_must_agree(self):
        with self.assertRaises(DimensionMismatchError):
            contour_integral(circle_polygon(8), conjugate_form())

    def test_certify_rejects_non_simple_curves(self):
        bowtie = conjugate_lift(PolyCurve.build([(-1, 1), (1, -1), (1, 1), (-1, -1)]))
        with self.assertRaises(NotSimpleError):
            certify(bowtie, conjugate_form())

    def test_negative_degree_bound(self):
        with self.assertRaises(InvalidParameterError):
            certificate_search(conjugate_lift(circle_polygon(8)), -1)


class WindingNumberTest(SimpleTestCase):
    def test_winding_about_points(self):
        polygon = circle_polygon(16)
        self.assertEqual(winding_number_about(polygon, (0, 0)), 1)
        self.assertEqual(winding_number_about(polygon, ('1/2', '1/3')), 1)
        self.assertEqual(winding_number_about(polygon, (3, 0)), 0)
        self.assertEqual(winding_number_about(reverse(polygon), (0, 0)), -1)

    def test_winding_of_a_polynomial(self):
        polygon = circle_polygon(32)
        self.assertEqual(winding_number(polygon, CPolynomial.monomial((3,))), 3)

    def test_polynomial_vanishing_on_the_curve(self):
        with self.assertRaises(VanishingError):
            winding_number_about(circle_polygon(16), (1, 0))


class LaurentImageTest(SimpleTestCase):
    def test_residue_term_is_kept_symbolic(self):
        image = LaurentImage(circle_polygon(16), (1, -1))
        value = contour_integral(image, conjugate_form())
        self.assertEqual(value, ContourValue(CScalar.zero(), CScalar.one()))
        self.assertAlmostEqual(complex(value), 2j * math.pi)
        self.assertEqual(certify(image, conjugate_form()).verdict, Verdict.CERTIFIED)

    def test_image_through_the_origin_is_rejected(self):
        square = PolyCurve.build([(-1, 0), (1, 0), (1, 1), (-1, 1)])
        with self.assertRaises(VanishingError):
            LaurentImage(square, (1, -1))

    def test_positive_exponents_are_exact_forms_of_the_base(self):
        image = LaurentImage(circle_polygon(12), (1, 2))
        value = contour_integral(image, OneForm.monomial(2, (1, 0), 1))
        self.assertTrue(value.is_zero(RATIONAL))


def random_form(rng, n, degree):
    return OneForm(tuple(random_rational_polynomial(rng, n, degree) for _ in range(n)))


def new_params(curve, extra):
    return sorted(t for t in extra if t < 1 and t not in curve.params)


class ContourIntegralPropertyTest(SimpleTestCase):
    @settings(derandomize=True, max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10_000), n=st.integers(1, 3),
           extra=st.sets(st.fractions(min_value=0, max_value=1, max_denominator=97), max_size=5))
    def test_refinement_leaves_the_integral_unchanged(self, seed, n, extra):
        rng = np.random.default_rng(seed)
        curve = random_closed_polyline(rng, n, 5)
        form = random_form(rng, n, 3)
        refined = refine(curve, new_params(curve, extra))
        self.assertEqual(contour_integral(refined, form), contour_integral(curve, form))

    @settings(derandomize=True, max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10_000), n=st.integers(1, 3))
    def test_integral_is_linear_in_the_form(self, seed, n):
        rng = np.random.default_rng(seed)
        curve = random_closed_polyline(rng, n, 5)
        first, second = random_form(rng, n, 3), random_form(rng, n, 3)
        factor = CScalar(Fraction(int(rng.integers(-9, 10)), 7), Fraction(int(rng.integers(-9, 10)), 5))
        self.assertEqual(contour_integral(curve, first + second),
                         contour_integral(curve, first) + contour_integral(curve, second))
        self.assertEqual(contour_integral(curve, first.scale(factor)), factor * contour_integral(curve, first))

    @settings(derandomize=True, max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10_000), n=st.integers(1, 3))
    def test_reversal_negates_the_integral(self, seed, n):
        rng = np.random.default_rng(seed)
        curve = random_closed_polyline(rng, n, 6)
        form = random_form(rng, n, 3)
        self.assertEqual(contour_integral(reverse(curve), form), -contour_integral(curve, form))

    @settings(derandomize=True, max_examples=30, deadline=None)
    @given(power=st.integers(1, 4),
           extra=st.sets(st.fractions(min_value=0, max_value=1, max_denominator=97), max_size=5))
    def test_refinement_leaves_the_winding_number_unchanged(self, power, extra):
        polygon = circle_polygon(16)
        refined = refine(polygon, new_params(polygon, extra))
        self.assertEqual(winding_number(refined, CPolynomial.monomial((power,))), power)
        self.assertEqual(winding_number_about(refined, ('1/3', '-1/4')), 1)
        self.assertEqual(winding_number_about(refined, (2, 1)), 0)


class FloatToleranceTest(SimpleTestCase):
    def test_small_curves_still_certify(self):
        tiny = conjugate_lift(circle_polygon(32, radius=Fraction(1, 100_000), ctx=F64))
        certificate = certify(tiny, OneForm.monomial(2, (0, 1), 0, F64))
        self.assertLess(abs(complex(certificate.integral)), 1e-9)
        self.assertEqual(certificate.verdict, Verdict.CERTIFIED_FLOAT)

    def test_rounding_on_large_curves_is_not_a_certificate(self):
        large = conjugate_lift(circle_polygon(64, radius=1000, ctx=F64))
        exact = CPolynomial.from_terms(2, [((1, 1), 1), ((2, 0), (1, 2))], F64).differential()
        self.assertEqual(certify(large, exact).verdict, Verdict.INCONCLUSIVE)

    def test_scale_grows_with_the_curve(self):
        form = OneForm.monomial(2, (0, 1), 0, F64)
        small = integral_scale(conjugate_lift(circle_polygon(16, ctx=F64)), form)
        large = integral_scale(conjugate_lift(circle_polygon(16, radius=10, ctx=F64)), form)
        self.assertAlmostEqual(large / small, 100.0)
        self.assertEqual(integral_scale(conjugate_lift(circle_polygon(16)), conjugate_form()), 1.0)
