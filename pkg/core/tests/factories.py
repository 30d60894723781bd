"""Seeded builders for the curves, forms and files used across the test suite."""
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from core.geometry.curve_core import PolyCurve, unit_circle_point
from core.geometry.polynomials import CPolynomial, OneForm
from core.geometry.scalar import RATIONAL, CScalar

LIMIT = 2 ** 10


def rational(x: float, limit: int = LIMIT) -> Fraction:
    return Fraction(x).limit_denominator(limit)


def star_polygon(rng: np.random.Generator, m: int, low: float = 1.0, high: float = 2.0):
    """Planar vertices at increasing angles with random radii; always a simple polygon."""
    points = []
    for j in range(m):
        x, y = unit_circle_point(2 * math.pi * j / m, RATIONAL, LIMIT)
        r = rational(rng.uniform(low, high))
        points.append((r * x, r * y))
    return points


def random_lift(rng: np.random.Generator):
    """A real-linear injection R^2 -> R^4 = C^2 of the form (x, y) -> (x, y, ax + by, cx + dy)."""
    a, b, c, d = (rational(v) for v in rng.uniform(-1, 1, 4))
    return lambda p: (p[0], p[1], a * p[0] + b * p[1], c * p[0] + d * p[1])


def simple_curve_c2(seed: int, m: int = 10, complex_line: bool = False) -> PolyCurve:
    rng = np.random.default_rng(seed)
    planar = star_polygon(rng, m)
    lift = (lambda p: (p[0], p[1], p[0], p[1])) if complex_line else random_lift(rng)
    return PolyCurve.build([lift(p) for p in planar], closed=True)


def random_closed_polyline(rng: np.random.Generator, n: int, m: int) -> PolyCurve:
    """Any closed polyline in C^n with rational vertices (not necessarily simple)."""
    points = [tuple(rational(v) for v in rng.uniform(-2, 2, 2 * n)) for _ in range(m)]
    return PolyCurve.build(points, closed=True)


def random_rational_polynomial(rng: np.random.Generator, nvars: int, degree: int) -> CPolynomial:
    terms = []
    for _ in range(int(rng.integers(1, 6))):
        exponent = [0] * nvars
        for _ in range(int(rng.integers(0, degree + 1))):
            exponent[int(rng.integers(0, nvars))] += 1
        coefficient = (Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 9))),
                       Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 9))))
        terms.append((tuple(exponent), coefficient))
    return CPolynomial.from_terms(nvars, terms)


def random_cpoint(rng: np.random.Generator, n: int):
    return [CScalar(rational(re), rational(im)) for re, im in rng.uniform(-3, 3, (n, 2))]


def conjugate_form() -> OneForm:
    """z_2 dz_1 on C^2."""
    return OneForm.monomial(2, (0, 1), 0)


def helix_arc(samples: int = 9, height: Fraction = Fraction(3, 5)) -> PolyCurve:
    """Open rational helix t -> (e^{it}, height * t / pi) in C^2, t in [0, pi]."""
    points = []
    for j in range(samples):
        x, y = unit_circle_point(math.pi * j / (samples - 1), RATIONAL, LIMIT)
        points.append((x, y, height * Fraction(j, samples - 1), Fraction(0)))
    return PolyCurve.build(points, closed=False)


def segment_arc() -> PolyCurve:
    return PolyCurve.build([(0, 0, 0, 0), (1, 0, 0, 0)], closed=False)


def curve_payload(curve: PolyCurve) -> dict:
    return curve.canonical()


def dump(directory: Path, name: str, payload) -> str:
    path = Path(directory) / name
    path.write_text(json.dumps(payload), encoding='utf-8')
    return str(path)


def figure_eight_points():
    """Bow-tie in the plane z = 0 of R^3; its first and third edges cross at the origin."""
    return [(-1, 1, 0), (1, -1, 0), (1, 1, 0), (-1, -1, 0)]

