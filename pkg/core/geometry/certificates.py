"""Contour integrals of polynomial one-forms and polynomial-convexity certificates.

A rectifiable simple closed curve is polynomially convex as soon as some
holomorphic one-form has a nonzero integral over it. ``certify`` checks one
form, ``certificate_search`` walks the monomial forms in a fixed order.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from ..constants import Mode, Verdict
from ..exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    LinearDependenceError,
    NotSimpleError,
    OpenCurveError,
    VanishingError,
)
from .curve_core import PolyCurve, complex_coords, is_simple, vsub
from .polynomials import (
    ContourValue,
    CPolynomial,
    LaurentImage,
    OneForm,
    integrate_unit,
    iter_monomial_forms,
)
from .scalar import F64, CScalar, ScalarContext

logger = logging.getLogger(__name__)

# Bisection depth after which f is treated as vanishing on the curve
WINDING_SPLIT_DEPTH = 40

Integrable = Union[PolyCurve, LaurentImage]
Integral = Union[CScalar, ContourValue]


@dataclass(frozen=True)
class Certificate:
    form: OneForm
    integral: Integral
    verdict: Verdict
    curve_digest: str
    mode: Mode = Mode.RATIONAL

    @property
    def certified(self) -> bool:
        return self.verdict != Verdict.INCONCLUSIVE


@dataclass(frozen=True)
class LinearFrame:
    """A complex-linear map T: C^n -> C^2 (rows of complex entries) and a base point."""

    rows: Tuple[Tuple[CScalar, ...], Tuple[CScalar, ...]]
    base: Tuple[CScalar, ...]
    pivots: Tuple[int, int]

    def apply(self, z: Sequence[CScalar]) -> Tuple[CScalar, CScalar]:
        return tuple(sum((t * x for t, x in zip(row, z)), z[0] * 0) for row in self.rows)


def _check_closed(curve):
    if not curve.closed:
        raise OpenCurveError('Contour integrals need a closed curve')


def _segment_integral(form: OneForm, start: List[CScalar], step: List[CScalar]) -> CScalar:
    total = start[0] * 0
    for j, component in enumerate(form.components):
        if component.is_zero() or (step[j].re == 0 and step[j].im == 0):
            continue
        total = total + integrate_unit(component.along(start, step)) * step[j]
    return total


def _laurent_integral(image: LaurentImage, form: OneForm) -> ContourValue:
    density = image.pullback(form)
    zero = CScalar.zero(image.ctx)
    value, residue = zero, zero
    base = image.base
    for m, coefficient in density.items():
        if m == -1:
            residue = residue + coefficient * winding_number_about(base, (0, 0))
            continue
        acc = zero
        for p, q in base.segments():
            a, b = CScalar(p[0], p[1]), CScalar(q[0], q[1])
            acc = acc + (b.pow(m + 1) - a.pow(m + 1))
        value = value + coefficient * acc / (m + 1)
    return ContourValue(value, residue)


def contour_integral(curve: Integrable, form: OneForm) -> Integral:
    """Exact integral of ``form`` over a closed polyline (or Laurent image)."""
    _check_closed(curve)
    if isinstance(curve, LaurentImage):
        return _laurent_integral(curve, form)
    if curve.real_space:
        raise DimensionMismatchError('Contour integrals need a curve in C^n, not a real BV map')
    if curve.dim != form.nvars:
        raise DimensionMismatchError(f'Curve in C^{curve.dim} but form on C^{form.nvars}')
    total = CScalar.zero(curve.ctx)
    for p, q in curve.segments():
        total = total + _segment_integral(form, complex_coords(p), complex_coords(vsub(q, p)))
    return total


def integral_scale(curve: Integrable, form: OneForm) -> float:
    """Curve length times the largest size of ``form`` at a vertex.

    Float zero tests on integrals are taken relative to this. Rational mode
    never needs it and gets 1.
    """
    if curve.ctx.exact:
        return 1.0
    if isinstance(curve, LaurentImage):
        bases = [complex(float(p[0]), float(p[1])) for p in curve.base.points]
        vertices = [[CScalar.of(z ** e, F64) for e in curve.exponents] for z in bases]
    else:
        vertices = [[CScalar.of(complex(c), F64) for c in complex_coords(p)] for p in curve.points]
    length = math.fsum(
        math.sqrt(math.fsum(abs(complex(a) - complex(b)) ** 2 for a, b in zip(u, v)))
        for u, v in zip(vertices, vertices[1:] + vertices[:1]))
    size = max(math.sqrt(math.fsum(abs(complex(p.evaluate(z))) ** 2 for p in form.components)) for z in vertices)
    return length * size if size > 0 else length


def is_zero_integral(value: Integral, ctx: ScalarContext, scale=1) -> bool:
    return value.is_zero(ctx, scale)


def _require_simple(curve: Integrable):
    base = curve.base if isinstance(curve, LaurentImage) else curve
    witness = is_simple(base)
    if not witness:
        raise NotSimpleError(f'Curve is not simple: segments {witness.segments} meet',
                             witness=witness, crossing=[str(t) for t in witness.crossing])


def _certificate(curve: Integrable, form: OneForm, value: Integral) -> Certificate:
    ctx = curve.ctx
    if is_zero_integral(value, ctx, integral_scale(curve, form)):
        verdict = Verdict.INCONCLUSIVE
    elif ctx.exact:
        verdict = Verdict.CERTIFIED
    else:
        verdict = Verdict.CERTIFIED_FLOAT
    return Certificate(form, value, verdict, curve.digest(), curve.mode)


def certify(curve: Integrable, form: OneForm) -> Certificate:
    """Certificate for ``form`` over a simple closed curve.

    A zero integral gives ``inconclusive``, never a negative verdict.
    """
    _check_closed(curve)
    _require_simple(curve)
    certificate = _certificate(curve, form, contour_integral(curve, form))
    logger.info('Form %s over %s: %s', form.label(), certificate.curve_digest[:12], certificate.verdict.value)
    return certificate


def certificate_search(curve: Integrable, max_degree: int) -> Optional[Certificate]:
    """First monomial form ``z^a dz_j`` with |a| <= max_degree that certifies ``curve``."""
    if max_degree < 0:
        raise InvalidParameterError(f'Degree bound must be nonnegative, got {max_degree}')
    _check_closed(curve)
    _require_simple(curve)
    for form in iter_monomial_forms(curve.dim, max_degree, curve.ctx):
        certificate = _certificate(curve, form, contour_integral(curve, form))
        if certificate.certified:
            logger.info('Certificate found: %s', form.label())
            return certificate
    logger.warning('No monomial certificate up to degree %d', max_degree)
    return None


def search_integrals(curve: Integrable, max_degree: int) -> List[Tuple[OneForm, Integral]]:
    """Every monomial form in search order together with its integral."""
    return [(form, contour_integral(curve, form)) for form in iter_monomial_forms(curve.dim, max_degree, curve.ctx)]


def _piece_increment(f: CPolynomial, start, step, ctx: ScalarContext, depth: int) -> float:
    """Argument change of f along ``start + t * step``, t in [0, 1]."""
    coefficients = f.along(start, step)
    c0 = coefficients[0]
    spread = sum((c.l1() for c in coefficients[1:]), c0.re * 0)
    head = c0.abs2()
    if head == 0 or (not ctx.exact and head <= ctx.tol * ctx.tol):
        raise VanishingError('The polynomial vanishes on the curve')
    if spread * spread < head:
        end = c0
        for c in coefficients[1:]:
            end = end + c
        return cmath.phase(complex(end * c0.conjugate()))
    if depth >= WINDING_SPLIT_DEPTH:
        raise VanishingError('The polynomial (nearly) vanishes on the curve')
    half = [s / 2 for s in step]
    middle = [a + h for a, h in zip(start, half)]
    return (_piece_increment(f, start, half, ctx, depth + 1)
            + _piece_increment(f, middle, half, ctx, depth + 1))


def winding_number(curve: PolyCurve, f: CPolynomial) -> int:
    """Winding number of ``f o curve`` about 0.

    Each segment is split until the Taylor coefficients of f along it certify
    that the value stays inside a disc avoiding 0, so principal arguments add
    up without branch ambiguity.
    """
    _check_closed(curve)
    if curve.dim != f.nvars:
        raise DimensionMismatchError(f'Curve in C^{curve.dim} but polynomial in {f.nvars} variables')
    ctx = curve.ctx
    total = math.fsum(
        _piece_increment(f, complex_coords(p), complex_coords(vsub(q, p)), ctx, 0)
        for p, q in curve.segments())
    return round(total / (2 * math.pi))


def winding_number_about(curve: PolyCurve, center) -> int:
    """Winding number of a planar closed curve about ``center``."""
    if curve.dim != 1:
        raise DimensionMismatchError('Winding about a point needs a planar curve in C^1')
    ctx = curve.ctx
    c = CScalar.of(tuple(center), ctx)
    f = CPolynomial.from_terms(1, [((1,), 1), ((0,), -c)], ctx)
    return winding_number(curve, f)


def _minor(u: Sequence[CScalar], w: Sequence[CScalar], p: int, q: int) -> CScalar:
    return u[p] * w[q] - u[q] * w[p]


def complex_independent(u: Sequence[CScalar], w: Sequence[CScalar], ctx: ScalarContext) -> bool:
    """Whether u and w span a totally real plane (some 2x2 minor of [u w] is nonzero)."""
    scale = max(sum(x.abs2() for x in u), 1) * max(sum(x.abs2() for x in w), 1)
    return any(not ctx.is_zero(_minor(u, w, p, q).abs2(), scale * ctx.tol)
               for p in range(len(u)) for q in range(p + 1, len(u)))


def totally_real_frame(a: Sequence[CScalar], u: Sequence[CScalar], w: Sequence[CScalar],
                       ctx: ScalarContext) -> Tuple[LinearFrame, OneForm]:
    """Frame with T(u) = (1, 1), T(w) = (i, -i) and the form (T2(z) - T2(a)) dT1(z).

    In T-coordinates the triangle a, a + u, a + w is (0, 1, i) inside
    {(zeta, conj zeta)}, so the form integrates to exactly i over its boundary.
    """
    n = len(u)
    if len(a) != n or len(w) != n or n < 2:
        raise DimensionMismatchError('Frame vectors must live in one C^n with n >= 2')
    best, pivots = None, None
    for p in range(n):
        for q in range(p + 1, n):
            size = _minor(u, w, p, q).abs2()
            if best is None or size > best:
                best, pivots = size, (p, q)
    scale = max(sum(x.abs2() for x in u), 1) * max(sum(x.abs2() for x in w), 1)
    if ctx.is_zero(best, scale * ctx.tol):
        raise LinearDependenceError('Vectors are complex-linearly dependent; the plane contains a complex line')
    p, q = pivots
    det = _minor(u, w, p, q)
    one, i = CScalar.one(ctx), CScalar.i(ctx)
    zero = CScalar.zero(ctx)

    def solve(first: CScalar, second: CScalar) -> Tuple[CScalar, ...]:
        row = [zero] * n
        row[p] = (first * w[q] - u[q] * second) / det
        row[q] = (u[p] * second - w[p] * first) / det
        return tuple(row)

    t1, t2 = solve(one, i), solve(one, -i)
    frame = LinearFrame((t1, t2), tuple(a), pivots)
    shift = sum((t * x for t, x in zip(t2, a)), zero)
    components = []
    for j in range(n):
        terms = [((0,) * n, -(t1[j] * shift))]
        for k in range(n):
            exponent = tuple(1 if m == k else 0 for m in range(n))
            terms.append((exponent, t1[j] * t2[k]))
        components.append(CPolynomial.from_terms(n, terms, ctx))
    return frame, OneForm(tuple(components))


def triangle_integral(form: OneForm, a, b, c, ctx: ScalarContext) -> CScalar:
    """Integral of ``form`` over the boundary a -> b -> c -> a (points in C^n as CScalar lists)."""
    total = CScalar.zero(ctx)
    for start, end in ((a, b), (b, c), (c, a)):
        total = total + _segment_integral(form, list(start), [e - s for s, e in zip(start, end)])
    return total
