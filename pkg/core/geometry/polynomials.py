"""Sparse complex polynomials, holomorphic one-forms and their pull-backs."""
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from ..constants import Mode
from ..exceptions import DimensionMismatchError, InvalidParameterError, MalformedInputError, VanishingError
from ..utils.digest import content_digest
from .curve_core import PolyCurve, point_segment_distance_sq
from .scalar import RATIONAL, CScalar, ScalarContext

Exponent = Tuple[int, ...]
Univariate = List[CScalar]


def monomial_exponents(nvars: int, degree: int) -> Iterator[Exponent]:
    """Exponents of total ``degree`` in lexicographically descending order."""
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in monomial_exponents(nvars - 1, degree - first):
            yield (first,) + rest


def poly_mul(a: Univariate, b: Univariate) -> Univariate:
    out = [a[0] * 0 for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.re == 0 and x.im == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def poly_add(a: Univariate, b: Univariate) -> Univariate:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = out[i] + y
    return out


def affine_powers(start: CScalar, step: CScalar, top: int) -> List[Univariate]:
    """Coefficient lists of ``(start + t * step) ** k`` for k = 0..top."""
    one = CScalar(start.re * 0 + 1, start.re * 0)
    powers = [[one]]
    base = [start, step]
    for _ in range(top):
        powers.append(poly_mul(powers[-1], base))
    return powers


def integrate_unit(coefficients: Univariate) -> CScalar:
    """Integral over [0, 1] of the polynomial with the given coefficients."""
    total = coefficients[0] * 0
    for i, c in enumerate(coefficients):
        total = total + c / (i + 1)
    return total


@dataclass(frozen=True)
class CPolynomial:
    """A polynomial in z_1..z_n with Gaussian-rational (or float) coefficients."""

    nvars: int
    terms: Tuple[Tuple[Exponent, CScalar], ...]

    def __post_init__(self):
        if self.nvars <= 0:
            raise InvalidParameterError(f'A polynomial needs at least one variable, got {self.nvars}')
        seen = set()
        for exponent, coefficient in self.terms:
            if len(exponent) != self.nvars or any(e < 0 for e in exponent):
                raise MalformedInputError(f'Exponent {exponent} is not a multi-index of length {self.nvars}')
            if exponent in seen:
                raise MalformedInputError(f'Duplicate exponent {exponent}')
            if coefficient.re == 0 and coefficient.im == 0:
                raise MalformedInputError(f'Zero coefficient stored for exponent {exponent}')
            seen.add(exponent)

    @classmethod
    def from_terms(cls, nvars: int, terms, ctx: ScalarContext = RATIONAL) -> 'CPolynomial':
        """Build from an iterable (or mapping) of ``(exponent, coefficient)``; like terms are merged."""
        merged: Dict[Exponent, CScalar] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exponent, coefficient in items:
            exponent = tuple(int(e) for e in exponent)
            value = CScalar.of(coefficient, ctx)
            merged[exponent] = merged[exponent] + value if exponent in merged else value
        kept = tuple(sorted(((e, c) for e, c in merged.items() if not (c.re == 0 and c.im == 0)),
                            key=lambda item: (-sum(item[0]), tuple(-x for x in item[0]))))
        return cls(nvars, kept)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient=1, ctx: ScalarContext = RATIONAL) -> 'CPolynomial':
        return cls.from_terms(len(exponent), [(tuple(exponent), coefficient)], ctx)

    @classmethod
    def constant(cls, nvars: int, value=1, ctx: ScalarContext = RATIONAL) -> 'CPolynomial':
        return cls.from_terms(nvars, [((0,) * nvars, value)], ctx)

    @classmethod
    def variable(cls, nvars: int, index: int, ctx: ScalarContext = RATIONAL) -> 'CPolynomial':
        exponent = tuple(1 if k == index else 0 for k in range(nvars))
        return cls.monomial(exponent, 1, ctx)

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: 'CPolynomial') -> 'CPolynomial':
        if self.nvars != other.nvars:
            raise DimensionMismatchError(f'{self.nvars} vs {other.nvars} variables')
        return CPolynomial.from_terms(self.nvars, list(self.terms) + list(other.terms))

    def scale(self, factor: CScalar) -> 'CPolynomial':
        return CPolynomial.from_terms(self.nvars, [(e, c * factor) for e, c in self.terms])

    def derivative(self, index: int) -> 'CPolynomial':
        terms = []
        for exponent, coefficient in self.terms:
            k = exponent[index]
            if k:
                lowered = exponent[:index] + (k - 1,) + exponent[index + 1:]
                terms.append((lowered, coefficient * k))
        return CPolynomial.from_terms(self.nvars, terms)

    def differential(self) -> 'OneForm':
        """The exact form dP = sum_j dP/dz_j dz_j."""
        return OneForm(tuple(self.derivative(j) for j in range(self.nvars)))

    def evaluate(self, z: Sequence[CScalar]) -> CScalar:
        if len(z) != self.nvars:
            raise DimensionMismatchError(f'Expected {self.nvars} coordinates, got {len(z)}')
        total = CScalar(z[0].re * 0, z[0].re * 0)
        for exponent, coefficient in self.terms:
            value = coefficient
            for zj, e in zip(z, exponent):
                if e:
                    value = value * zj.pow(e)
            total = total + value
        return total

    def along(self, start: Sequence[CScalar], step: Sequence[CScalar]) -> Univariate:
        """Coefficients in t of ``P(start + t * step)``."""
        top = self.degree
        powers = [affine_powers(a, d, top) for a, d in zip(start, step)]
        zero = start[0] * 0
        out: Univariate = [zero]
        for exponent, coefficient in self.terms:
            product: Univariate = [coefficient]
            for j, e in enumerate(exponent):
                if e:
                    product = poly_mul(product, powers[j][e])
            out = poly_add(out, product)
        return out

    def canonical(self, mode: Mode = Mode.RATIONAL) -> dict:
        return {
            'nvars': self.nvars,
            'terms': [{'exponent': list(e), 'coefficient': c.as_pair(mode)} for e, c in self.terms],
        }

    def label(self) -> str:
        """Readable form such as ``z2`` or ``(1/2)*z1^2*z2``."""
        parts = []
        for exponent, coefficient in self.terms:
            factors = [f'z{j + 1}' + (f'^{e}' if e > 1 else '') for j, e in enumerate(exponent) if e]
            one = coefficient.re == 1 and coefficient.im == 0
            if not one or not factors:
                factors.insert(0, _coefficient_label(coefficient))
            parts.append('*'.join(factors))
        return ' + '.join(parts) or '0'


def _coefficient_label(c: CScalar) -> str:
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        return f'({c.im})i'
    return f'({c.re}+{c.im}i)'


@dataclass(frozen=True)
class OneForm:
    """The holomorphic one-form sum_j P_j(z) dz_j."""

    components: Tuple[CPolynomial, ...]

    def __post_init__(self):
        if not self.components:
            raise MalformedInputError('A one-form needs at least one component')
        nvars = self.components[0].nvars
        if len(self.components) != nvars or any(p.nvars != nvars for p in self.components):
            raise DimensionMismatchError(f'A one-form on C^{nvars} needs {nvars} components in {nvars} variables')

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @classmethod
    def monomial(cls, nvars: int, exponent: Sequence[int], component: int,
                 ctx: ScalarContext = RATIONAL) -> 'OneForm':
        """The form ``z^exponent dz_{component}`` (component is 0-based)."""
        zero = CPolynomial(nvars, ())
        parts = [CPolynomial.monomial(exponent, 1, ctx) if j == component else zero for j in range(nvars)]
        return cls(tuple(parts))

    def __add__(self, other: 'OneForm') -> 'OneForm':
        return OneForm(tuple(p + q for p, q in zip(self.components, other.components)))

    def scale(self, factor: CScalar) -> 'OneForm':
        return OneForm(tuple(p.scale(factor) for p in self.components))

    def canonical(self, mode: Mode = Mode.RATIONAL) -> dict:
        return {'nvars': self.nvars, 'components': [p.canonical(mode) for p in self.components]}

    def digest(self) -> str:
        return content_digest(self.canonical())

    def label(self) -> str:
        parts = []
        for j, p in enumerate(self.components):
            if p.is_zero():
                continue
            body = p.label()
            body = f'({body})' if len(p.terms) > 1 else ('' if body == '1' else body)
            parts.append(f'{body}dz{j + 1}')
        return ' + '.join(parts) or '0'


@dataclass(frozen=True)
class ContourValue:
    """``value + two_pi_i * 2*pi*i`` with Gaussian-rational parts.

    Integrals over Laurent images pick up residue terms; keeping the 2*pi*i
    multiple symbolic keeps zero tests exact because pi is transcendental.
    """

    value: CScalar
    two_pi_i: CScalar

    def is_zero(self, ctx: ScalarContext = RATIONAL, scale=1) -> bool:
        if ctx.exact:
            return self.value.is_zero(ctx) and self.two_pi_i.is_zero(ctx)
        return ctx.is_zero(abs(complex(self)), scale)

    def __complex__(self):
        return complex(self.value) + 2j * math.pi * complex(self.two_pi_i)

    def __add__(self, other: 'ContourValue') -> 'ContourValue':
        return ContourValue(self.value + other.value, self.two_pi_i + other.two_pi_i)

    def __sub__(self, other: 'ContourValue') -> 'ContourValue':
        return ContourValue(self.value - other.value, self.two_pi_i - other.two_pi_i)


@dataclass(frozen=True)
class LaurentImage:
    """The image of a planar closed polyline under ``z -> (z**e_1, ..., z**e_n)``.

    Negative exponents are allowed as long as the base polyline avoids 0.
    """

    base: PolyCurve
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if self.base.dim != 1 or self.base.real_space:
            raise DimensionMismatchError('The base of a Laurent image must be a planar curve in C^1')
        if not self.exponents:
            raise InvalidParameterError('A Laurent image needs at least one exponent')
        if any(e < 0 for e in self.exponents):
            origin = (self.base.points[0][0] * 0,) * 2
            for p, q in self.base.segments():
                if point_segment_distance_sq(origin, p, q) == 0:
                    raise VanishingError('The base polyline passes through 0')

    @property
    def dim(self) -> int:
        return len(self.exponents)

    @property
    def closed(self) -> bool:
        return self.base.closed

    @property
    def mode(self) -> Mode:
        return self.base.mode

    @property
    def ctx(self) -> ScalarContext:
        return self.base.ctx

    def lift(self, z: CScalar) -> List[CScalar]:
        return [z.pow(e) for e in self.exponents]

    def sample(self, per_segment: int) -> List[Tuple[float, ...]]:
        """Float points of the image, ``per_segment`` per base segment."""
        out = []
        for p, q in self.base.segments():
            a, b = complex(float(p[0]), float(p[1])), complex(float(q[0]), float(q[1]))
            for k in range(per_segment):
                z = a + (b - a) * k / per_segment
                flat = []
                for e in self.exponents:
                    w = z ** e
                    flat.extend((w.real, w.imag))
                out.append(tuple(flat))
        return out

    def pullback(self, form: OneForm) -> Dict[int, CScalar]:
        """The planar Laurent form ``sum_m c_m z**m dz`` with the same contour integrals."""
        if form.nvars != self.dim:
            raise DimensionMismatchError(f'Form on C^{form.nvars} over a curve in C^{self.dim}')
        out: Dict[int, CScalar] = {}
        for j, component in enumerate(form.components):
            ej = self.exponents[j]
            if ej == 0:
                continue
            for exponent, coefficient in component.terms:
                m = sum(a * e for a, e in zip(exponent, self.exponents)) + ej - 1
                value = coefficient * ej
                out[m] = out[m] + value if m in out else value
        return {m: c for m, c in out.items() if not (c.re == 0 and c.im == 0)}

    def canonical(self) -> dict:
        return {'base': self.base.canonical(), 'exponents': list(self.exponents)}

    def digest(self) -> str:
        return content_digest(self.canonical())


def iter_monomial_forms(nvars: int, max_degree: int, ctx: ScalarContext = RATIONAL) -> Iterable[OneForm]:
    """Monomial forms ``z^a dz_j`` ordered by degree, then component, then exponent."""
    for degree in range(max_degree + 1):
        for j in range(nvars):
            for exponent in monomial_exponents(nvars, degree):
                yield OneForm.monomial(nvars, exponent, j, ctx)
