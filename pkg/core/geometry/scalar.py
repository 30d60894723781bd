"""Numeric modes shared by every geometry module.

Two modes are supported. In ``rational`` mode all coordinates are
:class:`fractions.Fraction` and every zero test is exact. In ``f64`` mode
coordinates are floats and zero tests are relative to the tolerance of the
active :class:`ScalarContext`.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from ..constants import DEFAULT_TOLERANCE, DENOMINATOR_LIMIT, SQRT_BITS, Mode
from ..exceptions import MalformedInputError

Real = Union[Fraction, float]


@dataclass(frozen=True)
class ScalarContext:
    mode: Mode = Mode.RATIONAL
    tol: float = DEFAULT_TOLERANCE

    @property
    def exact(self) -> bool:
        return self.mode == Mode.RATIONAL

    def coerce(self, value) -> Real:
        """Convert ints, floats, Fractions and ``"p/q"`` strings into this mode."""
        if isinstance(value, bool):
            raise MalformedInputError(f'Boolean {value!r} is not a scalar')
        try:
            if self.exact:
                result = value if isinstance(value, Fraction) else Fraction(value)
                return result
            result = float(Fraction(value)) if isinstance(value, str) else float(value)
        except (ValueError, TypeError, ZeroDivisionError, OverflowError) as exc:
            raise MalformedInputError(f'Cannot read {value!r} as a scalar: {exc}') from exc
        if not math.isfinite(result):
            raise MalformedInputError(f'Scalar {value!r} is not finite')
        return result

    def zero(self) -> Real:
        return Fraction(0) if self.exact else 0.0

    def one(self) -> Real:
        return Fraction(1) if self.exact else 1.0

    def is_zero(self, x, scale=1) -> bool:
        if self.exact:
            return x == 0
        return x == 0 or abs(x) <= self.tol * abs(float(scale))

    def sign(self, x, scale=1) -> int:
        if self.is_zero(x, scale):
            return 0
        return 1 if x > 0 else -1

    def rationalize(self, x: float, limit: int = DENOMINATOR_LIMIT) -> Real:
        """Round float data (trig values, random draws) into this mode."""
        if self.exact:
            return Fraction(x).limit_denominator(limit)
        return float(x)


RATIONAL = ScalarContext(Mode.RATIONAL)
F64 = ScalarContext(Mode.F64)


def context_for(mode, tol: float = DEFAULT_TOLERANCE) -> ScalarContext:
    return ScalarContext(Mode(mode), tol)


def sqrt_bounds(q: Real, bits: int = SQRT_BITS) -> Tuple[Real, Real]:
    """Certified bounds ``lo <= sqrt(q) <= hi``.

    Exact for Fractions (``hi - lo <= 2**-bits``); for floats the bounds are the
    rounded root widened by a few ulps.
    """
    if q < 0:
        raise ValueError(f'sqrt of negative value {q}')
    if not isinstance(q, Fraction):
        root = math.sqrt(q)
        return root * (1 - 4e-16), root * (1 + 4e-16)
    if q == 0:
        return Fraction(0), Fraction(0)
    scale = 1 << bits
    scaled = q * scale * scale
    floor_value = scaled.numerator // scaled.denominator
    s = math.isqrt(floor_value)
    lo = Fraction(s, scale)
    if s * s == scaled:
        return lo, lo
    return lo, Fraction(s + 1, scale)


def sqrt_upper(q: Real) -> Real:
    return sqrt_bounds(q)[1]


def sqrt_lower(q: Real) -> Real:
    return sqrt_bounds(q)[0]


def format_scalar(x: Real, mode: Mode):
    """JSON form of a scalar: ``"p/q"`` strings in rational mode, numbers in f64."""
    if Mode(mode) == Mode.RATIONAL:
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f'{x.numerator}/{x.denominator}'
    return float(x)


@dataclass(frozen=True, slots=True)
class CScalar:
    """A complex number over the active real field (Gaussian rationals or floats)."""

    re: Real
    im: Real

    @classmethod
    def of(cls, value, ctx: ScalarContext = RATIONAL) -> 'CScalar':
        if isinstance(value, CScalar):
            return cls(ctx.coerce(value.re), ctx.coerce(value.im))
        if isinstance(value, complex):
            return cls(ctx.coerce(value.real), ctx.coerce(value.imag))
        if isinstance(value, (tuple, list)):
            re, im = value
            return cls(ctx.coerce(re), ctx.coerce(im))
        return cls(ctx.coerce(value), ctx.zero())

    @classmethod
    def zero(cls, ctx: ScalarContext = RATIONAL) -> 'CScalar':
        return cls(ctx.zero(), ctx.zero())

    @classmethod
    def one(cls, ctx: ScalarContext = RATIONAL) -> 'CScalar':
        return cls(ctx.one(), ctx.zero())

    @classmethod
    def i(cls, ctx: ScalarContext = RATIONAL) -> 'CScalar':
        return cls(ctx.zero(), ctx.one())

    def __add__(self, other):
        if isinstance(other, CScalar):
            return CScalar(self.re + other.re, self.im + other.im)
        return CScalar(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, CScalar):
            return CScalar(self.re - other.re, self.im - other.im)
        return CScalar(self.re - other, self.im)

    def __rsub__(self, other):
        return CScalar(other - self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, CScalar):
            return CScalar(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)
        return CScalar(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CScalar):
            denom = other.abs2()
            if denom == 0:
                raise ZeroDivisionError('complex division by zero')
            num = self * other.conjugate()
            return CScalar(num.re / denom, num.im / denom)
        return CScalar(self.re / other, self.im / other)

    def __neg__(self):
        return CScalar(-self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> 'CScalar':
        return CScalar(self.re, -self.im)

    def abs2(self) -> Real:
        return self.re * self.re + self.im * self.im

    def l1(self) -> Real:
        return abs(self.re) + abs(self.im)

    def is_zero(self, ctx: ScalarContext = RATIONAL, scale=1) -> bool:
        if ctx.exact:
            return self.re == 0 and self.im == 0
        return ctx.is_zero(math.hypot(float(self.re), float(self.im)), scale)

    def pow(self, k: int) -> 'CScalar':
        if k < 0:
            return (CScalar(self.re * 0 + 1, self.im * 0) / self).pow(-k)
        result = CScalar(self.re * 0 + 1, self.im * 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def as_pair(self, mode: Mode):
        return [format_scalar(self.re, mode), format_scalar(self.im, mode)]
