import math
from fractions import Fraction
from typing import Any

from rest_framework import serializers

from ..constants import Mode
from ..geometry.polynomials import ContourValue
from ..geometry.scalar import CScalar, format_scalar

MODE_CHOICES = [mode.value for mode in Mode]


class ScalarField(serializers.Field):
    """A real number given as a JSON number or a ``"p/q"`` string; kept raw until the mode is known."""

    default_error_messages = {
        'invalid': 'Expected a number or a "p/q" string, got {value!r}.',
        'not_finite': 'Scalar {value!r} is not finite.',
    }

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid', value=data)
        if isinstance(data, (int, float)):
            if not math.isfinite(data):
                self.fail('not_finite', value=data)
            return data
        if isinstance(data, str):
            try:
                Fraction(data.strip())
            except (ValueError, ZeroDivisionError):
                self.fail('invalid', value=data)
            return data.strip()
        self.fail('invalid', value=data)

    def to_representation(self, value):
        return value


class PointField(serializers.ListField):
    child = ScalarField()

    def __init__(self, **kwargs):
        kwargs.setdefault('min_length', 1)
        super().__init__(**kwargs)


class ComplexField(serializers.ListField):
    """A complex coefficient as ``[re, im]``."""

    child = ScalarField()

    def __init__(self, **kwargs):
        kwargs.setdefault('min_length', 2)
        kwargs.setdefault('max_length', 2)
        super().__init__(**kwargs)


def resolve_mode(attrs, context) -> Mode:
    return Mode(attrs.get('mode') or context.get('mode') or Mode.RATIONAL)


def encode_value(value: Any, mode: Mode):
    """JSON form of result payloads: exact scalars become ``"p/q"`` in rational mode."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return format_scalar(value, mode)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, CScalar):
        return value.as_pair(mode)
    if isinstance(value, ContourValue):
        return {'value': value.value.as_pair(mode), 'two_pi_i': value.two_pi_i.as_pair(mode)}
    if isinstance(value, dict):
        return {str(key): encode_value(item, mode) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(item, mode) for item in value]
    if hasattr(value, 'item'):
        return value.item()
    return str(value)
