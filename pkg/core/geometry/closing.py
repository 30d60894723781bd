"""Closing an arc into a simple closed curve inside a tube, then certifying it."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from ..constants import DENOMINATOR_LIMIT, RETRY_LIMIT, SHRINK_LIMIT, Mode
from ..exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    NoAdmissibleBallError,
    NotSimpleError,
    RetryExhaustedError,
    TubeTooThinError,
)
from ..utils.digest import content_digest
from .certificates import Certificate
from .curve_core import (
    Point,
    PolyCurve,
    is_simple,
    lerp,
    norm_sq,
    point_segment_distance_sq,
    vadd,
    vscale,
)
from .perturb import Ball, PerturbResult, perturb_rectifiable
from .sampling import make_rng, random_direction, scale_below
from .scalar import Real, format_scalar, sqrt_lower, sqrt_upper

logger = logging.getLogger(__name__)

# Membership is checked at 2**MEMBERSHIP_DEPTH + 1 points per segment
MEMBERSHIP_DEPTH = 3


@dataclass(frozen=True)
class Tube:
    """Points at distance < radius from an open core polyline."""

    core: PolyCurve
    radius: Real

    def __post_init__(self):
        if self.radius <= 0:
            raise InvalidParameterError(f'Tube radius must be positive, got {self.radius}')
        if self.core.closed:
            raise InvalidParameterError('A tube core must be an open polyline')

    def distance_sq(self, x: Point):
        return min(point_segment_distance_sq(x, p, q) for p, q in self.core.segments())

    def contains(self, x: Point) -> bool:
        return self.distance_sq(x) < self.radius * self.radius

    def margin(self, x: Point) -> Real:
        """Lower bound of the distance from ``x`` to the tube boundary (negative outside)."""
        return self.radius - sqrt_upper(self.distance_sq(x))

    def canonical(self) -> dict:
        return {'core': self.core.canonical(), 'radius': format_scalar(self.radius, self.core.mode)}

    def digest(self) -> str:
        return content_digest(self.canonical())


@dataclass(frozen=True)
class ContainResult:
    curve: PolyCurve
    certificate: Certificate
    closed_curve: PolyCurve
    ball: Ball
    perturbation: PerturbResult


def inside_tube(curve: PolyCurve, tube: Tube, depth: int = MEMBERSHIP_DEPTH) -> bool:
    """Exact membership of every breakpoint and of 2**depth subdivision points per segment."""
    steps = 2 ** depth
    for p, q in curve.segments():
        for k in range(steps + 1):
            if not tube.contains(lerp(p, q, Fraction(k, steps) if curve.mode == Mode.RATIONAL else k / steps)):
                return False
    return True


def contains_subpolyline(curve: PolyCurve, arc: PolyCurve) -> bool:
    """Every segment of ``arc`` is a segment of ``curve`` (in either direction)."""
    segments = set(curve.segments())
    return all((p, q) in segments or (q, p) in segments for p, q in arc.segments())


def _closing_params(arc: PolyCurve, extra: int, ctx) -> List[Real]:
    t0, t1 = arc.params[0], arc.params[-1]
    half = ctx.coerce(Fraction(1, 2))
    own = [(t - t0) / (t1 - t0) * half for t in arc.params]
    tail = [half + half * (j + 1) / (extra + 1) for j in range(extra)]
    return own + tail


def close_arc(arc: PolyCurve, tube: Tube, seed: int = 0, retry_limit: int = RETRY_LIMIT,
              denominator_limit: int = DENOMINATOR_LIMIT) -> PolyCurve:
    """Simple closed polyline in ``tube`` that contains ``arc`` as a sub-polyline.

    The closing path runs from an extension at the end of the arc along a
    translated copy of the arc back to an extension at its start.
    """
    if arc.closed:
        raise InvalidParameterError('close_arc needs an open arc')
    if arc.real_space or arc.rdim < 4:
        raise DimensionMismatchError('Closing needs an arc in C^n with n >= 2')
    if tube.core.rdim != arc.rdim:
        raise DimensionMismatchError('Tube and arc live in different dimensions')
    witness = is_simple(arc)
    if not witness:
        raise NotSimpleError('close_arc needs a simple arc', witness=witness)
    if not inside_tube(arc, tube):
        raise InvalidParameterError('The arc is not inside the tube')
    ctx = arc.ctx
    rng = make_rng(seed)
    radius = tube.radius
    start, end = arc.points[0], arc.points[-1]
    params = _closing_params(arc, arc.m + 2, ctx)
    for trial in range(retry_limit):
        scale = radius / (2 ** (trial // 8))
        start_ext = random_direction(rng, arc.rdim, ctx, denominator_limit)
        end_ext = random_direction(rng, arc.rdim, ctx, denominator_limit)
        offset = random_direction(rng, arc.rdim, ctx, denominator_limit)
        start_ext = vscale(start_ext, scale_below(start_ext, (scale / 4) ** 2, ctx, denominator_limit))
        end_ext = vscale(end_ext, scale_below(end_ext, (scale / 4) ** 2, ctx, denominator_limit))
        offset = vscale(offset, scale_below(offset, (scale / 2) ** 2, ctx, denominator_limit))
        if any(norm_sq(v) == 0 for v in (start_ext, end_ext, offset)):
            raise TubeTooThinError('Tube radius is below the construction resolution', radius=str(radius))
        p1, q1 = vadd(start, start_ext), vadd(end, end_ext)
        copy = [vadd(x, offset) for x in reversed(arc.points)]
        points = list(arc.points) + [q1] + copy + [p1]
        if len(set(points)) != len(points):
            logger.debug('Trial %d: construction repeats a vertex', trial)
            continue
        closed = PolyCurve(tuple(points), tuple(params), True, arc.mode, tol=arc.tol)
        if not is_simple(closed):
            logger.debug('Trial %d: closed curve is not simple', trial)
            continue
        if not inside_tube(closed, tube):
            logger.debug('Trial %d: construction leaves the tube', trial)
            continue
        logger.info('Arc closed at trial %d with %d vertices', trial, closed.m)
        return closed
    raise RetryExhaustedError(f'Arc could not be closed inside the tube after {retry_limit} trials')


def _admissible_ball(closed: PolyCurve, arc: PolyCurve, tube: Tube, ctx) -> Optional[Ball]:
    """A ball around a vertex of the added path that misses the arc and stays in the tube."""
    added = closed.points[arc.m:]
    order = [len(added) // 2] + [j for j in range(len(added)) if j != len(added) // 2]
    for j in order:
        center = added[j]
        clearance = sqrt_lower(min(point_segment_distance_sq(center, p, q) for p, q in arc.segments()))
        margin = tube.margin(center)
        radius = min(clearance, margin) / 2
        if radius > 0:
            return Ball(center, radius, ctx.mode)
    return None


def contain_in_pc_curve(arc: PolyCurve, tube: Tube, eps, seed: int = 0, retry_limit: int = RETRY_LIMIT,
                        shrink_limit: int = SHRINK_LIMIT,
                        denominator_limit: int = DENOMINATOR_LIMIT) -> ContainResult:
    """Certified polynomially convex simple closed curve in ``tube`` containing ``arc``."""
    ctx = arc.ctx
    closed = close_arc(arc, tube, seed, retry_limit, denominator_limit)
    ball = _admissible_ball(closed, arc, tube, ctx)
    if ball is None or ball.radius <= 0:
        raise NoAdmissibleBallError('No ball inside the tube avoids the arc')
    result = perturb_rectifiable(closed, eps, ball, seed, retry_limit, shrink_limit, denominator_limit)
    curve = result.curve
    if not contains_subpolyline(curve, arc):
        raise RetryExhaustedError('Perturbation touched the arc')
    if not inside_tube(curve, tube):
        raise RetryExhaustedError('Perturbed curve leaves the tube')
    logger.info('Arc contained in a certified curve (%s side)', result.side.value)
    return ContainResult(curve, result.certificate, closed, ball, result)
