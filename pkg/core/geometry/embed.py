"""Injective approximations of bounded-variation maps.

The graphing map makes any map injective in one extra dimension; a
projection along a direction close to e_1 then brings the dimension back down
without losing injectivity and with a controlled change in the bv norm.
"""
import bisect
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import svdvals

from ..constants import DENOMINATOR_LIMIT, RETRY_LIMIT, Domain, Mode
from ..exceptions import InvalidParameterError, NotSimpleError, RetryExhaustedError
from ..utils.digest import content_digest
from .curve_core import (
    Point,
    PolyCurve,
    SimplicityWitness,
    bv_distance,
    bv_distance_upper,
    bv_norm_upper,
    is_injective,
    norm_sq,
    unit_circle_point,
)
from .sampling import make_rng, random_direction
from .scalar import Real, ScalarContext, format_scalar, sqrt_upper

logger = logging.getLogger(__name__)

# Denominator bound for rational points placed on the unit circle by the circle lift
LIFT_DENOMINATOR_LIMIT = 2 ** 32


@dataclass(frozen=True)
class BVMap:
    """A piecewise-linear map from [0, 1] or the circle into R^k; constant pieces allowed."""

    domain: Domain
    curve: PolyCurve

    def __post_init__(self):
        if (self.domain == Domain.CIRCLE) != self.curve.closed:
            raise InvalidParameterError('Circle maps must be closed and interval maps open')

    @classmethod
    def build(cls, points, params=None, domain=Domain.INTERVAL, mode=Mode.RATIONAL, tol=None) -> 'BVMap':
        domain = Domain(domain)
        extra = {} if tol is None else {'tol': tol}
        curve = PolyCurve.build(points, params, closed=domain == Domain.CIRCLE, mode=mode,
                                degenerate=True, real_space=True, **extra)
        return cls(domain, curve)

    @classmethod
    def of(cls, curve: PolyCurve) -> 'BVMap':
        """View a curve as a real map (its complex coordinates split into real pairs)."""
        real = curve.with_points(curve.points, degenerate=True, real_space=True)
        return cls(Domain.CIRCLE if curve.closed else Domain.INTERVAL, real)

    @property
    def k(self) -> int:
        return self.curve.rdim

    @property
    def ctx(self) -> ScalarContext:
        return self.curve.ctx

    def with_points(self, points) -> 'BVMap':
        return BVMap(self.domain, self.curve.with_points(points))

    def canonical(self) -> dict:
        data = self.curve.canonical()
        data['domain'] = self.domain.value
        return data

    def digest(self) -> str:
        return content_digest(self.canonical())


@dataclass(frozen=True)
class ProjectionOp:
    """T = [-v'/v_1 | I]: projection along v onto {0} x R^{k-1}, in coordinates."""

    direction: Point
    matrix: Tuple[Tuple[Real, ...], ...]
    deviation_sq: Real
    deviation: float
    trial: int = 0

    def apply(self, x: Point) -> Point:
        v = self.direction
        ratio = x[0] / v[0]
        return tuple(xi - ratio * vi for xi, vi in zip(x[1:], v[1:]))

    def canonical(self, mode: Mode) -> dict:
        return {
            'direction': [format_scalar(c, mode) for c in self.direction],
            'matrix': [[format_scalar(c, mode) for c in row] for row in self.matrix],
            'deviation_sq': format_scalar(self.deviation_sq, mode),
            'deviation': self.deviation,
            'trial': self.trial,
        }


@dataclass(frozen=True)
class CoverReport:
    m: int
    length: float
    diameters: List[float]
    deltas: np.ndarray = field(repr=False)
    max_delta: float = 0.0
    sum_sq: float = 0.0
    box_bound: float = 0.0
    total_bound: float = 0.0
    measure_bound: float = 0.0
    holds: bool = True
    degenerate: bool = False


@dataclass(frozen=True)
class InjectiveResult:
    bvmap: BVMap
    projections: Tuple[ProjectionOp, ...]
    bv_distance: float
    bv_distance_upper: Real
    budget: Real
    unchanged: bool = False


def graph_lift(gamma: BVMap, denominator_limit: int = LIFT_DENOMINATOR_LIMIT) -> BVMap:
    """x -> (x, gamma(x)) on an interval; theta -> (cos 2 pi theta, sin 2 pi theta, gamma(theta)) on the circle."""
    curve = gamma.curve
    ctx = gamma.ctx
    if gamma.domain == Domain.INTERVAL:
        points = [(t,) + p for t, p in zip(curve.params, curve.points)]
    else:
        points = [unit_circle_point(2 * math.pi * float(t), ctx, denominator_limit) + p
                  for t, p in zip(curve.params, curve.points)]
    return gamma.with_points(points)


def _point_at_length(points, cumulative, steps, s):
    i = min(max(bisect.bisect_right(cumulative, s) - 1, 0), len(steps) - 1)
    while steps[i] == 0 and i > 0:
        i -= 1
    if steps[i] == 0:
        return points[i]
    ratio = (s - cumulative[i]) / steps[i]
    return tuple(a + ratio * (b - a) for a, b in zip(points[i], points[i + 1]))


def _arc_pieces(points: List[Point], m: int) -> Tuple[Fraction, List[List[Point]]]:
    """Cut a polyline into m pieces of equal length, measured with rounded-up step lengths.

    The true length of every piece is then at most the returned length over m.
    """
    steps = [sqrt_upper(norm_sq(tuple(b - a for a, b in zip(p, q)))) for p, q in zip(points, points[1:])]
    cumulative = [Fraction(0)]
    for step in steps:
        cumulative.append(cumulative[-1] + step)
    length = cumulative[-1]
    pieces = []
    for j in range(m):
        s0, s1 = length * j / m, length * (j + 1) / m
        inside = [p for p, c in zip(points, cumulative) if s0 < c < s1]
        pieces.append([_point_at_length(points, cumulative, steps, s0), *inside,
                       _point_at_length(points, cumulative, steps, s1)])
    return length, pieces


def _diameter_sq(piece: List[Point]) -> Fraction:
    return max((norm_sq(tuple(a - b for a, b in zip(p, q))) for p, q in itertools.combinations(piece, 2)),
               default=Fraction(0))


def secant_cover_bound(gamma: BVMap, m: int) -> CoverReport:
    """Split the image into m pieces of equal length and bound the product-box diameters.

    Each piece has diameter at most l/m, so every box gamma_j x gamma_k has
    diameter at most sqrt(2) l/m and the squared diameters sum to at most 2 l^2.
    Both comparisons are made on exact rationals, with l rounded up.
    """
    if m < 1:
        raise InvalidParameterError(f'Partition size must be positive, got {m}')
    points = [tuple(Fraction(c) for c in p) for p in gamma.curve.points]
    if gamma.curve.closed:
        points.append(points[0])
    length, pieces = _arc_pieces(points, m)
    if length == 0:
        zeros = np.zeros((m, m))
        logger.warning('Zero-length map: all %d pieces collapse to a point', m)
        return CoverReport(m, 0.0, [0.0] * m, zeros, holds=True, degenerate=True)
    diameters_sq = [_diameter_sq(piece) for piece in pieces]
    box_sq = 2 * (length / m) ** 2
    total_bound = 2 * length ** 2
    sum_sq = 2 * m * sum(diameters_sq)
    holds = max(diameters_sq) * 2 <= box_sq and sum_sq <= total_bound
    d_sq = np.array([float(d) for d in diameters_sq])
    deltas = np.sqrt(d_sq[:, None] + d_sq[None, :])
    logger.debug('Cover of %d pieces: sum %s against %s', m, float(sum_sq), float(total_bound))
    return CoverReport(
        m=m,
        length=float(length),
        diameters=[math.sqrt(d) for d in d_sq],
        deltas=deltas,
        max_delta=math.sqrt(float(max(diameters_sq) * 2)),
        sum_sq=float(sum_sq),
        box_bound=math.sqrt(float(box_sq)),
        total_bound=float(total_bound),
        measure_bound=math.pi / 4 * float(sum_sq),
        holds=holds,
    )


def projection_for(direction: Point, ctx: ScalarContext, trial: int = 0) -> ProjectionOp:
    v1, tail = direction[0], direction[1:]
    k = len(direction)
    rows = []
    for i in range(k - 1):
        row = [-tail[i] / v1] + [ctx.one() if j == i else ctx.zero() for j in range(k - 1)]
        rows.append(tuple(row))
    deviation_sq = norm_sq(tail) / (v1 * v1)
    difference = np.array([[float(rows[i][0])] + [0.0] * (k - 1) for i in range(k - 1)])
    deviation = float(svdvals(difference)[0]) if k > 1 else 0.0
    return ProjectionOp(tuple(direction), tuple(rows), deviation_sq, deviation, trial)


def generic_project(sigma: BVMap, eps, seed: int = 0, retry_limit: int = RETRY_LIMIT,
                    denominator_limit: int = DENOMINATOR_LIMIT) -> Tuple[ProjectionOp, BVMap]:
    """Project an injective map in R^k (k >= 4) to an injective map in R^{k-1}.

    Directions v = e_1 + delta * u are tried with seeded random u; delta
    halves on every rejection and the first trial uses v = e_1 itself.
    """
    ctx = sigma.ctx
    eps = ctx.coerce(eps)
    if sigma.k < 4:
        raise InvalidParameterError(f'Generic projection needs k >= 4, got {sigma.k}')
    if eps <= 0:
        raise InvalidParameterError(f'eps must be positive, got {eps}')
    witness = is_injective(sigma.curve)
    if not witness:
        raise NotSimpleError('Generic projection needs an injective map', witness=witness)
    rng = make_rng(seed)
    e1 = (ctx.one(),) + tuple(ctx.zero() for _ in range(sigma.k - 1))
    delta = eps / 2
    last: Optional[SimplicityWitness] = None
    for trial in range(retry_limit):
        if trial == 0:
            direction = e1
        else:
            u = random_direction(rng, sigma.k, ctx, denominator_limit)
            direction = tuple(e + delta * c for e, c in zip(e1, u))
        if direction[0] == 0:
            delta = delta / 2
            continue
        op = projection_for(direction, ctx, trial)
        if not op.deviation_sq < eps * eps:
            logger.debug('Trial %d: deviation too large, halving delta', trial)
            delta = delta / 2
            continue
        image = sigma.with_points([op.apply(p) for p in sigma.curve.points])
        last = is_injective(image.curve)
        if last:
            logger.info('Projection accepted at trial %d (deviation %.3g)', trial, op.deviation)
            return op, image
        logger.debug('Trial %d: projected map not injective at %s', trial, last.crossing)
        delta = delta / 2
    raise RetryExhaustedError(
        f'No injective projection after {retry_limit} trials',
        crossing=[str(t) for t in last.crossing] if last is not None and last.crossing else None)


def make_injective(gamma: BVMap, eps, seed: int = 0, retry_limit: int = RETRY_LIMIT,
                   denominator_limit: int = DENOMINATOR_LIMIT) -> InjectiveResult:
    """Injective map within ``eps`` of ``gamma`` in the bv norm."""
    ctx = gamma.ctx
    eps = ctx.coerce(eps)
    if eps <= 0:
        raise InvalidParameterError(f'eps must be positive, got {eps}')
    if is_injective(gamma.curve):
        logger.info('Map is already injective; returned unchanged')
        return InjectiveResult(gamma, (), 0.0, ctx.zero(), eps, unchanged=True)
    if gamma.k < 3:
        raise InvalidParameterError(f'Injectivity repair needs k >= 3, got {gamma.k}')

    sigma = graph_lift(gamma)
    projections = []
    if gamma.domain == Domain.INTERVAL:
        budget = eps / bv_norm_upper(sigma.curve)
        op, image = generic_project(sigma, budget, seed, retry_limit, denominator_limit)
        projections.append(op)
    else:
        first_budget = eps / (2 * bv_norm_upper(sigma.curve))
        op, middle = generic_project(sigma, first_budget, seed, retry_limit, denominator_limit)
        second_budget = eps / (2 * bv_norm_upper(middle.curve))
        second, image = generic_project(middle, second_budget, seed + 1, retry_limit, denominator_limit)
        projections.extend((op, second))
        budget = min(first_budget, second_budget)
    distance_upper = bv_distance_upper(image.curve, gamma.curve)
    if not distance_upper < eps:
        raise RetryExhaustedError('Projected map misses the bv budget', bound=str(distance_upper))
    return InjectiveResult(image, tuple(projections), bv_distance(image.curve, gamma.curve), distance_upper, budget)
