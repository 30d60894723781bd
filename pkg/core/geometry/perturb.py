"""Constructive perturbations that make a closed curve certifiably polynomially convex.

``perturb_rectifiable`` swaps a short arc inside a small ball for a chord or a
two-segment detour; ``perturb_smooth`` pushes the curve along a bump in a
totally real direction. Either way the two candidates differ by a loop whose
frame-form integral is nonzero, so one of them carries a certificate.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from ..constants import DENOMINATOR_LIMIT, RETRY_LIMIT, SHRINK_LIMIT, Mode, Side
from ..exceptions import (
    DimensionMismatchError,
    EmptyIntersectionError,
    InvalidParameterError,
    NotSimpleError,
    RetryExhaustedError,
    ShrinkExhaustedError,
)
from ..utils.digest import content_digest
from .certificates import (
    Certificate,
    certify,
    complex_independent,
    contour_integral,
    integral_scale,
    is_zero_integral,
    totally_real_frame,
)
from .curve_core import (
    Point,
    PolyCurve,
    bv_distance,
    bv_distance_upper,
    complex_coords,
    dot,
    from_complex_coords,
    is_simple,
    lerp,
    norm_sq,
    point_at,
    refine,
    sup_distance,
    vadd,
    vscale,
    vsub,
)
from .sampling import hermitian_normal, make_rng, random_direction, scale_below
from .scalar import CScalar, Real, ScalarContext, format_scalar, sqrt_upper

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ball:
    center: Point
    radius: Real
    mode: Mode = Mode.RATIONAL

    def __post_init__(self):
        if self.radius <= 0:
            raise InvalidParameterError(f'Ball radius must be positive, got {self.radius}')

    def contains(self, x: Point) -> bool:
        """Strict membership, decided on squares."""
        return norm_sq(vsub(x, self.center)) < self.radius * self.radius

    def canonical(self) -> dict:
        return {
            'center': [format_scalar(c, self.mode) for c in self.center],
            'radius': format_scalar(self.radius, self.mode),
            'mode': self.mode.value,
        }

    def digest(self) -> str:
        return content_digest(self.canonical())


@dataclass(frozen=True)
class PerturbResult:
    curve: PolyCurve
    side: Side
    certificate: Certificate
    bv_distance: float
    sigma_integral: CScalar
    plus_integral: CScalar
    minus_integral: CScalar
    bv_bound: Real
    input_digest: str
    details: Dict[str, object] = field(default_factory=dict)


def _check_inputs(gamma: PolyCurve, eps, ball: Ball):
    if gamma.real_space or gamma.dim < 2:
        raise DimensionMismatchError('Perturbation needs a curve in C^n with n >= 2')
    if not gamma.closed:
        raise InvalidParameterError('Perturbation needs a closed curve')
    if len(ball.center) != gamma.rdim:
        raise DimensionMismatchError('Ball center and curve live in different dimensions')
    if eps <= 0:
        raise InvalidParameterError(f'eps must be positive, got {eps}')


def anchor_point(gamma: PolyCurve, ball: Ball) -> Tuple[PolyCurve, int]:
    """First vertex inside ``ball``; refine at the closest curve point if no vertex is inside."""
    for index, point in enumerate(gamma.points):
        if ball.contains(point):
            return gamma, index
    best = None
    for index, (p, q) in enumerate(gamma.segments()):
        d = vsub(q, p)
        s = dot(vsub(ball.center, p), d) / norm_sq(d)
        s = min(max(s, 0), 1)
        dist = norm_sq(vsub(ball.center, lerp(p, q, s)))
        if best is None or dist < best[0]:
            best = (dist, index, s)
    dist, index, s = best
    if not dist < ball.radius * ball.radius:
        raise EmptyIntersectionError('The ball does not meet the curve')
    t = gamma.segment_param(index, s)
    if t not in gamma.params:
        gamma = refine(gamma, [t])
    return gamma, gamma.params.index(t)


def _cyclic_offset(t, start):
    return (t - start) % 1


def _split_arc(curve: PolyCurve, t_a, t_b):
    """Vertices strictly inside the cyclic interval (t_a, t_b) and the rest."""
    span = _cyclic_offset(t_b, t_a)
    inner, outer = [], []
    for t, point in zip(curve.params, curve.points):
        offset = _cyclic_offset(t, t_a)
        (inner if 0 < offset < span else outer).append((t, point))
    return inner, outer


def _curve_from(pairs, template: PolyCurve) -> PolyCurve:
    pairs = sorted(pairs)
    return template.with_points([p for _, p in pairs], [t for t, _ in pairs], degenerate=False)


def _arc_length_upper(points: List[Point]) -> Real:
    return sum((sqrt_upper(norm_sq(vsub(q, p))) for p, q in zip(points, points[1:])), points[0][0] * 0)


def agrees_outside(original: PolyCurve, result: PolyCurve, ball: Ball) -> bool:
    """Segment sets of both curves coincide outside ``ball`` (after common refinement)."""
    extra = [t for t in result.params if t not in set(original.params)]
    base = refine(original, extra) if extra else original
    before, after = set(base.segments()), set(result.segments())
    changed = (before - after) | (after - before)
    return all(ball.contains(p) and ball.contains(q) for p, q in changed)


def perturb_rectifiable(gamma: PolyCurve, eps, ball: Ball, seed: int = 0,
                        retry_limit: int = RETRY_LIMIT, shrink_limit: int = SHRINK_LIMIT,
                        denominator_limit: int = DENOMINATOR_LIMIT) -> PerturbResult:
    """Replace a short arc near a point of ``ball`` by a chord or a detour through c.

    The plus candidate closes the complementary arc with [a, b]; the minus
    candidate with [a, c] and [c, b]. Their frame-form integrals differ by
    exactly i, so at least one is nonzero.
    """
    ctx = gamma.ctx
    eps = ctx.coerce(eps)
    _check_inputs(gamma, eps, ball)
    _require_simple(gamma)

    working, anchor = anchor_point(gamma, ball)
    p = working.points[anchor]
    t_p = working.params[anchor]
    margin_sq = norm_sq(vsub(p, ball.center))
    eighth = eps / 8
    rng = make_rng(seed)

    delta = ctx.coerce(Fraction(1, 4))
    for step in range(shrink_limit):
        t_a, t_b = (t_p - delta) % 1, (t_p + delta) % 1
        extra = [t for t in (t_a, t_b) if t not in working.params]
        curve = refine(working, extra) if extra else working
        a, b = point_at(curve, t_a), point_at(curve, t_b)
        inner, outer = _split_arc(curve, t_a, t_b)
        arc = [a] + [pt for _, pt in sorted(inner, key=lambda item: _cyclic_offset(item[0], t_a))] + [b]
        rho_sq = max(norm_sq(vsub(x, p)) for x in arc)
        length_upper = _arc_length_upper(arc)
        rho_upper = sqrt_upper(rho_sq)
        fits = (
            a != b
            and length_upper < eighth
            and rho_sq < eighth * eighth
            and length_upper + 6 * rho_upper < 7 * eighth
            and sqrt_upper(margin_sq) + rho_upper < ball.radius
            and all(ball.contains(x) for x in arc)
        )
        if not fits:
            logger.debug('Shrink step %d: arc half-width %s too large', step, delta)
            delta = delta / 2
            continue
        plus = _curve_from(outer, curve)
        if not is_simple(plus):
            logger.debug('Shrink step %d: chord [a, b] crosses the curve', step)
            delta = delta / 2
            continue
        result = _choose_detour(gamma, curve, plus, outer, a, b, p, t_p, rho_sq, length_upper,
                                rho_upper, eps, ball, ctx, rng, retry_limit, denominator_limit)
        if result is not None:
            return result
        raise RetryExhaustedError(f'No admissible detour point c after {retry_limit} trials',
                                  delta=str(delta))
    raise ShrinkExhaustedError(f'Arc could not be isolated after {shrink_limit} halvings',
                               delta=str(delta))


def _choose_detour(gamma, curve, plus, outer, a, b, p, t_p, rho_sq, length_upper, rho_upper,
                   eps, ball, ctx, rng, retry_limit, denominator_limit) -> Optional[PerturbResult]:
    u = complex_coords(vsub(b, a))
    for trial in range(retry_limit):
        if trial == 0:
            direction = from_complex_coords(hermitian_normal(u, ctx))
        else:
            direction = random_direction(rng, curve.rdim, ctx, denominator_limit)
        kappa = scale_below(direction, rho_sq / 4, ctx, denominator_limit)
        c = vadd(p, vscale(direction, kappa))
        w = complex_coords(vsub(c, a))
        if not complex_independent(u, w, ctx):
            logger.debug('Trial %d: c lies on the complex line through a and b', trial)
            continue
        minus = _curve_from(outer + [(t_p, c)], curve)
        if not is_simple(minus):
            logger.debug('Trial %d: detour through c is not simple', trial)
            continue
        _, form = totally_real_frame(complex_coords(a), u, w, ctx)
        plus_integral = contour_integral(plus, form)
        minus_integral = contour_integral(minus, form)
        sigma_integral = plus_integral - minus_integral
        if not (sigma_integral - CScalar.i(ctx)).is_zero(ctx):
            logger.warning('Frame identity failed at trial %d: %s', trial, complex(sigma_integral))
            continue
        plus_zero = is_zero_integral(plus_integral, ctx, integral_scale(plus, form))
        side, chosen = (Side.MINUS, minus) if plus_zero else (Side.PLUS, plus)
        certificate = certify(chosen, form)
        distance_upper = bv_distance_upper(gamma, chosen)
        bound = length_upper + 6 * rho_upper
        if not (distance_upper <= bound and bound < 7 * eps / 8):
            logger.warning('Norm budget failed at trial %d', trial)
            continue
        if not agrees_outside(gamma, chosen, ball):
            logger.warning('Outside-ball agreement failed at trial %d', trial)
            continue
        logger.info('Perturbation certified on the %s side (trial %d)', side.value, trial)
        return PerturbResult(
            curve=chosen,
            side=side,
            certificate=certificate,
            bv_distance=bv_distance(gamma, chosen),
            sigma_integral=sigma_integral,
            plus_integral=plus_integral,
            minus_integral=minus_integral,
            bv_bound=bound,
            input_digest=gamma.digest(),
            details={
                'a': a, 'b': b, 'c': c, 'p': p,
                'arc_length_upper': length_upper,
                'inner_radius_upper': rho_upper,
                'trial': trial,
            },
        )
    return None


def _require_simple(gamma: PolyCurve):
    witness = is_simple(gamma)
    if not witness:
        raise NotSimpleError('Perturbation needs a simple curve', witness=witness,
                             crossing=[str(t) for t in witness.crossing])


def bump(s: float) -> float:
    """exp(-1 / (1 - s^2)) on (-1, 1), zero elsewhere."""
    return math.exp(-1.0 / (1.0 - s * s)) if abs(s) < 1 else 0.0


def _support_window(curve: PolyCurve, anchor: int, ball: Ball) -> int:
    """Largest k such that vertices anchor-k..anchor+k lie in ``ball`` and do not wrap."""
    m = curve.m
    k = 0
    while 2 * (k + 1) + 1 < m and all(ball.contains(curve.points[(anchor + j) % m]) for j in (-k - 1, k + 1)):
        k += 1
    return k


def _clearance(points: List[Point], ball: Ball):
    """Lower bound of the distance from ``points`` to the boundary of ``ball``."""
    return min(ball.radius - sqrt_upper(norm_sq(vsub(x, ball.center))) for x in points)


def perturb_smooth(gamma: PolyCurve, eps, ball: Ball, seed: int = 0,
                   retry_limit: int = RETRY_LIMIT, shrink_limit: int = SHRINK_LIMIT,
                   denominator_limit: int = DENOMINATOR_LIMIT) -> PerturbResult:
    """Push a densely sampled curve along ``chi * v`` for a bump chi around p.

    ``v`` is drawn so that it and the discrete tangent at p span a totally real
    plane; the support of chi shrinks until the loop between the two pushed
    copies has a nonzero frame-form integral.
    """
    ctx = gamma.ctx
    eps = ctx.coerce(eps)
    _check_inputs(gamma, eps, ball)
    _require_simple(gamma)
    working, anchor = anchor_point(gamma, ball)
    m = working.m
    window = _support_window(working, anchor, ball)
    if window < 1:
        raise InvalidParameterError('The curve is sampled too coarsely inside the ball for a bump')
    prev, nxt = working.points[anchor - 1], working.points[(anchor + 1) % m]
    span = (working.params[(anchor + 1) % m] - working.params[anchor - 1]) % 1
    tangent = vscale(vsub(nxt, prev), 1 / span)
    p = working.points[anchor]
    t_u = complex_coords(tangent)
    clearance = _clearance([working.points[(anchor + j) % m] for j in range(-window, window + 1)], ball)
    rng = make_rng(seed)

    for trial in range(retry_limit):
        if trial == 0:
            direction = from_complex_coords(hermitian_normal(t_u, ctx))
        else:
            direction = random_direction(rng, working.rdim, ctx, denominator_limit)
        v = complex_coords(direction)
        if not complex_independent(t_u, v, ctx):
            logger.debug('Trial %d: direction spans a complex line with the tangent', trial)
            continue
        _, form = totally_real_frame(complex_coords(p), t_u, v, ctx)
        # |A v| <= eps / 4 gives sup + variation of chi * v at most 3 |A v| < eps
        cap = min(eps / 4, clearance / 2)
        amplitude = scale_below(direction, cap * cap, ctx, denominator_limit)
        result = _shrink_support(gamma, working, anchor, window, direction, amplitude, form, eps, ball,
                                 ctx, shrink_limit, denominator_limit, trial)
        if result is not None:
            return result
    raise RetryExhaustedError(f'No admissible direction after {retry_limit} trials')


def _bump_values(curve: PolyCurve, anchor: int, window: int, amplitude, ctx: ScalarContext,
                 denominator_limit: int) -> Dict[int, Real]:
    m = curve.m
    t_p = curve.params[anchor]
    reach_left = (t_p - curve.params[(anchor - window) % m]) % 1
    reach_right = (curve.params[(anchor + window) % m] - t_p) % 1
    values = {}
    for j in range(-window + 1, window):
        index = (anchor + j) % m
        if j >= 0:
            s = float(((curve.params[index] - t_p) % 1) / reach_right)
        else:
            s = -float(((t_p - curve.params[index]) % 1) / reach_left)
        values[index] = ctx.rationalize(float(amplitude) * bump(s), denominator_limit)
    return values


def _shrink_support(gamma, working, anchor, window, direction, amplitude, form, eps, ball, ctx,
                    shrink_limit, denominator_limit, trial) -> Optional[PerturbResult]:
    m = working.m
    for step in range(shrink_limit):
        if window < 1:
            break
        chi = _bump_values(working, anchor, window, amplitude, ctx, denominator_limit)
        if all(value == 0 for value in chi.values()):
            logger.debug('Trial %d: bump vanishes on the sampled support', trial)
            window //= 2
            continue

        def pushed(sign):
            points = [vadd(pt, vscale(direction, sign * chi[i])) if i in chi else pt
                      for i, pt in enumerate(working.points)]
            return working.with_points(points)

        plus, minus = pushed(1), pushed(-1)
        if not (is_simple(plus) and is_simple(minus)):
            logger.debug('Trial %d: pushed copies are not simple', trial)
            return None
        indices = [(anchor + j) % m for j in range(-window, window + 1)]
        loop_points = [plus.points[i] for i in indices] + [minus.points[i] for i in reversed(indices[1:-1])]
        loop = PolyCurve.build(loop_points, closed=True, mode=ctx.mode, tol=ctx.tol)
        sigma_integral = contour_integral(loop, form)
        if is_zero_integral(sigma_integral, ctx, integral_scale(loop, form)):
            logger.debug('Shrink step %d: loop integral vanishes on window %d', step, window)
            window //= 2
            continue
        plus_integral = contour_integral(plus, form)
        minus_integral = contour_integral(minus, form)
        identity_scale = integral_scale(plus, form) + integral_scale(minus, form)
        if not is_zero_integral(plus_integral - minus_integral - sigma_integral, ctx, identity_scale):
            logger.warning('Loop identity failed on window %d', window)
            window //= 2
            continue
        plus_zero = is_zero_integral(plus_integral, ctx, integral_scale(plus, form))
        side, chosen = (Side.MINUS, minus) if plus_zero else (Side.PLUS, plus)
        certificate = certify(chosen, form)
        distance_upper = bv_distance_upper(gamma, chosen)
        if not distance_upper < eps or not agrees_outside(gamma, chosen, ball):
            logger.warning('Budget or outside-ball check failed on window %d', window)
            window //= 2
            continue
        logger.info('Smooth perturbation certified on the %s side (window %d)', side.value, window)
        return PerturbResult(
            curve=chosen,
            side=side,
            certificate=certificate,
            bv_distance=bv_distance(gamma, chosen),
            sigma_integral=sigma_integral,
            plus_integral=plus_integral,
            minus_integral=minus_integral,
            bv_bound=distance_upper,
            input_digest=gamma.digest(),
            details={
                'p': working.points[anchor],
                'direction': direction,
                'amplitude': amplitude,
                'support': (working.params[indices[0]], working.params[indices[-1]]),
                'sup_distance': sup_distance(gamma, chosen),
                'slope_distance': slope_distance(working, chosen),
                'max_bump': max(chi.values()),
                'trial': trial,
            },
        )
    raise ShrinkExhaustedError(f'Bump support could not be shrunk to a certifying loop (trial {trial})')


def slope_distance(gamma: PolyCurve, sigma: PolyCurve) -> float:
    """Largest divided difference of ``sigma - gamma`` over the cells of a shared parametrization."""
    m = gamma.m
    worst = 0.0
    for i in range(m):
        j = (i + 1) % m
        change = vsub(vsub(sigma.points[j], gamma.points[j]), vsub(sigma.points[i], gamma.points[i]))
        width = float((gamma.params[j] - gamma.params[i]) % 1)
        worst = max(worst, math.sqrt(float(norm_sq(change))) / width)
    return worst
