"""Piecewise-linear curves in C^n (or R^k) with norms and exact simplicity tests.

A :class:`PolyCurve` is affine on each parameter cell. Closed curves wrap from
the last point back to the first one over the cell ``[t_last, t_0 + 1]``.
"""
import bisect
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from ..constants import DEFAULT_TOLERANCE, DENOMINATOR_LIMIT, Mode
from ..exceptions import (
    DegenerateSegmentError,
    DimensionMismatchError,
    DuplicateParameterError,
    InvalidParameterError,
    OutOfDomainError,
)
from ..utils.digest import content_digest
from .scalar import (
    CScalar,
    Real,
    ScalarContext,
    format_scalar,
    sqrt_upper,
)

logger = logging.getLogger(__name__)

Point = Tuple[Real, ...]
PointCn = Point


# Vector helpers. Points are plain tuples so exact arithmetic stays cheap.

def vsub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def vadd(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def vscale(p: Point, s) -> Point:
    return tuple(a * s for a in p)


def dot(p: Point, q: Point):
    return sum((a * b for a, b in zip(p, q)), p[0] * 0)


def norm_sq(p: Point):
    return dot(p, p)


def lerp(p: Point, q: Point, s) -> Point:
    return tuple(a + s * (b - a) for a, b in zip(p, q))


def complex_coords(point: Point) -> List[CScalar]:
    """Read a point of R^{2n} as n complex coordinates (z_1, ..., z_n)."""
    return [CScalar(point[2 * j], point[2 * j + 1]) for j in range(len(point) // 2)]


def from_complex_coords(coords: Sequence[CScalar]) -> Point:
    flat = []
    for c in coords:
        flat.extend((c.re, c.im))
    return tuple(flat)


def point_segment_distance_sq(x: Point, p: Point, q: Point):
    """Squared distance from ``x`` to the segment ``[p, q]``, exact in rational mode."""
    d = vsub(q, p)
    dd = norm_sq(d)
    if dd == 0:
        return norm_sq(vsub(x, p))
    s = dot(vsub(x, p), d) / dd
    if s <= 0:
        return norm_sq(vsub(x, p))
    if s >= 1:
        return norm_sq(vsub(x, q))
    return norm_sq(vsub(x, lerp(p, q, s)))


@dataclass(frozen=True)
class PolyCurve:
    """A piecewise-linear map from [0, 1) (closed) or [0, 1] (open) into C^n.

    ``real_space`` marks BV-map samples whose coordinates live in R^k with k
    possibly odd; complex operations require it to be False.
    """

    points: Tuple[Point, ...]
    params: Tuple[Real, ...]
    closed: bool
    mode: Mode = Mode.RATIONAL
    degenerate: bool = False
    real_space: bool = False
    tol: float = field(default=DEFAULT_TOLERANCE, compare=False)

    def __post_init__(self):
        m = len(self.points)
        if self.closed and m < 3:
            raise InvalidParameterError(f'A closed curve needs at least 3 points, got {m}')
        if not self.closed and m < 2:
            raise InvalidParameterError(f'An open curve needs at least 2 points, got {m}')
        if len(self.params) != m:
            raise InvalidParameterError(f'{len(self.params)} params for {m} points')
        rdim = len(self.points[0])
        if rdim == 0 or any(len(p) != rdim for p in self.points):
            raise DimensionMismatchError('All points must share one positive dimension')
        if not self.real_space and rdim % 2:
            raise DimensionMismatchError(f'A point of C^n needs an even number of real coordinates, got {rdim}')
        if any(b <= a for a, b in zip(self.params, self.params[1:])):
            raise InvalidParameterError('Parameters must be strictly increasing')
        upper_ok = self.params[-1] < 1 if self.closed else self.params[-1] <= 1
        if self.params[0] < 0 or not upper_ok:
            raise OutOfDomainError('Parameters must lie in [0, 1) for closed and [0, 1] for open curves')
        if self.mode != Mode.RATIONAL:
            if any(not math.isfinite(c) for p in self.points for c in p):
                raise InvalidParameterError('Coordinates must be finite')
        if not self.degenerate:
            pairs = zip(self.points, self.points[1:] + ((self.points[0],) if self.closed else ()))
            for index, (p, q) in enumerate(pairs):
                if p == q:
                    raise DegenerateSegmentError(
                        f'Consecutive points {index} and {(index + 1) % m} coincide; '
                        'pass degenerate=True for BV maps with constant pieces')

    @classmethod
    def build(cls, points, params=None, closed=True, mode=Mode.RATIONAL, degenerate=False,
              real_space=False, tol=DEFAULT_TOLERANCE) -> 'PolyCurve':
        """Coerce raw coordinates into the requested mode and default to uniform params."""
        ctx = ScalarContext(Mode(mode), tol)
        pts = tuple(tuple(ctx.coerce(c) for c in p) for p in points)
        m = len(pts)
        if params is None:
            steps = m if closed else max(m - 1, 1)
            params = [Fraction(j, steps) for j in range(m)]
        prm = tuple(ctx.coerce(t) for t in params)
        return cls(pts, prm, closed, Mode(mode), degenerate, real_space, tol)

    @property
    def ctx(self) -> ScalarContext:
        return ScalarContext(self.mode, self.tol)

    @property
    def rdim(self) -> int:
        return len(self.points[0])

    @property
    def dim(self) -> int:
        return self.rdim // 2

    @property
    def m(self) -> int:
        return len(self.points)

    def with_points(self, points, params=None, **changes) -> 'PolyCurve':
        values = {
            'closed': self.closed, 'mode': self.mode, 'degenerate': self.degenerate,
            'real_space': self.real_space, 'tol': self.tol,
        }
        values.update(changes)
        return PolyCurve(tuple(points), tuple(self.params if params is None else params), **values)

    def segments(self) -> List[Tuple[Point, Point]]:
        pts = self.points
        segs = list(zip(pts, pts[1:]))
        if self.closed:
            segs.append((pts[-1], pts[0]))
        return segs

    def segment_range(self, index: int) -> Tuple[Real, Real]:
        start = self.params[index]
        if index + 1 < self.m:
            return start, self.params[index + 1]
        return start, self.params[0] + 1

    def segment_param(self, index: int, s) -> Real:
        start, end = self.segment_range(index)
        t = start + s * (end - start)
        if self.closed and t >= 1:
            t -= 1
        return t

    def canonical(self) -> dict:
        data = {
            'closed': self.closed,
            'mode': self.mode.value,
            'params': [format_scalar(t, self.mode) for t in self.params],
            'points': [[format_scalar(c, self.mode) for c in p] for p in self.points],
        }
        if self.real_space:
            data['space'] = 'real'
            data['dim'] = self.rdim
        else:
            data['dim'] = self.dim
        return data

    def digest(self) -> str:
        return content_digest(self.canonical())


@dataclass(frozen=True)
class SimplicityWitness:
    verdict: bool
    crossing: Optional[Tuple[Real, Real]] = None
    point: Optional[Point] = None
    segments: Optional[Tuple[int, int]] = None

    def __bool__(self):
        return self.verdict


def point_at(curve: PolyCurve, t) -> Point:
    """Evaluate the piecewise-linear map at parameter ``t``."""
    params = curve.params
    if curve.closed:
        t = t % 1
        if t < params[0]:
            t += 1
    i = bisect.bisect_right(params, t) - 1
    if i < 0:
        return curve.points[0]
    if i >= curve.m - 1:
        if not curve.closed:
            return curve.points[-1]
        i = curve.m - 1
    start, end = curve.segment_range(i)
    p, q = curve.points[i], curve.points[(i + 1) % curve.m]
    s = (t - start) / (end - start)
    return lerp(p, q, s)


def _union_params(gamma: PolyCurve, sigma: PolyCurve):
    return sorted(set(gamma.params) | set(sigma.params))


def _check_compatible(gamma: PolyCurve, sigma: PolyCurve):
    if gamma.rdim != sigma.rdim:
        raise DimensionMismatchError(f'Dimensions differ: {gamma.rdim} vs {sigma.rdim} real coordinates')
    if gamma.closed != sigma.closed:
        raise DimensionMismatchError('Cannot compare a closed curve with an open one')


def difference(gamma: PolyCurve, sigma: PolyCurve) -> PolyCurve:
    """The map ``t -> gamma(t) - sigma(t)`` on the union of both breakpoint sets."""
    _check_compatible(gamma, sigma)
    params = _union_params(gamma, sigma)
    points = [vsub(point_at(gamma, t), point_at(sigma, t)) for t in params]
    return PolyCurve(tuple(points), tuple(params), gamma.closed, gamma.mode,
                     degenerate=True, real_space=True, tol=gamma.tol)


def _direction_runs(curve: PolyCurve) -> List[Point]:
    """Sum consecutive segment vectors that point the same way.

    Refinement only splits segments into positively parallel pieces, so the
    runs (and everything computed from them) do not change under refinement.
    """
    ctx = curve.ctx
    vectors = [vsub(q, p) for p, q in curve.segments()]
    vectors = [v for v in vectors if any(c != 0 for c in v)]
    if not vectors:
        return []

    def continues(prev, cur):
        uv = dot(prev, cur)
        if uv <= 0:
            return False
        return ctx.is_zero(norm_sq(prev) * norm_sq(cur) - uv * uv, norm_sq(prev) * norm_sq(cur))

    start = 0
    if curve.closed:
        for k in range(len(vectors)):
            if not continues(vectors[k - 1], vectors[k]):
                start = k
                break
        vectors = vectors[start:] + vectors[:start]
    runs = [vectors[0]]
    for v in vectors[1:]:
        if continues(runs[-1], v):
            runs[-1] = vadd(runs[-1], v)
        else:
            runs.append(v)
    return runs


def total_variation(curve: PolyCurve) -> float:
    """Sum of segment lengths, wrap segment included for closed curves."""
    if curve.mode == Mode.RATIONAL:
        return math.fsum(math.sqrt(norm_sq(run)) for run in _direction_runs(curve))
    return math.fsum(math.hypot(*vsub(q, p)) for p, q in curve.segments())


def total_variation_upper(curve: PolyCurve) -> Real:
    """Certified upper bound of the total variation (a Fraction in rational mode)."""
    runs = _direction_runs(curve)
    if curve.mode == Mode.RATIONAL:
        return sum((sqrt_upper(norm_sq(run)) for run in runs), Fraction(0))
    return total_variation(curve) * (1 + 1e-12)


def sup_norm_sq(curve: PolyCurve):
    return max(norm_sq(p) for p in curve.points)


def bv_norm(curve: PolyCurve) -> float:
    """Supremum norm plus total variation."""
    return math.sqrt(sup_norm_sq(curve)) + total_variation(curve)


def bv_norm_upper(curve: PolyCurve) -> Real:
    return sqrt_upper(sup_norm_sq(curve)) + total_variation_upper(curve)


def sup_distance_sq(gamma: PolyCurve, sigma: PolyCurve):
    """Exact squared sup distance; the difference is affine between union breakpoints."""
    _check_compatible(gamma, sigma)
    return max(norm_sq(vsub(point_at(gamma, t), point_at(sigma, t)))
               for t in _union_params(gamma, sigma))


def sup_distance(gamma: PolyCurve, sigma: PolyCurve) -> float:
    return math.sqrt(sup_distance_sq(gamma, sigma))


def bv_distance(gamma: PolyCurve, sigma: PolyCurve) -> float:
    return bv_norm(difference(gamma, sigma))


def bv_distance_upper(gamma: PolyCurve, sigma: PolyCurve) -> Real:
    return bv_norm_upper(difference(gamma, sigma))


def segment_intersection(p: Point, u: Point, q: Point, v: Point,
                         ctx: ScalarContext) -> Optional[Tuple[Real, Real]]:
    """Common point of ``p + s u`` and ``q + t v`` with s, t in [0, 1].

    Returns one such ``(s, t)`` or None. Exact in rational mode.
    """
    w = vsub(q, p)
    uu, vv, uv = norm_sq(u), norm_sq(v), dot(u, v)
    gram = uu * vv - uv * uv
    slack = 0 if ctx.exact else ctx.tol
    if not ctx.is_zero(gram, uu * vv):
        wu, wv = dot(w, u), dot(w, v)
        s = (wu * vv - uv * wv) / gram
        t = (uv * wu - uu * wv) / gram
        if not (-slack <= s <= 1 + slack and -slack <= t <= 1 + slack):
            return None
        residual = vsub(vadd(p, vscale(u, s)), vadd(q, vscale(v, t)))
        if not ctx.is_zero(norm_sq(residual), max(uu, vv) * ctx.tol if not ctx.exact else 1):
            return None
        if not ctx.exact:
            s, t = min(max(s, 0.0), 1.0), min(max(t, 0.0), 1.0)
        return s, t
    ww, wu = norm_sq(w), dot(w, u)
    if not ctx.is_zero(ww * uu - wu * wu, max(ww, 1) * uu):
        return None
    a = wu / uu
    b = a + uv / uu
    lo, hi = max(0, min(a, b)), min(1, max(a, b))
    if lo > hi + slack:
        return None
    s = min(lo, 1)
    t = dot(vsub(vadd(p, vscale(u, s)), q), v) / vv
    return s, t


def _fold_witness(curve, i, j, first, second, shared, ctx):
    """Adjacent segments ``first -> shared -> second`` overlapping beyond ``shared``."""
    a, c = first, second
    u = vsub(shared, a)
    v = vsub(c, shared)
    uv = dot(u, v)
    if uv >= 0:
        return None
    uu, vv = norm_sq(u), norm_sq(v)
    if not ctx.is_zero(uu * vv - uv * uv, uu * vv):
        return None
    if uu <= vv:
        s = dot(vsub(a, shared), v) / vv
        return SimplicityWitness(False, (curve.segment_param(i, 0), curve.segment_param(j, s)), a, (i, j))
    s = dot(vsub(c, a), u) / uu
    return SimplicityWitness(False, (curve.segment_param(i, s), curve.segment_param(j, 1)), c, (i, j))


def _candidate_pairs(segs, closed, method, ctx) -> List[Tuple[int, int]]:
    count = len(segs)
    if method == 'naive':
        return [(i, j) for i in range(count) for j in range(i + 1, count)]
    scale = max((abs(c) for p, q in segs for c in p + q), default=1)
    slack = 0 if ctx.exact else ctx.tol * max(float(scale), 1.0)
    boxes = []
    for p, q in segs:
        lo = tuple(min(a, b) - slack for a, b in zip(p, q))
        hi = tuple(max(a, b) + slack for a, b in zip(p, q))
        boxes.append((lo, hi))
    order = sorted(range(count), key=lambda k: boxes[k][0][0])
    active: List[int] = []
    pairs = []
    for k in order:
        lo_k, hi_k = boxes[k]
        active = [a for a in active if boxes[a][1][0] >= lo_k[0]]
        for a in active:
            lo_a, hi_a = boxes[a]
            if all(lo_a[d] <= hi_k[d] and lo_k[d] <= hi_a[d] for d in range(len(lo_k))):
                pairs.append((min(a, k), max(a, k)))
        active.append(k)
    pairs.sort()
    return pairs


def check_nondegenerate(curve: PolyCurve):
    ctx = curve.ctx
    for index, (p, q) in enumerate(curve.segments()):
        length_sq = norm_sq(vsub(q, p))
        scale = max(norm_sq(p), norm_sq(q), 1)
        if length_sq == 0 or (not ctx.exact and length_sq <= (ctx.tol ** 2) * scale):
            raise DegenerateSegmentError(f'Segment {index} has zero length', segment=index)


def is_simple(curve: PolyCurve, method: str = 'sweep') -> SimplicityWitness:
    """Decide injectivity of a polyline with no zero-length segments.

    ``method="naive"`` tests all pairs; ``method="sweep"`` prunes pairs whose
    bounding boxes are disjoint and reports the same first crossing.
    """
    check_nondegenerate(curve)
    ctx = curve.ctx
    segs = curve.segments()
    count = len(segs)
    for i, j in _candidate_pairs(segs, curve.closed, method, ctx):
        if j == i + 1:
            witness = _fold_witness(curve, i, j, segs[i][0], segs[j][1], segs[i][1], ctx)
        elif curve.closed and i == 0 and j == count - 1:
            witness = _fold_witness(curve, j, i, segs[j][0], segs[i][1], segs[i][0], ctx)
        else:
            p, q = segs[i]
            r, s = segs[j]
            hit = segment_intersection(p, vsub(q, p), r, vsub(s, r), ctx)
            witness = None
            if hit is not None:
                si, sj = hit
                witness = SimplicityWitness(
                    False, (curve.segment_param(i, si), curve.segment_param(j, sj)),
                    lerp(p, q, si), (i, j))
        if witness is not None:
            logger.debug('Curve is not simple: segments %s cross at %s', witness.segments, witness.crossing)
            return witness
    return SimplicityWitness(True)


def is_injective(curve: PolyCurve, method: str = 'sweep') -> SimplicityWitness:
    """Injectivity of a BV map: constant pieces and fold-backs count as failures."""
    for index, (p, q) in enumerate(curve.segments()):
        if p == q:
            start, end = curve.segment_range(index)
            return SimplicityWitness(False, (start, end % 1 if curve.closed else end), p, (index, index))
    try:
        return is_simple(curve, method)
    except DegenerateSegmentError:
        return SimplicityWitness(False)


def segments(curve: PolyCurve) -> List[Tuple[Point, Point]]:
    return curve.segments()


def refine(curve: PolyCurve, extra_params: Sequence) -> PolyCurve:
    """Insert breakpoints without changing the map."""
    ctx = curve.ctx
    extra = [ctx.coerce(t) for t in extra_params]
    if not extra:
        return curve
    existing = set(curve.params)
    seen = set()
    for t in extra:
        if t in existing or t in seen:
            raise DuplicateParameterError(f'Parameter {t} is already a breakpoint', param=str(t))
        seen.add(t)
        if curve.closed and not (0 <= t < 1):
            raise OutOfDomainError(f'Parameter {t} outside [0, 1)')
        if not curve.closed and not (curve.params[0] < t < curve.params[-1]):
            raise OutOfDomainError(f'Parameter {t} outside the curve domain')
    merged = {t: p for t, p in zip(curve.params, curve.points)}
    for t in extra:
        merged[t] = point_at(curve, t)
    params = sorted(merged)
    return curve.with_points([merged[t] for t in params], params)


def reverse(curve: PolyCurve) -> PolyCurve:
    """The same image traversed backwards, ``t -> gamma(1 - t)``."""
    if curve.closed:
        pairs = sorted(((1 - t) % 1, p) for t, p in zip(curve.params, curve.points))
    else:
        pairs = sorted((1 - t, p) for t, p in zip(curve.params, curve.points))
    return curve.with_points([p for _, p in pairs], [t for t, _ in pairs])


def map_points(curve: PolyCurve, fn: Callable[[Point], Point], real_space=None) -> PolyCurve:
    points = [fn(p) for p in curve.points]
    rs = curve.real_space if real_space is None else real_space
    return curve.with_points(points, real_space=rs)


def unit_circle_point(theta: float, ctx: ScalarContext, limit: int = DENOMINATOR_LIMIT) -> Tuple[Real, Real]:
    """A point at angle ``theta`` lying exactly on the unit circle.

    Rational mode uses the parametrization ((1 - t^2), 2t) / (1 + t^2) with a
    rationalized t = tan(theta / 2), so |z| = 1 holds exactly.
    """
    if not ctx.exact:
        return math.cos(theta), math.sin(theta)
    half = (theta / 2) % math.pi
    if abs(math.cos(half)) < 1e-12:
        return Fraction(-1), Fraction(0)
    t = Fraction(math.tan(half)).limit_denominator(limit)
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


def circle_polygon(n: int, radius=1, center=(0, 0), ctx: ScalarContext = ScalarContext(),
                   start_angle: float = 0.0) -> PolyCurve:
    """Counterclockwise planar N-gon inscribed in a circle, as a curve in C^1."""
    if n < 3:
        raise InvalidParameterError(f'A polygon needs at least 3 vertices, got {n}')
    r = ctx.coerce(radius)
    cx, cy = ctx.coerce(center[0]), ctx.coerce(center[1])
    points = []
    for j in range(n):
        x, y = unit_circle_point(start_angle + 2 * math.pi * j / n, ctx)
        points.append((cx + r * x, cy + r * y))
    params = [Fraction(j, n) if ctx.exact else j / n for j in range(n)]
    return PolyCurve(tuple(points), tuple(params), True, ctx.mode, tol=ctx.tol)


def conjugate_lift(curve: PolyCurve) -> PolyCurve:
    """Planar curve z(t) lifted to (z, conj z) in C^2."""
    return map_points(curve, lambda p: (p[0], p[1], p[0], -p[1]))


def diagonal_lift(curve: PolyCurve) -> PolyCurve:
    """Planar curve z(t) lifted into the complex line {(z, z)}."""
    return map_points(curve, lambda p: (p[0], p[1], p[0], p[1]))


def mesh(curve: PolyCurve) -> float:
    """Longest segment length."""
    return max(math.sqrt(norm_sq(vsub(q, p))) for p, q in curve.segments())
