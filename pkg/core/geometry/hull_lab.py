"""Convergence examples for polynomial hulls of curves and of more general sets.

Hull models are the closed forms known for each example (Jordan interiors,
analytic discs on {(z, 1/z)}, unions given by Kallin's lemma), sampled on a
grid. Nothing here computes the hull of an arbitrary set.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from matplotlib.path import Path
from scipy.spatial import cKDTree

from ..constants import (
    DEMO_SAMPLES,
    DEMO_VERTICES,
    DENOMINATOR_LIMIT,
    SAMPLING_TOLERANCE_FACTOR,
    DemoName,
    HullKind,
    Mode,
)
from ..exceptions import InvalidParameterError
from .certificates import certificate_search, certify, is_zero_integral, search_integrals, winding_number_about
from .curve_core import (
    Point,
    PolyCurve,
    circle_polygon,
    conjugate_lift,
    mesh,
    point_segment_distance_sq,
    total_variation,
    unit_circle_point,
)
from .metrics import (
    directed_hausdorff_arrays,
    hausdorff_cloud_polyline,
    hausdorff_points_vectorized,
    hausdorff_polylines,
    nearest_distances,
    points_to_polyline_distances,
    sample_polyline,
)
from .polynomials import CPolynomial, LaurentImage, OneForm, monomial_exponents
from .sampling import make_rng
from .scalar import F64, RATIONAL, ScalarContext, context_for

logger = logging.getLogger(__name__)

MIN_SLIT_VERTICES = 16

# Points of lambda_k tested for enclosure by winding number
ENCLOSURE_SAMPLES = 8


@dataclass(frozen=True)
class HullModel:
    """A sampled closed-form polynomial hull.

    ``samples`` are float points of R^{2n} lying in the modeled set;
    ``boundary`` is the planar polygon of a Jordan interior when there is one.
    """

    kind: HullKind
    samples: np.ndarray = field(repr=False)
    boundary: Optional[np.ndarray] = field(default=None, repr=False)
    parameters: Dict[str, object] = field(default_factory=dict)

    def contains_planar(self, x: Sequence[float]) -> bool:
        if self.boundary is None:
            raise InvalidParameterError(f'{self.kind.value} models have no planar interior')
        return bool(Path(self.boundary).contains_point(tuple(x)))

    def distance_to(self, x: Sequence[float]) -> float:
        """Distance from ``x`` to the model; exact geometry for Jordan interiors, sampled otherwise."""
        x = np.asarray(x, dtype=float)
        if self.kind == HullKind.POLYGON_WITH_INTERIOR:
            if self.contains_planar(x):
                return 0.0
            closed = np.vstack([self.boundary, self.boundary[:1]])
            starts, steps = closed[:-1], np.diff(closed, axis=0)
            w = x[None, :] - starts
            s = np.clip(np.einsum('ij,ij->i', w, steps) / np.einsum('ij,ij->i', steps, steps), 0.0, 1.0)
            return float(np.min(np.linalg.norm(w - s[:, None] * steps, axis=1)))
        return float(nearest_distances(x[None, :], self.samples)[0])

    def sup_modulus(self, poly: CPolynomial) -> float:
        return float(np.max(np.abs(polynomial_values(poly, self.samples))))


@dataclass(frozen=True)
class ConvergenceReport:
    name: DemoName
    columns: Tuple[str, ...]
    rows: List[Dict[str, object]]
    verdicts: Dict[str, bool]
    parameters: Dict[str, object] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.verdicts.values())


@dataclass(frozen=True)
class KallinData:
    x_k: np.ndarray = field(repr=False)
    hull_k: HullModel
    x: np.ndarray = field(repr=False)
    hull: HullModel
    limit: np.ndarray = field(repr=False)
    k: int = 1
    mesh: float = 0.0

    def __iter__(self):
        """Unpacks as ``(x_k, hull_k, x, hull)``."""
        return iter((self.x_k, self.hull_k, self.x, self.hull))


@dataclass(frozen=True)
class TangentCircles:
    """Truncated tangent-circle sets: the circle {(z, conj z)} with attached small circles."""

    base: np.ndarray = field(repr=False)
    attached: List[np.ndarray] = field(repr=False)
    replacements: List[np.ndarray] = field(repr=False)
    radii: List[float]
    mesh: float = 0.0

    def x(self) -> np.ndarray:
        return np.vstack([self.base] + self.attached)

    def x_k(self, k: int) -> np.ndarray:
        pieces = [self.replacements[k - 1] if j == k - 1 else g for j, g in enumerate(self.attached)]
        return np.vstack([self.base] + pieces)


def complexify(samples: np.ndarray) -> np.ndarray:
    samples = np.asarray(samples, dtype=float)
    return samples[:, 0::2] + 1j * samples[:, 1::2]


def realify(z: np.ndarray) -> np.ndarray:
    z = np.atleast_2d(z)
    out = np.empty((z.shape[0], 2 * z.shape[1]))
    out[:, 0::2], out[:, 1::2] = z.real, z.imag
    return out


class MonomialTable:
    """Monomials of a complexified sample, each computed once."""

    def __init__(self, samples: np.ndarray):
        self.z = complexify(samples)
        self._monomials: Dict[Tuple[int, ...], np.ndarray] = {}

    def monomial(self, exponent: Tuple[int, ...]) -> np.ndarray:
        if exponent not in self._monomials:
            self._monomials[exponent] = np.prod(self.z ** np.array(exponent), axis=1)
        return self._monomials[exponent]

    def values(self, poly: CPolynomial) -> np.ndarray:
        values = np.zeros(len(self.z), dtype=complex)
        for exponent, coefficient in poly.terms:
            values += complex(coefficient) * self.monomial(exponent)
        return values

    def sup_modulus(self, poly: CPolynomial) -> float:
        return float(np.max(np.abs(self.values(poly))))


def polynomial_values(poly: CPolynomial, samples: np.ndarray) -> np.ndarray:
    return MonomialTable(samples).values(poly)


def gradient_bound(poly: CPolynomial, samples) -> float:
    """max |grad P| over the samples (complex gradient, Euclidean norm)."""
    table = samples if isinstance(samples, MonomialTable) else MonomialTable(samples)
    squares = np.zeros(len(table.z))
    for j in range(poly.nvars):
        squares += np.abs(table.values(poly.derivative(j))) ** 2
    return float(np.sqrt(np.max(squares)))


def random_polynomial(rng: np.random.Generator, nvars: int, degree: int) -> CPolynomial:
    terms = []
    for d in range(degree + 1):
        for exponent in monomial_exponents(nvars, d):
            re, im = rng.standard_normal(2)
            terms.append((exponent, complex(re, im)))
    return CPolynomial.from_terms(nvars, terms, F64)


def sample_mesh(samples: np.ndarray) -> float:
    """Largest nearest-neighbour gap inside a sample."""
    samples = np.asarray(samples, dtype=float)
    if len(samples) < 2:
        return 0.0
    distances, _ = cKDTree(samples).query(samples, k=2)
    return float(np.max(distances[:, 1]))


def circle_samples(count: int, center: complex = 0j, radius: float = 1.0, phase: float = 0.0) -> np.ndarray:
    theta = 2 * math.pi * np.arange(count) / count + phase
    return center + radius * np.exp(1j * theta)


def disc_samples(center: complex, radius: float, step: float) -> np.ndarray:
    """Concentric rings covering a closed disc, spacing at most ``step``; the center is included."""
    rings = max(1, math.ceil(radius / step))
    points = [np.array([center])]
    for j in range(1, rings + 1):
        r = radius * j / rings
        points.append(circle_samples(max(3, math.ceil(2 * math.pi * r / step)), center, r))
    return np.concatenate(points)


def interior_grid(boundary: np.ndarray, step: float) -> np.ndarray:
    path = Path(boundary)
    lo, hi = boundary.min(axis=0), boundary.max(axis=0)
    xs = np.arange(lo[0], hi[0] + step, step)
    ys = np.arange(lo[1], hi[1] + step, step)
    grid = np.array(np.meshgrid(xs, ys)).reshape(2, -1).T
    return grid[path.contains_points(grid)]


def _meets_positive_axis(p: Point, q: Point) -> bool:
    (px, py), (qx, qy) = p, q
    if (py > 0 and qy > 0) or (py < 0 and qy < 0):
        return False
    if py == qy:
        return max(px, qx) >= 0
    return px + (qx - px) * (-py) / (qy - py) >= 0


def _inside_slit_annulus(curve: PolyCurve, k: int) -> bool:
    outer_sq = (1 + Fraction(1, k)) ** 2
    origin = (curve.points[0][0] * 0,) * 2
    if any(p[0] ** 2 + p[1] ** 2 >= outer_sq for p in curve.points):
        return False
    for p, q in curve.segments():
        if point_segment_distance_sq(origin, p, q) <= 1 or _meets_positive_axis(p, q):
            return False
    return True


def _encloses_arc(curve: PolyCurve, k: int, ctx: ScalarContext) -> bool:
    radius = 1 + 1 / (2 * k)
    low, high = math.pi / (2 * k), 2 * math.pi - math.pi / (2 * k)
    for j in range(ENCLOSURE_SAMPLES):
        theta = low + (high - low) * j / (ENCLOSURE_SAMPLES - 1)
        center = tuple(ctx.rationalize(radius * c) for c in (math.cos(theta), math.sin(theta)))
        if winding_number_about(curve, center) == 0:
            return False
    return True


def slit_annulus_family(k: int, n: int = DEMO_VERTICES, mode=Mode.RATIONAL) -> Tuple[PolyCurve, HullModel]:
    """Simple closed n-gon inside {1 < |z| < 1 + 1/k} minus the positive real axis.

    The outer arc at radius 1 + 3/(4k) runs counterclockwise and the inner arc
    at radius 1 + 1/(4k) comes back, both between the arguments pi/(4k) and
    2 pi - pi/(4k), so the arc of radius 1 + 1/(2k) between pi/(2k) and
    2 pi - pi/(2k) lies in the bounded component.
    """
    if k < 2:
        raise InvalidParameterError(f'Slit annulus family needs k >= 2, got {k}')
    if n < MIN_SLIT_VERTICES:
        raise InvalidParameterError(f'At least {MIN_SLIT_VERTICES} vertices are needed, got {n}')
    ctx = context_for(mode)
    outer = ctx.coerce(1 + Fraction(3, 4 * k))
    inner = ctx.coerce(1 + Fraction(1, 4 * k))
    start, stop = math.pi / (4 * k), 2 * math.pi - math.pi / (4 * k)
    n_out = n // 2
    n_in = n - n_out
    points = []
    for j in range(n_out):
        x, y = unit_circle_point(start + (stop - start) * j / (n_out - 1), ctx, DENOMINATOR_LIMIT)
        points.append((outer * x, outer * y))
    for j in range(n_in):
        x, y = unit_circle_point(stop - (stop - start) * j / (n_in - 1), ctx, DENOMINATOR_LIMIT)
        points.append((inner * x, inner * y))
    params = [Fraction(j, n) if ctx.exact else j / n for j in range(n)]
    curve = PolyCurve(tuple(points), tuple(params), True, ctx.mode, tol=ctx.tol)
    if not _inside_slit_annulus(curve, k):
        raise InvalidParameterError(f'{n} vertices cannot realize the slit annulus for k={k}')
    if not _encloses_arc(curve, k, ctx):
        raise InvalidParameterError(f'{n} vertices do not enclose the inner arc for k={k}')
    boundary = np.array([[float(x), float(y)] for x, y in curve.points])
    step = mesh(curve) / 2
    samples = np.vstack([sample_polyline(curve, step), interior_grid(boundary, step)])
    model = HullModel(HullKind.POLYGON_WITH_INTERIOR, samples, boundary, {'k': k, 'n': n})
    logger.debug('Slit annulus curve for k=%d with %d vertices', k, n)
    return curve, model


def graph_image(planar: np.ndarray) -> np.ndarray:
    """z -> (z, 1/z) on planar float samples."""
    z = planar[:, 0] + 1j * planar[:, 1]
    return realify(np.stack([z, 1 / z], axis=1))


def graph_family(k: int, n: int = DEMO_VERTICES, mode=Mode.RATIONAL) -> Tuple[LaurentImage, PolyCurve]:
    """sigma_k, the image of the slit-annulus curve under z -> (z, 1/z), and the conjugate-circle n-gon sigma."""
    gamma_k, _ = slit_annulus_family(k, n, mode)
    sigma = conjugate_lift(circle_polygon(n, ctx=context_for(mode)))
    return LaurentImage(gamma_k, (1, -1)), sigma


def graph_hull_model(k: int, n: int = DEMO_VERTICES) -> HullModel:
    """The analytic disc bounded by sigma_k on the variety {(z, 1/z)}."""
    _, planar = slit_annulus_family(k, n, Mode.F64)
    return HullModel(HullKind.PARAMETRIC_DISC, graph_image(planar.samples), None, {'k': k, 'n': n})


def kallin_example(k: int, m: int = DEMO_SAMPLES) -> KallinData:
    """Sampled sets X_k, X and their stated hulls for two circles joined at one point."""
    if k < 1:
        raise InvalidParameterError(f'k must be positive, got {k}')
    if m < 3:
        raise InvalidParameterError(f'At least 3 samples per component are needed, got {m}')
    step = 2 * math.pi / m
    left, right = circle_samples(m), circle_samples(m, 2 + 0j)
    zeros = np.zeros(m, dtype=complex)
    first_k = np.stack([left, np.conj(left) / k], axis=1)
    second_k = np.stack([right, np.full(m, 1 / k, dtype=complex)], axis=1)
    x_k = realify(np.vstack([first_k, second_k]))
    x = realify(np.vstack([np.stack([left, zeros], axis=1), np.stack([right, zeros], axis=1)]))
    right_disc = disc_samples(2 + 0j, 1.0, step)
    left_disc = disc_samples(0j, 1.0, step)
    hull_k = HullModel(HullKind.EXPLICIT_UNION, realify(np.vstack([
        first_k, np.stack([right_disc, np.full(len(right_disc), 1 / k, dtype=complex)], axis=1)])),
        parameters={'k': k, 'm': m})
    hull = HullModel(HullKind.EXPLICIT_UNION, realify(np.vstack([
        np.stack([left_disc, np.zeros(len(left_disc), dtype=complex)], axis=1),
        np.stack([right_disc, np.zeros(len(right_disc), dtype=complex)], axis=1)])),
        parameters={'m': m})
    limit = realify(np.vstack([
        np.stack([left, zeros], axis=1),
        np.stack([right_disc, np.zeros(len(right_disc), dtype=complex)], axis=1)]))
    return KallinData(x_k, hull_k, x, hull, limit, k, 2 * math.sin(step / 2) * math.sqrt(1 + 1 / k ** 2))


def kallin_lengths(k: int, m: int = DEMO_SAMPLES) -> Tuple[float, float]:
    """Polyline lengths of the two components of X_k."""
    left = circle_samples(m)
    first = PolyCurve.build(realify(np.stack([left, np.conj(left) / k], axis=1)).tolist(), mode=Mode.F64)
    second = PolyCurve.build(realify(np.stack([left + 2, np.full(m, 1 / k, dtype=complex)], axis=1)).tolist(),
                             mode=Mode.F64)
    return total_variation(first), total_variation(second)


def tangent_circles(count: int, m: int = DEMO_SAMPLES) -> TangentCircles:
    """Circle {(e^{it}, e^{-it})} with ``count`` small circles attached at p_k = (e^{i pi/k}, e^{-i pi/k}).

    Each attached circle G_k lies in the plane {(z, conj z)}; its replacement
    E_k lies in p_k + (C x {0}); both have radius |p_k - p_{k+1}| / 4.
    """
    if count < 1:
        raise InvalidParameterError(f'At least one attached circle is needed, got {count}')
    base_z = circle_samples(4 * m)
    base = realify(np.stack([base_z, np.conj(base_z)], axis=1))
    phi = np.exp(1j * 2 * math.pi * np.arange(m) / m)
    attached, replacements, radii = [], [], []
    for k in range(1, count + 1):
        u = np.exp(1j * math.pi / k)
        s = abs(u - np.exp(1j * math.pi / (k + 1))) / 4
        w = u * (1 + s + s * phi)
        attached.append(realify(np.stack([w, np.conj(w)], axis=1)))
        radius = math.sqrt(2) * s
        first = u * (1 + radius * (1 + phi))
        replacements.append(realify(np.stack([first, np.full(m, np.conj(u))], axis=1)))
        radii.append(radius)
    return TangentCircles(base, attached, replacements, radii, 2 * math.sin(math.pi / m) * max(radii))


def _closed_length(samples: np.ndarray) -> float:
    closed = np.vstack([samples, samples[:1]])
    return float(np.sum(np.linalg.norm(np.diff(closed, axis=0), axis=1)))


def hull_limit_inequality(x_ks: Sequence[np.ndarray], hulls: Sequence[HullModel], x: np.ndarray,
                          degree: int = 3, trials: int = 50, seed: int = 0,
                          tolerance_factor: float = SAMPLING_TOLERANCE_FACTOR,
                          meshes: Optional[Sequence[float]] = None,
                          polynomials: Optional[Sequence[CPolynomial]] = None) -> ConvergenceReport:
    """Check sup-norm consistency of stated hulls and the chain ||P||_{hull X_k} <= ||P||_X + eps_k.

    eps_k is the gradient bound times d_H(X_k, X); sampling tolerances are
    ``tolerance_factor * mesh`` times the gradient bound. Without explicit
    ``polynomials`` the constant 1 and ``trials - 1`` seeded random
    polynomials of the given degree are tested. The ``*_sup`` columns are the
    largest sup norms over the tested polynomials.
    """
    if len(x_ks) != len(hulls):
        raise InvalidParameterError(f'{len(x_ks)} sets but {len(hulls)} hull models')
    x = np.asarray(x, dtype=float)
    nvars = x.shape[1] // 2
    if polynomials is None:
        rng = make_rng(seed)
        polys = [CPolynomial.constant(nvars, 1, F64)]
        polys += [random_polynomial(rng, nvars, degree) for _ in range(trials - 1)]
    else:
        polys = list(polynomials)
        if not polys or any(p.nvars != nvars for p in polys):
            raise InvalidParameterError(f'Polynomials must be given in {nvars} variables')
    distances = [hausdorff_points_vectorized(np.asarray(s, dtype=float), x) for s in x_ks]
    meshes = list(meshes) if meshes is not None else [sample_mesh(s) for s in x_ks]
    cloud = MonomialTable(np.vstack([x] + [np.asarray(s, dtype=float) for s in x_ks] + [h.samples for h in hulls]))
    lipschitz = [max(1.0, gradient_bound(poly, cloud)) for poly in polys]
    limit_table = MonomialTable(x)
    on_limit = [limit_table.sup_modulus(poly) for poly in polys]
    rows = []
    total = 0
    for index, (samples, hull) in enumerate(zip(x_ks, hulls)):
        set_table, hull_table = MonomialTable(samples), MonomialTable(hull.samples)
        hull_violations = chain_violations = 0
        worst_gap = hull_sup = set_sup = 0.0
        for poly, bound, limit_sup in zip(polys, lipschitz, on_limit):
            tolerance = tolerance_factor * meshes[index] * bound
            on_hull = hull_table.sup_modulus(poly)
            on_set = set_table.sup_modulus(poly)
            hull_sup, set_sup = max(hull_sup, on_hull), max(set_sup, on_set)
            worst_gap = max(worst_gap, abs(on_hull - on_set))
            if abs(on_hull - on_set) > tolerance:
                hull_violations += 1
            if on_hull > limit_sup + bound * distances[index] + tolerance:
                chain_violations += 1
        total += hull_violations + chain_violations
        rows.append({
            'index': index,
            'mesh': meshes[index],
            'hausdorff': distances[index],
            'hull_sup': hull_sup,
            'set_sup': set_sup,
            'limit_sup': max(on_limit),
            'max_gap': worst_gap,
            'hull_violations': hull_violations,
            'chain_violations': chain_violations,
        })
    if total:
        logger.warning('Hull limit inequality: %d violations over %d polynomials', total, len(polys))
    return ConvergenceReport(
        DemoName.KALLIN,
        ('index', 'mesh', 'hausdorff', 'hull_sup', 'set_sup', 'limit_sup', 'max_gap', 'hull_violations',
         'chain_violations'),
        rows,
        {'no_violations': total == 0},
        {'degree': degree, 'trials': len(polys), 'seed': seed, 'tolerance_factor': tolerance_factor},
    )


def unit_circle_curve(n: int) -> PolyCurve:
    return circle_polygon(n, ctx=F64)


def slit_row(k: int, n: int = DEMO_VERTICES) -> Dict[str, object]:
    curve, model = slit_annulus_family(k, n)
    h = mesh(curve)
    distance = hausdorff_polylines(curve, unit_circle_curve(4 * n), h / 4)
    winding = winding_number_about(curve, (0, 0))
    origin = model.distance_to((0.0, 0.0))
    holds = distance <= 1 / k + h and winding == 0 and origin >= 1 - h
    return {
        'k': k, 'n': n, 'mesh': h, 'hausdorff_curve': distance, 'curve_bound': 1 / k + h,
        'winding_origin': winding, 'origin_distance': origin, 'holds': holds,
    }


def graph_row(k: int, n: int = DEMO_VERTICES, max_degree: int = 3) -> Dict[str, object]:
    sigma_k, sigma = graph_family(k, n)
    form = OneForm.monomial(2, (0, 1), 0)
    certificate = certify(sigma, form)
    found = certificate_search(sigma_k, max_degree)
    nonzero = sum(1 for _, value in search_integrals(sigma_k, max_degree) if not is_zero_integral(value, RATIONAL))
    h = max(mesh(sigma), mesh(sigma_k.base))
    samples = np.array(sigma_k.sample(4))
    distance = hausdorff_cloud_polyline(samples, sigma, h / 4)
    hull = graph_hull_model(k, n)
    hull_distance = float(np.max(points_to_polyline_distances(hull.samples, sigma)))
    value = complex(certificate.integral)
    holds = certificate.certified and found is None and nonzero == 0 and distance <= 3 / k + h
    return {
        'k': k, 'n': n, 'mesh': h, 'hausdorff_curve': distance, 'curve_bound': 3 / k + h,
        'hull_distance': hull_distance, 'sigma_integral': value.imag,
        'sigma_k_certificate': found.form.label() if found else 'none',
        'nonzero_integrals': nonzero, 'holds': holds,
    }


def kallin_row(k: int, m: int = DEMO_SAMPLES, degree: int = 3, trials: int = 50, seed: int = 0) -> Dict[str, object]:
    data = kallin_example(k, m)
    gap = directed_hausdorff_arrays(data.hull.samples, data.limit)
    uniform = float(np.max(np.linalg.norm(data.x_k - data.x, axis=1)))
    first, second = kallin_lengths(k, m)
    bound = 2 * (math.sqrt(2) + 1) * math.pi
    report = hull_limit_inequality([data.x_k], [data.hull_k], data.x, degree, trials, seed, meshes=[data.mesh])
    violations = sum(r['hull_violations'] + r['chain_violations'] for r in report.rows)
    length = first + second
    holds = gap >= 1 - data.mesh and uniform <= math.sqrt(2) / k + 1e-12 and length <= bound and violations == 0
    return {
        'k': k, 'm': m, 'mesh': data.mesh, 'limit_gap': gap, 'uniform_distance': uniform,
        'length': length, 'length_bound': bound, 'violations': violations, 'holds': holds,
    }


def tangent_row(k: int, count: int = 8, m: int = DEMO_SAMPLES) -> Dict[str, object]:
    if not 1 <= k <= count:
        raise InvalidParameterError(f'k must lie in 1..{count}, got {k}')
    circles = tangent_circles(count, m)
    x, x_k = circles.x(), circles.x_k(k)
    uniform = float(np.max(np.linalg.norm(circles.attached[k - 1] - circles.replacements[k - 1], axis=1)))
    distance = hausdorff_points_vectorized(x_k, x)
    length_x = _closed_length(circles.base) + sum(_closed_length(g) for g in circles.attached)
    length_k = length_x - _closed_length(circles.attached[k - 1]) + _closed_length(circles.replacements[k - 1])
    holds = abs(length_k - length_x) <= circles.mesh and uniform <= 4 * circles.radii[k - 1] + 1e-12
    return {
        'k': k, 'count': count, 'm': m, 'mesh': circles.mesh, 'uniform_distance': uniform,
        'hausdorff': distance, 'length_xk': length_k, 'length_x': length_x, 'holds': holds,
    }


DEMO_COLUMNS = {
    DemoName.SLIT: ('k', 'n', 'mesh', 'hausdorff_curve', 'curve_bound', 'winding_origin', 'origin_distance',
                    'holds'),
    DemoName.GRAPH: ('k', 'n', 'mesh', 'hausdorff_curve', 'curve_bound', 'hull_distance', 'sigma_integral',
                     'sigma_k_certificate', 'nonzero_integrals', 'holds'),
    DemoName.KALLIN: ('k', 'm', 'mesh', 'limit_gap', 'uniform_distance', 'length', 'length_bound', 'violations',
                      'holds'),
    DemoName.TANGENT: ('k', 'count', 'm', 'mesh', 'uniform_distance', 'hausdorff', 'length_xk', 'length_x',
                       'holds'),
}


def convergence_report(name, rows: List[Dict[str, object]], parameters: Dict[str, object]) -> ConvergenceReport:
    name = DemoName(name)
    rows = sorted(rows, key=lambda row: row['k'])
    verdicts = {f"k={row['k']}": bool(row['holds']) for row in rows}
    if name in (DemoName.SLIT, DemoName.GRAPH):
        distances = [row['hausdorff_curve'] for row in rows]
        verdicts['monotone'] = all(b <= a for a, b in zip(distances, distances[1:]))
    if name == DemoName.TANGENT:
        distances = [row['uniform_distance'] for row in rows]
        verdicts['monotone'] = all(b <= a for a, b in zip(distances, distances[1:]))
    return ConvergenceReport(name, DEMO_COLUMNS[name], rows, verdicts, dict(parameters))
