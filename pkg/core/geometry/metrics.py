"""Hausdorff distances between point clouds and between polyline images."""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from ..constants import Mode
from ..exceptions import DimensionMismatchError, InvalidParameterError, MalformedInputError
from ..utils.digest import content_digest
from .curve_core import Point, PolyCurve, norm_sq, vsub
from .scalar import ScalarContext, format_scalar, sqrt_upper

logger = logging.getLogger(__name__)

# Number of leading coordinates used to bucket points in the grid search
GRID_AXES = 3

# Upper bound on the size of one (samples x segments) block in polyline distances
CHUNK_CELLS = 2_000_000


@dataclass(frozen=True)
class CompactSample:
    """A finite point cloud standing in for a compact subset of R^k."""

    dim: int
    points: Tuple[Point, ...]
    mode: Mode = Mode.RATIONAL

    def __post_init__(self):
        if self.dim <= 0:
            raise InvalidParameterError(f'Dimension must be positive, got {self.dim}')
        if not self.points:
            raise MalformedInputError('A compact sample needs at least one point')
        if any(len(p) != self.dim for p in self.points):
            raise DimensionMismatchError(f'Every point must have {self.dim} coordinates')
        if self.mode == Mode.F64 and any(not math.isfinite(c) for p in self.points for c in p):
            raise MalformedInputError('Sample coordinates must be finite')

    @classmethod
    def build(cls, points, mode=Mode.RATIONAL, dim=None) -> 'CompactSample':
        ctx = ScalarContext(Mode(mode))
        pts = tuple(tuple(ctx.coerce(c) for c in p) for p in points)
        if not pts:
            raise MalformedInputError('A compact sample needs at least one point')
        return cls(dim if dim is not None else len(pts[0]), pts, Mode(mode))

    @classmethod
    def from_array(cls, array: np.ndarray) -> 'CompactSample':
        array = np.asarray(array, dtype=float)
        return cls(array.shape[1], tuple(tuple(float(c) for c in row) for row in array), Mode.F64)

    def as_array(self) -> np.ndarray:
        return np.array([[float(c) for c in p] for p in self.points], dtype=float)

    def canonical(self) -> dict:
        return {
            'dim': self.dim,
            'mode': self.mode.value,
            'points': [[format_scalar(c, self.mode) for c in p] for p in self.points],
        }

    def digest(self) -> str:
        return content_digest(self.canonical())


def _check_dims(a: CompactSample, b: CompactSample):
    if a.dim != b.dim:
        raise DimensionMismatchError(f'Samples live in different dimensions: {a.dim} vs {b.dim}')


def _sqdist(p: Point, q: Point):
    return norm_sq(vsub(p, q))


def _directed_brute_sq(source: Sequence[Point], target: Sequence[Point]):
    return max(min(_sqdist(p, q) for q in target) for p in source)


class _Grid:
    """Uniform buckets over the leading coordinates of a point set.

    ``cell`` must be at least the search radius: every point within that
    radius of a query lies in the 3^axes block of buckets around it.
    """

    def __init__(self, points: Sequence[Point], cell):
        self.cell = cell
        self.axes = min(GRID_AXES, len(points[0]))
        self.buckets: Dict[Tuple[int, ...], List[Point]] = {}
        for p in points:
            self.buckets.setdefault(self.key(p), []).append(p)
        self.offsets = sorted(itertools.product((-1, 0, 1), repeat=self.axes), key=lambda o: sum(map(abs, o)))

    def key(self, p: Point) -> Tuple[int, ...]:
        return tuple(math.floor(p[d] / self.cell) for d in range(self.axes))

    def has_within(self, p: Point, bound_sq) -> bool:
        center = self.key(p)
        for offset in self.offsets:
            for q in self.buckets.get(tuple(c + o for c, o in zip(center, offset)), ()):
                if _sqdist(p, q) <= bound_sq:
                    return True
        return False


def _nearest_sq(p: Point, target: Sequence[Point]):
    return min(_sqdist(p, q) for q in target)


def _directed_grid_sq(source: Sequence[Point], target: Sequence[Point]):
    """Directed distance with a grid whose cell is the current best bound.

    A source point only matters if it is farther than the bound from every
    target point; the grid answers that with a 3^axes neighborhood scan. When
    a point beats the bound its exact distance is computed by a full scan and
    the grid is rebuilt with the larger cell.
    """
    members = set(target)
    best = None
    grid = None
    rebuilds = 0
    for p in source:
        if best is not None and best > 0:
            if grid.has_within(p, best):
                continue
        elif p in members:
            best = _sqdist(p, p)
            continue
        best = _nearest_sq(p, target)
        grid = _Grid(target, sqrt_upper(best)) if best > 0 else None
        rebuilds += 1
    logger.debug('Grid search over %d points used %d rebuilds', len(source), rebuilds)
    return best


def directed_hausdorff_sq(a: CompactSample, b: CompactSample, method: str = 'grid'):
    """Exact squared directed distance ``max_{x in A} min_{y in B} |x - y|^2``."""
    _check_dims(a, b)
    if method == 'brute':
        return _directed_brute_sq(a.points, b.points)
    if method == 'grid':
        return _directed_grid_sq(a.points, b.points)
    raise InvalidParameterError(f'Unknown method {method!r}')


def directed_hausdorff_points(a: CompactSample, b: CompactSample, method: str = 'grid') -> float:
    return math.sqrt(directed_hausdorff_sq(a, b, method))


def hausdorff_points_sq(a: CompactSample, b: CompactSample, method: str = 'grid'):
    return max(directed_hausdorff_sq(a, b, method), directed_hausdorff_sq(b, a, method))


def hausdorff_points(a: CompactSample, b: CompactSample, method: str = 'grid') -> float:
    """Hausdorff distance of two finite samples.

    Both methods compare exact squared distances, so they return identical
    values; the square root is taken once at the end.
    """
    return math.sqrt(hausdorff_points_sq(a, b, method))


def hausdorff_points_vectorized(a, b) -> float:
    """Float Hausdorff distance of two point arrays from k-d tree nearest-neighbour queries."""
    a = np.asarray(a.as_array() if isinstance(a, CompactSample) else a, dtype=float)
    b = np.asarray(b.as_array() if isinstance(b, CompactSample) else b, dtype=float)
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatchError(f'Samples live in different dimensions: {a.shape[1]} vs {b.shape[1]}')
    return max(directed_hausdorff_arrays(a, b), directed_hausdorff_arrays(b, a))


def nearest_distances(source: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Distance from each row of ``source`` to the nearest row of ``target``."""
    distances, _ = cKDTree(np.asarray(target, dtype=float)).query(np.asarray(source, dtype=float))
    return np.asarray(distances, dtype=float)


def directed_hausdorff_arrays(source: np.ndarray, target: np.ndarray) -> float:
    return float(np.max(nearest_distances(np.asarray(source, dtype=float), np.asarray(target, dtype=float))))


def sample_polyline(curve: PolyCurve, h: float) -> np.ndarray:
    """Points along the image with consecutive spacing at most ``h``."""
    if h <= 0:
        raise InvalidParameterError(f'Sampling step must be positive, got {h}')
    chunks = []
    for p, q in curve.segments():
        p_arr = np.array([float(c) for c in p])
        q_arr = np.array([float(c) for c in q])
        pieces = max(1, math.ceil(float(np.linalg.norm(q_arr - p_arr)) / h))
        s = np.arange(pieces)[:, None] / pieces
        chunks.append(p_arr + s * (q_arr - p_arr))
    if not curve.closed:
        chunks.append(np.array([[float(c) for c in curve.points[-1]]]))
    return np.vstack(chunks)


def segment_arrays(curve: PolyCurve) -> Tuple[np.ndarray, np.ndarray]:
    starts = np.array([[float(c) for c in p] for p, _ in curve.segments()])
    ends = np.array([[float(c) for c in q] for _, q in curve.segments()])
    return starts, ends - starts


def points_to_polyline_distances(samples: np.ndarray, curve: PolyCurve) -> np.ndarray:
    """Distance from every row of ``samples`` to the image of ``curve``."""
    starts, directions = segment_arrays(curve)
    lengths_sq = np.einsum('ij,ij->i', directions, directions)
    safe = np.where(lengths_sq > 0, lengths_sq, 1.0)
    block = max(1, CHUNK_CELLS // max(1, len(starts)))
    out = np.empty(len(samples))
    for begin in range(0, len(samples), block):
        x = samples[begin:begin + block]
        w = x[:, None, :] - starts[None, :, :]
        s = np.clip(np.einsum('abk,bk->ab', w, directions) / safe, 0.0, 1.0)
        s = np.where(lengths_sq > 0, s, 0.0)
        residual = w - s[:, :, None] * directions[None, :, :]
        out[begin:begin + block] = np.sqrt(np.min(np.einsum('abk,abk->ab', residual, residual), axis=1))
    return out


def directed_hausdorff_polyline(samples: np.ndarray, curve: PolyCurve) -> float:
    return float(np.max(points_to_polyline_distances(samples, curve)))


def hausdorff_polylines(gamma: PolyCurve, sigma: PolyCurve, h: float) -> float:
    """Hausdorff distance of two polyline images, within ``h / 2`` of the true value.

    Each image is sampled with spacing at most ``h`` and every sample is
    measured against the other polyline's segments, so the result
    underestimates by at most ``h / 2`` and never overestimates.
    """
    if gamma.rdim != sigma.rdim:
        raise DimensionMismatchError(f'Curves live in different dimensions: {gamma.rdim} vs {sigma.rdim}')
    forward = directed_hausdorff_polyline(sample_polyline(gamma, h), sigma)
    backward = directed_hausdorff_polyline(sample_polyline(sigma, h), gamma)
    value = max(forward, backward)
    logger.debug('Polyline Hausdorff distance %.6g (step %.3g)', value, h)
    return value


def hausdorff_cloud_polyline(samples: np.ndarray, curve: PolyCurve, h: float) -> float:
    """Hausdorff distance of a finite cloud and a polyline image, within ``h / 2``."""
    samples = np.asarray(samples, dtype=float)
    forward = directed_hausdorff_polyline(samples, curve)
    sampled = sample_polyline(curve, h)
    backward = directed_hausdorff_arrays(sampled, samples)
    return max(forward, backward)


