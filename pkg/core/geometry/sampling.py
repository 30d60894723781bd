"""Seeded random directions, rounded into the active numeric mode."""
import math
from typing import Sequence, Tuple

import numpy as np

from ..constants import DENOMINATOR_LIMIT
from .curve_core import Point, norm_sq
from .scalar import CScalar, ScalarContext


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_direction(rng: np.random.Generator, rdim: int, ctx: ScalarContext,
                     limit: int = DENOMINATOR_LIMIT) -> Point:
    """A nonzero, roughly unit vector drawn uniformly on the sphere then rationalized."""
    while True:
        draw = rng.standard_normal(rdim)
        length = float(np.linalg.norm(draw))
        if length > 1e-6:
            break
    vector = tuple(ctx.rationalize(float(x) / length, limit) for x in draw)
    if all(c == 0 for c in vector):
        vector = (ctx.one(),) + tuple(ctx.zero() for _ in range(rdim - 1))
    return vector


def hermitian_normal(u: Sequence[CScalar], ctx: ScalarContext) -> Tuple[CScalar, ...]:
    """A vector Hermitian-orthogonal to ``u`` on its two largest coordinates.

    For u != 0 the result is complex-linearly independent of u.
    """
    order = sorted(range(len(u)), key=lambda j: u[j].abs2(), reverse=True)
    p, q = sorted(order[:2])
    out = [CScalar.zero(ctx) for _ in u]
    out[p] = -u[q].conjugate()
    out[q] = u[p].conjugate()
    if all(x.is_zero(ctx) for x in out):
        out[q] = CScalar.one(ctx)
    return tuple(out)


def scale_below(vector: Point, bound_sq, ctx: ScalarContext, limit: int = DENOMINATOR_LIMIT):
    """A scalar k > 0 with ``|k * vector|^2 <= bound_sq``, close to the largest such k."""
    length_sq = norm_sq(vector)
    k = ctx.rationalize(0.99 * math.sqrt(float(bound_sq) / float(length_sq)), limit)
    if k == 0:
        k = ctx.one() / limit
    while k * k * length_sq > bound_sq:
        k = k / 2
    return k
