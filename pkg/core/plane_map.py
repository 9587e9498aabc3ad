"""The plane homeomorphism h and its square quotient g.

g = ξ f ξ^-1 on the open square off the slits and the level reflection Ψ on
P(g) = ∂J^2 ∪ [v5, v9] ∪ [v0, v6]. h = ψ g ψ^-1 with the tangent chart ψ, and
h is the reflection (r, 0) -> (-r, 0) on the two rays |r| >= 1.

Orbits of h are computed by lifting: the seed is pulled back once to an exact
point of J^2, f is iterated exactly, and every iterate is pushed out through
ψ ξ. Floating error therefore stays confined to the two chart crossings of
each reported point.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Sequence

import mpmath

from core import collapse_map
from core.exceptions import DomainError
from core.numerics import Direction, bigfloat_context, to_bigfloat, to_rational
from core.square_map import SquarePoint, f, f_cell
from core.strips import F01, b_zone_midpoint

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class PlanePoint:
    x: Any
    y: Any

    def __iter__(self) -> Iterator[Any]:
        yield self.x
        yield self.y

    def __getitem__(self, index: int) -> Any:
        return (self.x, self.y)[index]

    def __len__(self) -> int:
        return 2

    @classmethod
    def of(cls, ctx: mpmath.MPContext, point: Sequence[Any]) -> PlanePoint:
        return cls(*(to_bigfloat(ctx, v) if isinstance(v, (Fraction, int)) else ctx.mpf(v) for v in point))


def _bigfloat_pair(ctx: mpmath.MPContext, point: Sequence[Any]) -> tuple[Any, Any]:
    x, y = point
    conv = [to_bigfloat(ctx, v) if isinstance(v, (Fraction, int)) else ctx.mpf(v) for v in (x, y)]
    return conv[0], conv[1]


def tangent_chart(ctx: mpmath.MPContext, point: Sequence[Any], direction: Direction = Direction.FORWARD) -> Any:
    """ψ(r, s) = (tan(πr/2), tan(πs/2)) on the open square, or its inverse."""
    x, y = _bigfloat_pair(ctx, point)
    if direction is Direction.INVERSE:
        return 2 * ctx.atan(x) / ctx.pi, 2 * ctx.atan(y) / ctx.pi
    if not (abs(x) < 1 and abs(y) < 1):
        raise DomainError(f"ψ is defined on the open square only, got ({x}, {y})")
    return PlanePoint(ctx.tan(ctx.pi * x / 2), ctx.tan(ctx.pi * y / 2))


def on_g_periodic_set(x: Any, y: Any) -> bool:
    """P(g): the square boundary and the two slits."""
    return abs(x) == 1 or abs(y) == 1 or (y == 0 and 2 * abs(x) >= 1)


def _clamp_unit(value: Fraction) -> Fraction:
    return min(max(value, Fraction(-1)), Fraction(1))


def lift(ctx: mpmath.MPContext, point: Sequence[Any]) -> SquarePoint:
    """Exact square point near ξ^-1 of a square point off P(g)."""
    u, v = collapse_map.xi_inv(ctx, point)
    return SquarePoint(_clamp_unit(to_rational(ctx, u)), _clamp_unit(to_rational(ctx, v)))


def g_map(ctx: mpmath.MPContext, point: Sequence[Any], direction: Direction = Direction.FORWARD) -> tuple[Any, Any]:
    x, y = _bigfloat_pair(ctx, point)
    if not (abs(x) <= 1 and abs(y) <= 1):
        raise DomainError(f"g is defined on J^2, got ({x}, {y})")
    if on_g_periodic_set(x, y):
        return -x, y
    return collapse_map.xi(ctx, f(lift(ctx, (x, y)), direction))


def is_h_periodic(point: Sequence[Any]) -> bool:
    """P(h): the rays (-∞, -1] x {0} and [1, ∞) x {0}."""
    x, y = point
    return y == 0 and abs(x) >= 1


GUARD_BITS = 32


def working_context(ctx: mpmath.MPContext, point: Sequence[Any]) -> mpmath.MPContext:
    """``ctx`` widened by the binary magnitude of a plane point.

    ψ^-1(x) lies about 1/|x| inside ∂J^2, so far out points need that many
    extra bits to stay off the boundary.
    """
    magnitude = max([0, *(int(ctx.mag(v)) for v in point if v)])
    if magnitude <= 1:
        return ctx
    return bigfloat_context(ctx.prec + magnitude + GUARD_BITS)


def h_map(ctx: mpmath.MPContext, point: Sequence[Any], direction: Direction = Direction.FORWARD) -> PlanePoint:
    x, y = _bigfloat_pair(ctx, point)
    if is_h_periodic((x, y)):
        return PlanePoint(-x, y)
    work = working_context(ctx, (x, y))
    square = tangent_chart(work, (x, y), Direction.INVERSE)
    image = tangent_chart(work, g_map(work, square, direction))
    if work is ctx:
        return image
    return PlanePoint(ctx.mpf(image.x), ctx.mpf(image.y))


def push_out(ctx: mpmath.MPContext, w: SquarePoint) -> PlanePoint | None:
    """ψ ξ(w), or None when the image is not representable in the plane."""
    try:
        return tangent_chart(ctx, collapse_map.xi(ctx, w))
    except DomainError:
        logger.debug(f"Point {w} maps onto ∂J^2, skipped in the plane orbit")
        return None


def iterate_exact(w: SquarePoint, n_lo: int, n_hi: int) -> dict[int, SquarePoint]:
    """f^n(w) for every n in [n_lo, n_hi] (iterating from n = 0)."""
    points: dict[int, SquarePoint] = {0: w}
    current = w
    for n in range(1, max(n_hi, 0) + 1):
        current = f(current)
        points[n] = current
    current = w
    for n in range(-1, min(n_lo, 0) - 1, -1):
        current = f(current, Direction.INVERSE)
        points[n] = current
    return {n: p for n, p in points.items() if n_lo <= n <= n_hi}


def h_orbit_lifted(ctx: mpmath.MPContext, seed: Sequence[Any], n_lo: int, n_hi: int) -> list[PlanePoint | None]:
    """h^n(seed) for n in [n_lo, n_hi] via the exact lift to f.

    Entries are None where ψ ξ f^n(w) falls on ∂J^2 at this precision.
    """
    x, y = _bigfloat_pair(ctx, seed)
    if n_lo > n_hi:
        raise DomainError(f"empty orbit range [{n_lo}, {n_hi}]")
    if is_h_periodic((x, y)):
        return [PlanePoint(x if n % 2 == 0 else -x, y) for n in range(n_lo, n_hi + 1)]
    work = working_context(ctx, (x, y))
    w = lift(work, tangent_chart(work, (x, y), Direction.INVERSE))
    exact = iterate_exact(w, n_lo, n_hi)
    orbit = []
    for n in range(n_lo, n_hi + 1):
        orbit.append(PlanePoint(x, y) if n == 0 else push_out(ctx, exact[n]))
    skipped = sum(1 for p in orbit if p is None)
    if skipped:
        logger.info(f"Lifted h-orbit of ({x}, {y}): {skipped} points beyond the plane chart")
    return orbit


def g_orbit_lifted(ctx: mpmath.MPContext, seed: Sequence[Any], n_lo: int, n_hi: int) -> list[tuple[Any, Any]]:
    """g^n(seed) for n in [n_lo, n_hi] via the exact lift to f."""
    x, y = _bigfloat_pair(ctx, seed)
    if on_g_periodic_set(x, y):
        return [(x if n % 2 == 0 else -x, y) for n in range(n_lo, n_hi + 1)]
    exact = iterate_exact(lift(ctx, (x, y)), n_lo, n_hi)
    return [(x, y) if n == 0 else collapse_map.xi(ctx, exact[n]) for n in range(n_lo, n_hi + 1)]


def h_orbit_naive(ctx: mpmath.MPContext, seed: Sequence[Any], steps: int) -> list[PlanePoint]:
    """Per-step composition h = ψ ξ f ξ^-1 ψ^-1, for cross-checking short horizons."""
    direction = Direction.FORWARD if steps >= 0 else Direction.INVERSE
    current = PlanePoint.of(ctx, seed)
    orbit = [current]
    for _ in range(abs(steps)):
        current = h_map(ctx, current, direction)
        orbit.append(current)
    return orbit


def h_cell(ctx: mpmath.MPContext, point: Sequence[Any]) -> tuple:
    """Smooth-piece key of h: the pieces of ξ^-1, f and ξ the point runs through."""
    x, y = _bigfloat_pair(ctx, point)
    if is_h_periodic((x, y)):
        return ("ray",)
    square = tangent_chart(ctx, (x, y), Direction.INVERSE)
    w = lift(ctx, square)
    return (
        collapse_map.xi_inv_cell(ctx, square),
        f_cell(w),
        collapse_map.xi_cell(ctx, f(w)),
    )


def example_shift_reflection(point: Sequence[Any], direction: Direction = Direction.FORWARD) -> tuple[Any, Any]:
    """(x, y) -> (-x, y - |x| + 1) inside the band |x| < 1, (-x, y) outside.

    Fixed-point free with every orbit in the band unbounded. Works for any
    numeric type with exact results on Fractions.
    """
    x, y = point
    if direction is Direction.FORWARD:
        if abs(x) < 1:
            return -x, y - abs(x) + 1
        return -x, y
    if abs(x) < 1:
        return -x, y + abs(x) - 1
    return -x, y


@dataclass(frozen=True, slots=True)
class SlitApproachStep:
    level: int
    point: tuple[Any, Any]
    g_value: tuple[Any, Any]
    error: Any


def slit_approach(ctx: mpmath.MPContext, q: Sequence[Any], side: str, levels: Sequence[int]) -> list[SlitApproachStep]:
    """Points of J^2 tending to the slit point q from ``side`` ("above" or "below").

    The k-th point is ξ(r*, f01^-1(σ_k)) above and ξ(r*, -σ_k) below, where
    (r*, 1) is the top-edge preimage of q and σ_k is a height inside the shear
    zone of an odd level, on which Φ is the identity. The g-values then tend to
    Ψ(q) at a rate proportional to 2^-level.
    """
    if side not in ("above", "below"):
        raise DomainError(f"side must be 'above' or 'below', got {side!r}")
    if any(i < 3 or i % 2 == 0 for i in levels):
        raise DomainError("approach levels must be odd and at least 3")
    qx, qy = _bigfloat_pair(ctx, q)
    px, _ = collapse_map.top_edge_preimage(ctx, (qx, qy))
    r_star = to_rational(ctx, px)
    target = (-qx, qy)
    steps = []
    for level in levels:
        sigma = b_zone_midpoint(level)
        height = F01.invert(sigma) if side == "above" else -sigma
        point = collapse_map.xi(ctx, SquarePoint(r_star, height))
        value = g_map(ctx, point)
        error = ctx.hypot(value[0] - target[0], value[1] - target[1])
        steps.append(SlitApproachStep(level, point, value, error))
    return steps
