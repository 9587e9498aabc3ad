"""A concrete collapse map ξ: J^2 -> J^2 and its inverse off the slits.

The right half R = [0, 1] x [-1, 1] is read in two polar charts: around v6 in
the source and around v0 in the target. In chart coordinates both halves are
rectangles, [0, π] x [0, 1] and [0, 2π] x [0, 1]. A pinned homeomorphism λ
between their boundary circles is extended radially from interior centers
(cone extension), and the left half is obtained by the level reflection.

The pins realize the four contract conditions:

* the left edge of R is fixed pointwise, so the fiber {0} x J is fixed and the
  x-axis is halved;
* the right edge of R and the point v6 collapse onto v0;
* the top-right corner arcs unfold onto the two sides of the slit [v0, v6];
* the pins are symmetric under (α, θ) -> (π - α, 2π - θ), which is the vertical
  reflection in both charts.

All arithmetic happens in an explicit mpmath context.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from core.exceptions import DomainError, OutOfDomainError, SlitError
from core.numerics import Direction, angle_normalize, to_bigfloat

logger = logging.getLogger(__name__)

Pair = tuple[Any, Any]


class Center(str, Enum):
    V6 = "v6"
    V0 = "v0"


class SourceSide(str, Enum):
    OUTER = "outer"  # rho = 1: top, left and bottom edges of R
    APEX = "apex"  # rho = 0: the point v6
    LOWER = "lower"  # alpha = 0: right edge below v6
    UPPER = "upper"  # alpha = pi: right edge above v6


class TargetSide(str, Enum):
    OUTER = "outer"  # rho' = 1: boundary of R
    CENTER = "center"  # rho' = 0: the point v0
    SLIT_TOP = "slit_top"  # theta = 0
    SLIT_BOTTOM = "slit_bottom"  # theta = 2 pi


@dataclass(frozen=True, slots=True)
class ChartU:
    """Source fan coordinates around v6."""

    alpha: Any
    rho: Any


@dataclass(frozen=True, slots=True)
class ChartV:
    """Target fan coordinates around v0; θ = 0 and θ = 2π are the two slit sides."""

    theta: Any
    rho_p: Any


def _mpf(ctx: mpmath.MPContext, value: Any) -> Any:
    return to_bigfloat(ctx, value) if isinstance(value, (Fraction, int)) else ctx.mpf(value)


def _pair(ctx: mpmath.MPContext, point: Sequence[Any]) -> Pair:
    x, y = point
    return _mpf(ctx, x), _mpf(ctx, y)


def _clamp(value: Any, lo: Any, hi: Any) -> Any:
    return min(max(value, lo), hi)


def _in_right_half(x: Any, y: Any) -> bool:
    return 0 <= x <= 1 and -1 <= y <= 1


def exit_point(ctx: mpmath.MPContext, center: Center, angle: Any) -> Pair:
    """Where the ray from ``center`` leaves the rectangle [0, 1] x [-1, 1]."""
    angle = _mpf(ctx, angle)
    if center is Center.V6:
        if not 0 <= angle <= ctx.pi:
            raise DomainError(f"source angle {angle} outside [0, π]")
        dx, dy = -ctx.sin(angle), -ctx.cos(angle)
        scale = 1 / max(abs(dx), abs(dy))
        return 1 + dx * scale, dy * scale
    if not 0 <= angle <= 2 * ctx.pi:
        raise DomainError(f"target angle {angle} outside [0, 2π]")
    dx, dy = ctx.cos(angle), ctx.sin(angle)
    scale = 1 / max(2 * abs(dx), abs(dy))
    return ctx.mpf(1) / 2 + dx * scale, dy * scale


def source_chart(ctx: mpmath.MPContext, value: Any, direction: Direction = Direction.FORWARD) -> Any:
    """Point of R <-> ChartU around v6."""
    if direction is Direction.INVERSE:
        ex, ey = exit_point(ctx, Center.V6, value.alpha)
        rho = _mpf(ctx, value.rho)
        return 1 + rho * (ex - 1), rho * ey
    x, y = _pair(ctx, value)
    if not _in_right_half(x, y):
        raise DomainError(f"({x}, {y}) is outside the right half-square")
    phi = angle_normalize(ctx, (x, y), (1, 0))
    alpha = _clamp(3 * ctx.pi / 2 - phi, ctx.zero, ctx.pi)
    return ChartU(alpha, max(1 - x, abs(y)))


def target_chart(ctx: mpmath.MPContext, value: Any, direction: Direction = Direction.FORWARD) -> Any:
    """Point of R minus the slit [v0, v6] <-> ChartV around v0."""
    if direction is Direction.INVERSE:
        ex, ey = exit_point(ctx, Center.V0, value.theta)
        rho_p = _mpf(ctx, value.rho_p)
        half = ctx.mpf(1) / 2
        return half + rho_p * (ex - half), rho_p * ey
    x, y = _pair(ctx, value)
    if not _in_right_half(x, y):
        raise DomainError(f"({x}, {y}) is outside the right half-square")
    if y == 0 and 2 * x >= 1:
        # limits: θ -> 0 from above the slit, θ -> 2π from below
        raise SlitError(f"({x}, {y}) lies on the slit [v0, v6]")
    return ChartV(angle_normalize(ctx, (x, y), (Fraction(1, 2), 0)), max(abs(2 * x - 1), abs(y)))


def _lambda_forward(ctx: mpmath.MPContext, side: SourceSide, alpha: Any, rho: Any) -> tuple[Any, Any, str]:
    pi = ctx.pi
    two_pi = 2 * pi
    corner = pi - ctx.atan(2)
    if side is SourceSide.OUTER:
        if alpha <= pi / 8:
            return two_pi, 8 * alpha / pi, "slit_bottom_pin"
        if alpha <= pi / 4:
            u = (alpha - pi / 8) / (pi / 8)
            return two_pi - u * corner, ctx.one, "lower_arc"
        if alpha <= 3 * pi / 4:
            return pi - ctx.atan(2 * ctx.tan(alpha - pi / 2)), ctx.one, "left_edge"
        if alpha <= 7 * pi / 8:
            v = (alpha - 3 * pi / 4) / (pi / 8)
            return corner * (1 - v), ctx.one, "upper_arc"
        return ctx.zero, 8 * (pi - alpha) / pi, "slit_top_pin"
    if side is SourceSide.UPPER:
        return two_pi / 3 * (1 - rho), ctx.zero, "upper_collapse"
    if side is SourceSide.APEX:
        return two_pi / 3 + (1 - alpha / pi) * two_pi / 3, ctx.zero, "apex_collapse"
    return 2 * two_pi / 3 + rho * two_pi / 3, ctx.zero, "lower_collapse"


def _lambda_inverse(ctx: mpmath.MPContext, side: TargetSide, theta: Any, rho_p: Any) -> tuple[Any, Any, str]:
    pi = ctx.pi
    two_pi = 2 * pi
    corner = pi - ctx.atan(2)
    if side is TargetSide.OUTER:
        if theta >= pi + ctx.atan(2):
            u = (two_pi - theta) / corner
            return pi / 8 + u * pi / 8, ctx.one, "lower_arc"
        if theta >= corner:
            return pi / 2 + ctx.atan(ctx.tan(pi - theta) / 2), ctx.one, "left_edge"
        v = 1 - theta / corner
        return 3 * pi / 4 + v * pi / 8, ctx.one, "upper_arc"
    if side is TargetSide.CENTER:
        if theta <= two_pi / 3:
            return pi, 1 - 3 * theta / two_pi, "upper_collapse"
        if theta <= 2 * two_pi / 3:
            return pi * (2 - 3 * theta / two_pi), ctx.zero, "apex_collapse"
        return ctx.zero, 3 * theta / two_pi - 2, "lower_collapse"
    if side is TargetSide.SLIT_TOP:
        return pi - rho_p * pi / 8, ctx.one, "slit_top_pin"
    return rho_p * pi / 8, ctx.one, "slit_bottom_pin"


def boundary_reparam(ctx: mpmath.MPContext, b: Sequence[Any], direction: Direction = Direction.FORWARD) -> Pair:
    """The pinned circle homeomorphism λ between the two chart rectangles."""
    a, r = _pair(ctx, b)
    pi = ctx.pi
    if direction is Direction.FORWARD:
        if not (0 <= a <= pi and 0 <= r <= 1):
            raise DomainError(f"({a}, {r}) is outside [0, π] x [0, 1]")
        if r == 1:
            side = SourceSide.OUTER
        elif r == 0:
            side = SourceSide.APEX
        elif a == 0:
            side = SourceSide.LOWER
        elif a == pi:
            side = SourceSide.UPPER
        else:
            raise DomainError(f"({a}, {r}) is not on the source boundary")
        theta, rho_p, _ = _lambda_forward(ctx, side, a, r)
        return theta, rho_p
    if not (0 <= a <= 2 * pi and 0 <= r <= 1):
        raise DomainError(f"({a}, {r}) is outside [0, 2π] x [0, 1]")
    if r == 1:
        target = TargetSide.OUTER
    elif r == 0:
        target = TargetSide.CENTER
    elif a == 0:
        target = TargetSide.SLIT_TOP
    elif a == 2 * pi:
        target = TargetSide.SLIT_BOTTOM
    else:
        raise DomainError(f"({a}, {r}) is not on the target boundary")
    alpha, rho, _ = _lambda_inverse(ctx, target, a, r)
    return alpha, rho


def _cone(ctx: mpmath.MPContext, u: Pair, direction: Direction) -> tuple[Pair, str]:
    pi = ctx.pi
    half = ctx.mpf(1) / 2
    if direction is Direction.FORWARD:
        center, target_center, half_angle = (pi / 2, half), (pi, half), pi / 2
    else:
        center, target_center, half_angle = (pi, half), (pi / 2, half), pi
    da, dr = u[0] - center[0], u[1] - center[1]
    ta, tr = abs(da) / half_angle, abs(dr) / half
    t = max(ta, tr)
    if t == 0:
        return target_center, "center"
    if ta >= tr:
        angle_b = ctx.zero if da < 0 else 2 * half_angle
        radius_b = _clamp(half + dr / t, ctx.zero, ctx.one)
        if direction is Direction.FORWARD:
            side = SourceSide.LOWER if da < 0 else SourceSide.UPPER
        else:
            side = TargetSide.SLIT_TOP if da < 0 else TargetSide.SLIT_BOTTOM
    else:
        radius_b = ctx.zero if dr < 0 else ctx.one
        angle_b = _clamp(center[0] + da / t, ctx.zero, 2 * half_angle)
        if direction is Direction.FORWARD:
            side = SourceSide.APEX if dr < 0 else SourceSide.OUTER
        else:
            side = TargetSide.CENTER if dr < 0 else TargetSide.OUTER
    if direction is Direction.FORWARD:
        a_img, r_img, arc = _lambda_forward(ctx, side, angle_b, radius_b)
    else:
        a_img, r_img, arc = _lambda_inverse(ctx, side, angle_b, radius_b)
    result = (
        target_center[0] + t * (a_img - target_center[0]),
        target_center[1] + t * (r_img - target_center[1]),
    )
    return result, arc


def cone_map(ctx: mpmath.MPContext, u: Sequence[Any], direction: Direction = Direction.FORWARD) -> Pair:
    """Radial extension of λ from c_U = (π/2, 1/2) to c_V = (π, 1/2)."""
    point, _ = _cone(ctx, _pair(ctx, u), direction)
    return point


def _source_wall(x: Any, y: Any) -> str:
    if 1 - x >= abs(y):
        return "left"
    return "top" if y > 0 else "bottom"


def _target_wall(ctx: mpmath.MPContext, theta: Any) -> str:
    c, s = ctx.cos(theta), ctx.sin(theta)
    if 2 * abs(c) >= abs(s):
        return "right" if c > 0 else "left"
    return "top" if s > 0 else "bottom"


def _xi_right(ctx: mpmath.MPContext, x: Any, y: Any) -> tuple[Pair, tuple]:
    if x == 0:
        return (ctx.zero, y), ("axis",)
    if x == 1:
        return (ctx.mpf(1) / 2, ctx.zero), ("right_edge",)
    chart = source_chart(ctx, (x, y))
    (theta, rho_p), arc = _cone(ctx, (chart.alpha, chart.rho), Direction.FORWARD)
    theta = _clamp(theta, ctx.zero, 2 * ctx.pi)
    rho_p = _clamp(rho_p, ctx.zero, ctx.one)
    point = target_chart(ctx, ChartV(theta, rho_p), Direction.INVERSE)
    return point, (_source_wall(x, y), arc, _target_wall(ctx, theta))


def xi(ctx: mpmath.MPContext, point: Sequence[Any]) -> Pair:
    """ξ on the closed square; the left half is Ψ ξ Ψ."""
    x, y = _pair(ctx, point)
    if not (abs(x) <= 1 and abs(y) <= 1):
        raise DomainError(f"({x}, {y}) is outside J^2")
    if x < 0:
        (u, v), _ = _xi_right(ctx, -x, y)
        return -u, v
    result, _ = _xi_right(ctx, x, y)
    return result


def xi_cell(ctx: mpmath.MPContext, point: Sequence[Any]) -> tuple:
    """Smooth-piece key of ξ at a point (half, source wall, λ arc, target wall)."""
    x, y = _pair(ctx, point)
    if x < 0:
        return ("left_half",) + _xi_right(ctx, -x, y)[1]
    return ("right_half",) + _xi_right(ctx, x, y)[1]


def _xi_inv_right(ctx: mpmath.MPContext, x: Any, y: Any) -> tuple[Pair, tuple]:
    if x == 0:
        return (ctx.zero, y), ("axis",)
    chart = target_chart(ctx, (x, y))
    (alpha, rho), arc = _cone(ctx, (chart.theta, chart.rho_p), Direction.INVERSE)
    alpha = _clamp(alpha, ctx.zero, ctx.pi)
    rho = _clamp(rho, ctx.zero, ctx.one)
    point = source_chart(ctx, ChartU(alpha, rho), Direction.INVERSE)
    return point, (_target_wall(ctx, chart.theta), arc, _source_wall(*point))


def _check_open_square(x: Any, y: Any) -> None:
    if not (abs(x) < 1 and abs(y) < 1):
        raise OutOfDomainError(f"ξ^-1 is undefined on ∂J^2, got ({x}, {y})")
    if y == 0 and 2 * abs(x) >= 1:
        raise SlitError(f"ξ^-1 is undefined on the slits, got ({x}, {y})")


def xi_inv(ctx: mpmath.MPContext, point: Sequence[Any]) -> Pair:
    """Inverse of ξ on the open square minus the slits [v5, v9] and [v0, v6]."""
    x, y = _pair(ctx, point)
    _check_open_square(x, y)
    if x < 0:
        (u, v), _ = _xi_inv_right(ctx, -x, y)
        return -u, v
    result, _ = _xi_inv_right(ctx, x, y)
    return result


def xi_inv_cell(ctx: mpmath.MPContext, point: Sequence[Any]) -> tuple:
    x, y = _pair(ctx, point)
    _check_open_square(x, y)
    if x < 0:
        return ("left_half",) + _xi_inv_right(ctx, -x, y)[1]
    return ("right_half",) + _xi_inv_right(ctx, x, y)[1]


def top_edge_preimage(ctx: mpmath.MPContext, q: Sequence[Any]) -> Pair:
    """The top-edge point p with ξ(p) = q for a slit point q.

    The other preimage is the bottom-edge point Ψ_v p.
    """
    qx, qy = _pair(ctx, q)
    if qy != 0 or not 1 <= 2 * abs(qx) <= 2:
        raise DomainError(f"({qx}, {qy}) is not on a slit")
    rho_p = 2 * abs(qx) - 1
    alpha, rho, _ = _lambda_inverse(ctx, TargetSide.SLIT_TOP, ctx.zero, rho_p)
    px, py = source_chart(ctx, ChartU(alpha, rho), Direction.INVERSE)
    return (px if qx > 0 else -px), py
