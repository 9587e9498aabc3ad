"""Scalar kinds and the numeric utilities shared by every map.

Rationals are ``fractions.Fraction``: the square core is piecewise affine with
dyadic-friendly data, so all of its claims are checked with equality.
BigFloats are ``mpmath`` numbers living in an explicit ``MPContext``; a
context is created once per precision and never mutated afterwards.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence

import mpmath

from core.exceptions import DegenerateDirectionError, DomainError

logger = logging.getLogger(__name__)

Rational = Fraction
BigFloat = Any  # mpmath mpf bound to one MPContext

ONE = Fraction(1)
MINUS_ONE = Fraction(-1)


class Direction(str, Enum):
    FORWARD = "forward"
    INVERSE = "inverse"


def as_rational(value: int | str | Fraction) -> Fraction:
    """Exact conversion of ints, fractions and ``p/q`` strings."""
    if isinstance(value, float):
        raise DomainError("floats are not accepted by exact maps, use Fraction or 'p/q'")
    return Fraction(value)


@lru_cache(maxsize=None)
def bigfloat_context(precision: int) -> mpmath.MPContext:
    """The shared context for ``precision`` bits.

    Contexts are cached and must be treated as read-only.
    """
    if precision < 16:
        raise DomainError(f"precision must be at least 16 bits, got {precision}")
    ctx = mpmath.MPContext()
    ctx.prec = precision
    logger.debug(f"Created BigFloat context with {precision} bits")
    return ctx


def to_bigfloat(ctx: mpmath.MPContext, value: Fraction | int | Any) -> BigFloat:
    """Correctly rounded conversion into ``ctx``."""
    if isinstance(value, Fraction):
        return ctx.fdiv(value.numerator, value.denominator)
    return ctx.mpf(value)


def to_rational(ctx: mpmath.MPContext, value: BigFloat) -> Fraction:
    """Exact value of a finite BigFloat as a dyadic Fraction."""
    if isinstance(value, Fraction):
        return value
    x = ctx.mpf(value)
    if not ctx.isfinite(x):
        raise DomainError(f"cannot convert non-finite value {x} to a rational")
    if x == 0:
        return Fraction(0)
    mantissa, exponent = ctx.frexp(x)
    numerator = int(ctx.ldexp(mantissa, ctx.prec))
    return Fraction(numerator) * Fraction(2) ** (exponent - ctx.prec)


def angle_normalize(ctx: mpmath.MPContext, y: Sequence[Any], center: Sequence[Any]) -> BigFloat:
    """Polar angle of ``y - center`` in [0, 2π)."""
    dx = to_bigfloat(ctx, y[0]) - to_bigfloat(ctx, center[0])
    dy = to_bigfloat(ctx, y[1]) - to_bigfloat(ctx, center[1])
    if dx == 0 and dy == 0:
        raise DegenerateDirectionError(f"direction from {tuple(center)} to itself is undefined")
    angle = ctx.atan2(dy, dx)
    if angle < 0:
        angle += 2 * ctx.pi
    return angle


@dataclass(frozen=True, slots=True)
class PLFunction:
    """Continuous, strictly increasing piecewise-affine self-map of J = [-1, 1].

    ``breakpoints`` are (x, y) pairs with x running from -1 to 1.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        pts = self.breakpoints
        if len(pts) < 2:
            raise DomainError("a PL function needs at least two breakpoints")
        if pts[0][0] != MINUS_ONE or pts[-1][0] != ONE:
            raise DomainError("breakpoints must start at x = -1 and end at x = 1")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise DomainError(f"breakpoint abscissae not strictly increasing at {x0}, {x1}")
            if not y0 < y1:
                raise DomainError(f"PL function not strictly increasing on [{x0}, {x1}]")

    @classmethod
    def from_points(cls, points: Iterable[tuple[Any, Any]]) -> PLFunction:
        """Build from raw points, merging repeated breakpoints."""
        merged: list[tuple[Fraction, Fraction]] = []
        for x, y in points:
            pt = (Fraction(x), Fraction(y))
            if merged and merged[-1] == pt:
                continue
            merged.append(pt)
        return cls(tuple(merged))

    @classmethod
    def identity(cls) -> PLFunction:
        return _IDENTITY

    @property
    def xs(self) -> list[Fraction]:
        return [x for x, _ in self.breakpoints]

    @property
    def ys(self) -> list[Fraction]:
        return [y for _, y in self.breakpoints]

    @property
    def is_identity(self) -> bool:
        return all(x == y for x, y in self.breakpoints)

    def segment_index(self, x: Fraction) -> int:
        """Index of the affine piece used for ``x`` (right-continuous)."""
        i = bisect_right(self.xs, x) - 1
        return min(max(i, 0), len(self.breakpoints) - 2)

    def evaluate(self, x: Fraction) -> Fraction:
        if not MINUS_ONE <= x <= ONE:
            raise DomainError(f"{x} is outside J = [-1, 1]")
        pts = self.breakpoints
        i = self.segment_index(x)
        (x0, y0), (x1, y1) = pts[i], pts[i + 1]
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0)

    def invert(self, y: Fraction) -> Fraction:
        pts = self.breakpoints
        if not pts[0][1] <= y <= pts[-1][1]:
            raise DomainError(f"{y} is outside the range of the PL function")
        i = bisect_right(self.ys, y) - 1
        i = min(max(i, 0), len(pts) - 2)
        (x0, y0), (x1, y1) = pts[i], pts[i + 1]
        return x0 + (y - y0) * (x1 - x0) / (y1 - y0)

    def compose(self, inner: PLFunction) -> PLFunction:
        """``self ∘ inner`` with breakpoints merged exactly."""
        cuts = set(inner.xs)
        lo, hi = inner.breakpoints[0][1], inner.breakpoints[-1][1]
        for x in self.xs:
            if lo <= x <= hi:
                cuts.add(inner.invert(x))
        return PLFunction.from_points((x, self.evaluate(inner.evaluate(x))) for x in sorted(cuts))

    def blend(self, other: PLFunction, t: Fraction) -> PLFunction:
        """Pointwise convex combination ``(1 - t)·self + t·other``."""
        if not 0 <= t <= 1:
            raise DomainError(f"blend weight {t} outside [0, 1]")
        if t == 0:
            return self
        if t == 1:
            return other
        cuts = sorted(set(self.xs) | set(other.xs))
        return PLFunction.from_points(
            (x, (1 - t) * self.evaluate(x) + t * other.evaluate(x)) for x in cuts
        )


_IDENTITY = PLFunction(((MINUS_ONE, MINUS_ONE), (ONE, ONE)))


def pl_eval(fn: PLFunction, x: Fraction, direction: Direction = Direction.FORWARD) -> Fraction:
    """Exact evaluation (forward) or inversion (inverse) of a PL function."""
    if not MINUS_ONE <= x <= ONE:
        raise DomainError(f"{x} is outside J = [-1, 1]")
    if direction is Direction.FORWARD:
        return fn.evaluate(x)
    return fn.invert(x)
