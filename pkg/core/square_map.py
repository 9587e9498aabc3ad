"""The square homeomorphism f: J^2 -> J^2 and its constituents.

Everything here is exact: points carry ``Fraction`` coordinates and every map is
a composition of increasing PL functions, so round trips and seam agreements
are checked with equality.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator

from core.exceptions import DomainError
from core.numerics import Direction, PLFunction, pl_eval
from core.strips import F01, HALF, StripZone, block_of, strip_locate

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class SquarePoint:
    r: Fraction
    s: Fraction

    def __post_init__(self) -> None:
        r, s = Fraction(self.r), Fraction(self.s)
        if not (-1 <= r <= 1 and -1 <= s <= 1):
            raise DomainError(f"({r}, {s}) is outside J^2")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    @classmethod
    def of(cls, r: Any, s: Any) -> SquarePoint:
        return cls(Fraction(r), Fraction(s))

    def __iter__(self) -> Iterator[Fraction]:
        yield self.r
        yield self.s

    def __getitem__(self, index: int) -> Fraction:
        return (self.r, self.s)[index]

    def __len__(self) -> int:
        return 2

    def __str__(self) -> str:
        return f"({self.r}, {self.s})"

    @property
    def is_interior(self) -> bool:
        return abs(self.r) < 1 and abs(self.s) < 1


class NamedPoints:
    """Marked points of J^2 and the 2-periodic orbit O2 of the plane."""

    v1 = SquarePoint.of(-1, 1)
    v2 = SquarePoint.of(1, 1)
    v3 = SquarePoint.of(-1, -1)
    v4 = SquarePoint.of(1, -1)
    v5 = SquarePoint.of(-1, 0)
    v6 = SquarePoint.of(1, 0)
    v7 = SquarePoint.of(0, 1)
    v8 = SquarePoint.of(0, -1)
    v9 = SquarePoint.of(Fraction(-1, 2), 0)
    v0 = SquarePoint.of(Fraction(1, 2), 0)
    w1 = (Fraction(-1), Fraction(0))
    w2 = (Fraction(1), Fraction(0))
    O2 = (w1, w2)


class Axis(str, Enum):
    LEVEL = "level"
    VERTICAL = "vertical"


class RegionTag(str, Enum):
    # case split of f
    R0 = "R0"
    D_MINUS_1 = "D_MINUS_1"
    R_MINUS_2 = "R_MINUS_2"
    # case split of f^-1
    R1 = "R1"
    D0 = "D0"
    R_MINUS_1 = "R_MINUS_1"


def f01(s: Fraction, direction: Direction = Direction.FORWARD) -> Fraction:
    return pl_eval(F01, Fraction(s), direction)


def f02(p: SquarePoint, direction: Direction = Direction.FORWARD) -> SquarePoint:
    """The standard vertical shift (r, s) -> (r, f01(s))."""
    return SquarePoint(p.r, f01(p.s, direction))


def reflect(p: SquarePoint, axis: Axis = Axis.LEVEL) -> SquarePoint:
    if axis is Axis.LEVEL:
        return SquarePoint(-p.r, p.s)
    return SquarePoint(p.r, -p.s)


def shear_bound(n: int) -> Fraction:
    """b_n = 1 - 2^-n: b_1 = 1/2, increasing to 1."""
    if n < 1:
        raise DomainError(f"b_n is defined for n >= 1, got {n}")
    return 1 - Fraction(1, 2**n)


@lru_cache(maxsize=None)
def phi_function(n: int) -> PLFunction:
    """φ_n: shifts [-b_n, b_n - 2b_n/n] right by exactly 2b_n/n."""
    b = shear_bound(n)
    step = 2 * b / n
    return PLFunction.from_points(
        [
            (Fraction(-1), Fraction(-1)),
            (-b, -b + step),
            (b - step, b),
            (Fraction(1), Fraction(1)),
        ]
    )


def phi(n: int, r: Fraction, direction: Direction = Direction.FORWARD) -> Fraction:
    return pl_eval(phi_function(n), Fraction(r), direction)


def line_rule(i: int) -> PLFunction:
    """Horizontal rule of Φ on the shear zone of strip D_i."""
    if i < 1:
        raise DomainError(f"line_rule needs i >= 1, got {i}")
    if i == 1 or i % 2 == 1:
        return PLFunction.identity()
    return phi_function(block_of(i))


@lru_cache(maxsize=8192)
def phi_slice(s: Fraction) -> PLFunction:
    """Φ restricted to the horizontal line J_s, s in [1/2, 1]."""
    strip = strip_locate(s)
    if strip.zone in (StripZone.D1_CORE, StripZone.TOP_LINE):
        return PLFunction.identity()
    if strip.zone is StripZone.B_ZONE:
        return line_rule(strip.level)
    t = (s - strip.lo) / (strip.mid - strip.lo)
    return line_rule(strip.level - 1).blend(line_rule(strip.level), t)


def Phi(p: SquarePoint, direction: Direction = Direction.FORWARD) -> SquarePoint:  # noqa: N802
    if not HALF <= p.s <= 1:
        raise DomainError(f"Φ is defined on R1 only, got s = {p.s}")
    return SquarePoint(pl_eval(phi_slice(p.s), p.r, direction), p.s)


def eta(p: SquarePoint, direction: Direction = Direction.FORWARD) -> SquarePoint:
    """η = Φ Ψ f02 on R0 -> R1."""
    if direction is Direction.FORWARD:
        if not 0 <= p.s <= 1:
            raise DomainError(f"η is defined on R0, got s = {p.s}")
        return Phi(reflect(f02(p)))
    if not HALF <= p.s <= 1:
        raise DomainError(f"η^-1 is defined on R1, got s = {p.s}")
    return f02(reflect(Phi(p, Direction.INVERSE)), Direction.INVERSE)


def zeta(p: SquarePoint, direction: Direction = Direction.FORWARD) -> SquarePoint:
    """ζ = Ψ_v η Ψ_v on R_-1 -> R_-2."""
    if direction is Direction.FORWARD and not -1 <= p.s <= 0:
        raise DomainError(f"ζ is defined on R_-1, got s = {p.s}")
    if direction is Direction.INVERSE and not -1 <= p.s <= -HALF:
        raise DomainError(f"ζ^-1 is defined on R_-2, got s = {p.s}")
    return reflect(eta(reflect(p, Axis.VERTICAL), direction), Axis.VERTICAL)


def region_of(p: SquarePoint, direction: Direction = Direction.FORWARD) -> RegionTag:
    if direction is Direction.FORWARD:
        if p.s >= 0:
            return RegionTag.R0
        if p.s >= -HALF:
            return RegionTag.D_MINUS_1
        return RegionTag.R_MINUS_2
    if p.s >= HALF:
        return RegionTag.R1
    if p.s >= 0:
        return RegionTag.D0
    return RegionTag.R_MINUS_1


def f(p: SquarePoint, direction: Direction = Direction.FORWARD) -> SquarePoint:
    region = region_of(p, direction)
    if region is RegionTag.R0:
        return eta(p)
    if region is RegionTag.D_MINUS_1:
        return reflect(f02(p))
    if region is RegionTag.R_MINUS_2:
        return zeta(p, Direction.INVERSE)
    if region is RegionTag.R1:
        return eta(p, Direction.INVERSE)
    if region is RegionTag.D0:
        return f02(reflect(p), Direction.INVERSE)
    return zeta(p)


def _segment(rule_a: PLFunction, rule_b: PLFunction, x: Fraction) -> int:
    cuts = sorted(set(rule_a.xs) | set(rule_b.xs))
    return min(bisect_right(cuts, x) - 1, len(cuts) - 2)


def _slice_cell(height: Fraction, x: Fraction, inverse: bool) -> tuple:
    strip = strip_locate(height)
    if strip.zone in (StripZone.D1_CORE, StripZone.TOP_LINE):
        return (strip.zone.value,)
    if strip.zone is StripZone.B_ZONE:
        rule = line_rule(strip.level)
        index = bisect_right(rule.ys if inverse else rule.xs, x)
        return (strip.level, strip.zone.value, index)
    if inverse:
        x = phi_slice(height).invert(x)
    return (
        strip.level,
        strip.zone.value,
        _segment(line_rule(strip.level - 1), line_rule(strip.level), x),
    )


def f_cell(p: SquarePoint, direction: Direction = Direction.FORWARD) -> tuple:
    """Key of the affine or bilinear piece of f^±1 that contains p."""
    region = region_of(p, direction)
    if region is RegionTag.R0:
        return (region.value,) + _slice_cell(f01(p.s), -p.r, inverse=False)
    if region is RegionTag.R_MINUS_2:
        return (region.value,) + _slice_cell(-p.s, p.r, inverse=True)
    if region is RegionTag.R1:
        return (region.value,) + _slice_cell(p.s, p.r, inverse=True)
    if region is RegionTag.R_MINUS_1:
        return (region.value,) + _slice_cell(f01(-p.s), -p.r, inverse=False)
    return (region.value,)


def f_period(p: SquarePoint) -> int | None:
    """1 at v7 and v8, 2 elsewhere on the top and bottom edges, else None."""
    if abs(p.s) != 1:
        return None
    return 1 if p.r == 0 else 2


def is_f_periodic(p: SquarePoint) -> bool:
    return f_period(p) is not None
