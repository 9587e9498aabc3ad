"""Block decomposition of the upper half R1 = J x [1/2, 1].

R1 is tiled by the images D_i of D_0 = J x [0, 1/2] under the vertical shift.
Every D_i with i >= 2 is split into a blend zone F (bottom) and a shear zone B
(top) at the height f01^i(a_n(i)).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt

from core.exceptions import DomainError
from core.numerics import PLFunction, pl_eval, Direction

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
THREE_QUARTERS = Fraction(3, 4)

# Height ranges of the named regions of J^2.
R0 = (Fraction(0), Fraction(1))
R1 = (HALF, Fraction(1))
R_MINUS_1 = (Fraction(-1), Fraction(0))
R_MINUS_2 = (Fraction(-1), -HALF)
D0 = (Fraction(0), HALF)
D_MINUS_1 = (-HALF, Fraction(0))

F01 = PLFunction.from_points(
    [
        (Fraction(-1), Fraction(-1)),
        (-HALF, Fraction(0)),
        (Fraction(0), HALF),
        (Fraction(1), Fraction(1)),
    ]
)


class StripZone(str, Enum):
    D1_CORE = "D1_CORE"
    F_ZONE = "F_ZONE"
    B_ZONE = "B_ZONE"
    TOP_LINE = "TOP_LINE"


@dataclass(frozen=True, slots=True)
class StripDescriptor:
    """Where a height of R1 sits in the decomposition.

    F_ZONE is [lo, mid) and B_ZONE is [mid, hi). ``n`` is the shear index n(i)
    and is None for the core strip and the top line.
    """

    level: int | None
    zone: StripZone
    n: int | None
    lo: Fraction
    mid: Fraction
    hi: Fraction

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "zone": self.zone.value,
            "n": self.n,
            "lo": str(self.lo),
            "mid": str(self.mid),
            "hi": str(self.hi),
        }


def shear_height(n: int) -> Fraction:
    """a_n = 2^(-n-1): a_1 = 1/4, decreasing to 0."""
    if n < 1:
        raise DomainError(f"a_n is defined for n >= 1, got {n}")
    return Fraction(1, 2 ** (n + 1))


def block_index(n: int) -> int:
    """k(n) = n(n+1), the first level of block n."""
    if n < 1:
        raise DomainError(f"block index needs n >= 1, got {n}")
    return n * (n + 1)


def block_of(i: int) -> int:
    """n(i) = max{m : k(m) <= i}."""
    if i < 2:
        raise DomainError(f"block_of needs i >= 2, got {i}")
    n = (isqrt(4 * i + 1) - 1) // 2
    # isqrt keeps this exact, the loops only guard the boundary cases
    while block_index(n + 1) <= i:
        n += 1
    while block_index(n) > i:
        n -= 1
    return n


def block_levels(n: int) -> range:
    """ℕ(n) = {k(n), ..., k(n+1) - 1}."""
    return range(block_index(n), block_index(n + 1))


def f01_pow(s: Fraction, i: int) -> Fraction:
    """i-fold composition of f01 (negative i iterates the inverse)."""
    s = Fraction(s)
    if not -1 <= s <= 1:
        raise DomainError(f"{s} is outside J = [-1, 1]")
    if i >= 0:
        while i > 0 and s < 0:
            s = F01.evaluate(s)
            i -= 1
        if i == 0:
            return s
        return 1 - (1 - s) / 2**i
    for _ in range(-i):
        s = pl_eval(F01, s, Direction.INVERSE)
    return s


def _level_of(s: Fraction) -> int:
    """The level i >= 2 with 1 - 2^-i <= s < 1 - 2^-(i+1), for s in (3/4, 1)."""
    d = 1 - s
    p, q = d.numerator, d.denominator
    i = q.bit_length() - p.bit_length()
    if (p << i) > q:
        i -= 1
    return i


def strip_bounds(i: int) -> StripDescriptor:
    """Bounds of the whole strip D_i (zone reported as F_ZONE, its bottom part)."""
    if i == 1:
        return StripDescriptor(1, StripZone.D1_CORE, None, HALF, HALF, THREE_QUARTERS)
    if i < 1:
        raise DomainError(f"strip levels start at 1, got {i}")
    n = block_of(i)
    scale = Fraction(1, 2**i)
    lo = 1 - scale
    hi = 1 - scale / 2
    mid = 1 - (1 - shear_height(n)) * scale
    return StripDescriptor(i, StripZone.F_ZONE, n, lo, mid, hi)


def strip_locate(s: Fraction) -> StripDescriptor:
    """Classify a height of R1.

    Seams belong to the strip above them; s = 3/4 stays in the core strip.
    """
    s = Fraction(s)
    if not HALF <= s <= 1:
        raise DomainError(f"strip_locate needs 1/2 <= s <= 1, got {s}")
    if s == 1:
        one = Fraction(1)
        return StripDescriptor(None, StripZone.TOP_LINE, None, one, one, one)
    if s <= THREE_QUARTERS:
        return strip_bounds(1)
    bounds = strip_bounds(_level_of(s))
    zone = StripZone.B_ZONE if s >= bounds.mid else StripZone.F_ZONE
    return StripDescriptor(bounds.level, zone, bounds.n, bounds.lo, bounds.mid, bounds.hi)


def strip_table(max_level: int) -> list[StripDescriptor]:
    """Core strip followed by the F and B zones of levels 2..max_level."""
    rows = [strip_bounds(1)]
    for i in range(2, max_level + 1):
        b = strip_bounds(i)
        rows.append(b)
        rows.append(StripDescriptor(i, StripZone.B_ZONE, b.n, b.lo, b.mid, b.hi))
    return rows


def b_zone_midpoint(i: int) -> Fraction:
    """A height well inside the shear zone of level i."""
    b = strip_bounds(i)
    return (b.mid + b.hi) / 2
