"""Seeded samplers producing exact dyadic rationals."""

from fractions import Fraction
from typing import Sequence

import numpy as np

from core.square_map import SquarePoint

DEFAULT_BITS = 24


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for a (seed, stream...) key."""
    return np.random.default_rng([seed, *stream])


def random_rational(rng: np.random.Generator, lo: Fraction, hi: Fraction, bits: int = DEFAULT_BITS) -> Fraction:
    """Uniform dyadic rational in the open interval (lo, hi)."""
    steps = 2**bits
    k = int(rng.integers(1, steps))
    return lo + (hi - lo) * Fraction(k, steps)


def random_square_points(
    rng: np.random.Generator, count: int, margin: Fraction = Fraction(0), bits: int = DEFAULT_BITS
) -> list[SquarePoint]:
    lo, hi = -1 + margin, 1 - margin
    return [
        SquarePoint(random_rational(rng, lo, hi, bits), random_rational(rng, lo, hi, bits))
        for _ in range(count)
    ]


def random_boundary_points(rng: np.random.Generator, count: int, bits: int = DEFAULT_BITS) -> list[SquarePoint]:
    """Points spread over the four edges of J^2, corners included."""
    corners = [SquarePoint.of(x, y) for x in (-1, 1) for y in (-1, 1)]
    points = corners[: min(count, 4)]
    one = Fraction(1)
    while len(points) < count:
        t = random_rational(rng, -one, one, bits)
        edge = int(rng.integers(0, 4))
        if edge == 0:
            points.append(SquarePoint(t, one))
        elif edge == 1:
            points.append(SquarePoint(t, -one))
        elif edge == 2:
            points.append(SquarePoint(one, t))
        else:
            points.append(SquarePoint(-one, t))
    return points


def cell_centred_grid(
    region: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]], size: int
) -> list[tuple[Fraction, Fraction]]:
    """size x size cell centres of a rectangle, exact."""
    return cell_centred_rows(region, size, range(size))


def cell_centred_rows(
    region: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]], size: int, rows: Sequence[int]
) -> list[tuple[Fraction, Fraction]]:
    """The cell centres of the grid columns i in ``rows``, in grid order."""
    (x0, x1), (y0, y1) = region
    dx, dy = (x1 - x0) / size, (y1 - y0) / size
    half = Fraction(1, 2)
    return [(x0 + (i + half) * dx, y0 + (j + half) * dy) for i in rows for j in range(size)]
