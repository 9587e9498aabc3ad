from fractions import Fraction

import pytest

from core.exceptions import DomainError
from core.strips import (
    StripZone,
    b_zone_midpoint,
    block_index,
    block_levels,
    block_of,
    f01_pow,
    shear_height,
    strip_bounds,
    strip_locate,
    strip_table,
)


@pytest.mark.parametrize("n, expected", [(1, 2), (2, 6), (3, 12)])
def test_block_index(n, expected):
    assert block_index(n) == expected


@pytest.mark.parametrize("i, expected", [(2, 1), (5, 1), (6, 2), (11, 2), (12, 3), (19, 3), (20, 4)])
def test_block_of(i, expected):
    assert block_of(i) == expected


def test_block_of_inverts_block_index():
    for n in range(1, 200):
        assert block_of(block_index(n)) == n
        assert block_of(block_index(n + 1) - 1) == n
        assert list(block_levels(n))[0] == block_index(n)


def test_index_errors():
    with pytest.raises(DomainError):
        block_index(0)
    with pytest.raises(DomainError):
        block_of(1)
    with pytest.raises(DomainError):
        shear_height(0)


def test_shear_heights_decrease():
    assert shear_height(1) == Fraction(1, 4)
    assert all(shear_height(n + 1) < shear_height(n) for n in range(1, 30))


@pytest.mark.parametrize(
    "s, i, expected",
    [
        (Fraction(0), 2, Fraction(3, 4)),
        (Fraction(1, 4), 2, Fraction(13, 16)),
        (Fraction(0), -2, Fraction(-3, 4)),
        (Fraction(-1), 5, Fraction(-1)),
        (Fraction(-3, 4), 3, Fraction(1, 2)),
    ],
)
def test_f01_pow(s, i, expected):
    assert f01_pow(s, i) == expected


def test_strip_locate_examples():
    d = strip_locate(Fraction(13, 16))
    assert (d.level, d.zone, d.n) == (2, StripZone.B_ZONE, 1)
    assert (d.lo, d.mid, d.hi) == (Fraction(3, 4), Fraction(13, 16), Fraction(7, 8))
    assert strip_locate(Fraction(5, 8)).zone is StripZone.D1_CORE
    d = strip_locate(Fraction(29, 32))
    assert (d.level, d.zone, d.n, d.mid) == (3, StripZone.B_ZONE, 1, Fraction(29, 32))
    assert strip_locate(Fraction(1)).zone is StripZone.TOP_LINE


def test_seams_belong_to_the_strip_above():
    assert strip_locate(Fraction(3, 4)).zone is StripZone.D1_CORE
    d = strip_locate(Fraction(7, 8))
    assert (d.level, d.zone, d.lo) == (3, StripZone.F_ZONE, Fraction(7, 8))
    assert strip_locate(Fraction(25, 32)).zone is StripZone.F_ZONE


def test_strip_locate_outside_r1():
    with pytest.raises(DomainError):
        strip_locate(Fraction(1, 4))


def test_strips_tile_the_upper_half():
    for i in range(2, 80):
        b, nxt = strip_bounds(i), strip_bounds(i + 1)
        assert b.lo < b.mid < b.hi == nxt.lo
        assert b.lo <= b_zone_midpoint(i) and b.mid < b_zone_midpoint(i) < b.hi
        assert strip_locate(b_zone_midpoint(i)).zone is StripZone.B_ZONE


def test_strip_table_rows():
    rows = strip_table(4)
    assert len(rows) == 7
    assert rows[0].zone is StripZone.D1_CORE
    assert [r.zone for r in rows[1:3]] == [StripZone.F_ZONE, StripZone.B_ZONE]
    assert rows[1].to_dict() == {"level": 2, "zone": "F_ZONE", "n": 1, "lo": "3/4", "mid": "13/16", "hi": "7/8"}
