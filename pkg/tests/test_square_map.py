from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.exceptions import DomainError
from core.numerics import Direction
from core.square_map import (
    Axis,
    NamedPoints,
    Phi,
    RegionTag,
    SquarePoint,
    eta,
    f,
    f01,
    f_cell,
    f_period,
    is_f_periodic,
    phi,
    phi_function,
    reflect,
    region_of,
    shear_bound,
    zeta,
)

P = SquarePoint.of
INV = Direction.INVERSE

dyadic = st.builds(lambda k: Fraction(k, 2**12), st.integers(-(2**12), 2**12))
square_points = st.builds(SquarePoint, dyadic, dyadic)


def test_point_indexing():
    p = P(Fraction(1, 3), Fraction(-1, 5))
    assert (p[0], p[1]) == tuple(p)
    assert len(p) == 2


def test_point_outside_square_rejected():
    with pytest.raises(DomainError):
        P(Fraction(3, 2), 0)


@pytest.mark.parametrize(
    "point, image",
    [
        (P(0, 0), P(0, Fraction(1, 2))),
        (P(0, Fraction(-3, 4)), P(0, Fraction(-1, 2))),
        (P(Fraction(3, 5), 1), P(Fraction(-3, 5), 1)),
    ],
)
def test_f_examples(point, image):
    assert f(point) == image
    assert f(image, INV) == point


def test_f01_fixes_ends():
    assert f01(Fraction(-1)) == -1
    assert f01(Fraction(1)) == 1
    assert f01(Fraction(0)) == Fraction(1, 2)


def test_shear_bound():
    assert shear_bound(1) == Fraction(1, 2)
    assert shear_bound(3) == Fraction(7, 8)
    with pytest.raises(DomainError):
        shear_bound(0)


def test_phi_one():
    assert len(phi_function(1).breakpoints) == 3
    assert phi(1, Fraction(-1, 2)) == Fraction(1, 2)
    assert phi(1, Fraction(0)) == Fraction(2, 3)
    assert phi(1, Fraction(2, 3), INV) == 0


@pytest.mark.parametrize("n", [2, 3])
def test_phi_breakpoints(n):
    assert len(phi_function(n).breakpoints) == 4
    b = shear_bound(n)
    assert phi(n, -b) == -b + 2 * b / n


def test_Phi_on_shear_and_core():
    assert Phi(P(0, Fraction(13, 16))) == P(Fraction(2, 3), Fraction(13, 16))
    assert Phi(P(Fraction(1, 4), Fraction(29, 32))) == P(Fraction(1, 4), Fraction(29, 32))
    with pytest.raises(DomainError):
        Phi(P(0, Fraction(1, 4)))


def test_eta_and_zeta():
    assert eta(P(Fraction(1, 4), Fraction(1, 4))) == P(Fraction(-1, 4), Fraction(5, 8))
    assert zeta(P(0, Fraction(-1, 4))) == P(0, Fraction(-5, 8))
    assert zeta(P(1, -1)) == P(-1, -1)
    with pytest.raises(DomainError):
        eta(P(0, Fraction(-1, 4)))


def test_reflections():
    assert reflect(P(Fraction(1, 3), Fraction(1, 5))) == P(Fraction(-1, 3), Fraction(1, 5))
    assert reflect(P(Fraction(1, 3), Fraction(1, 5)), Axis.VERTICAL) == P(Fraction(1, 3), Fraction(-1, 5))


@pytest.mark.parametrize(
    "s, forward, inverse",
    [
        (Fraction(1, 4), RegionTag.R0, RegionTag.D0),
        (Fraction(-1, 4), RegionTag.D_MINUS_1, RegionTag.R_MINUS_1),
        (Fraction(-3, 4), RegionTag.R_MINUS_2, RegionTag.R_MINUS_1),
        (Fraction(3, 4), RegionTag.R0, RegionTag.R1),
    ],
)
def test_region_of(s, forward, inverse):
    assert region_of(P(0, s)) is forward
    assert region_of(P(0, s), INV) is inverse


def test_cell_starts_with_region():
    assert f_cell(P(0, Fraction(-1, 4))) == (RegionTag.D_MINUS_1.value,)
    assert f_cell(P(0, Fraction(1, 4)))[0] == RegionTag.R0.value


@given(square_points)
@settings(max_examples=200, deadline=None)
def test_f_inverse_roundtrip(p):
    assert f(f(p), INV) == p
    assert f(f(p, INV)) == p


@given(st.builds(lambda k: Fraction(k, 2**10), st.integers(-(2**10), 2**10)))
@settings(max_examples=100, deadline=None)
def test_f_preserves_top_and_bottom_edges(r):
    assert f(P(r, 1)) == P(-r, 1)
    assert f(P(r, -1)) == P(-r, -1)


def test_periods_on_boundary():
    assert f_period(NamedPoints.v7) == 1
    assert f_period(NamedPoints.v8) == 1
    assert f_period(NamedPoints.v1) == 2
    assert f_period(P(Fraction(1, 3), -1)) == 2
    assert f_period(P(0, 0)) is None
    assert not is_f_periodic(NamedPoints.v5)
    assert f(f(NamedPoints.v1)) == NamedPoints.v1
