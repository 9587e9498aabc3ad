from fractions import Fraction

import pytest

from core.exceptions import DomainError
from core.numerics import Direction
from core.plane_map import (
    PlanePoint,
    example_shift_reflection,
    g_map,
    g_orbit_lifted,
    h_map,
    h_orbit_lifted,
    h_orbit_naive,
    is_h_periodic,
    on_g_periodic_set,
    push_out,
    slit_approach,
    tangent_chart,
)
from core.square_map import SquarePoint
from tests.conftest import close

TOL = 1e-60
INV = Direction.INVERSE


def test_tangent_chart(ctx):
    assert close(tangent_chart(ctx, (Fraction(1, 2), Fraction(-1, 2))), (1, -1), TOL)
    assert close(tangent_chart(ctx, (1, 1), INV), (0.5, 0.5), TOL)
    with pytest.raises(DomainError):
        tangent_chart(ctx, (1, 0))


def test_periodic_sets():
    assert on_g_periodic_set(1, 0.3)
    assert on_g_periodic_set(0.2, -1)
    assert on_g_periodic_set(0.75, 0)
    assert not on_g_periodic_set(0.25, 0)
    assert is_h_periodic((5, 0))
    assert not is_h_periodic((0.5, 0))


def test_g_examples(ctx):
    assert g_map(ctx, (0, 0)) == (0, ctx.mpf(1) / 2)
    assert g_map(ctx, (0, Fraction(1, 2)), INV) == (0, 0)
    assert g_map(ctx, (Fraction(3, 4), 0)) == (-ctx.mpf(3) / 4, 0)
    assert g_map(ctx, (0, 1)) == (0, 1)
    with pytest.raises(DomainError):
        g_map(ctx, (2, 0))


def test_h_examples(ctx):
    assert close(h_map(ctx, (0, 0)), (0, 1), TOL)
    assert h_map(ctx, (5, 0)) == PlanePoint(-5, 0)


def test_plane_point_indexing():
    p = PlanePoint(3, -4)
    assert (p[0], p[1], len(p)) == (3, -4, 2)


def test_push_out(ctx):
    assert close(push_out(ctx, SquarePoint.of(0, Fraction(1, 2))), (0, 1), TOL)
    assert close(push_out(ctx, SquarePoint.of(Fraction(1, 4), 0)), (ctx.tan(ctx.pi / 16), 0), TOL)
    assert push_out(ctx, SquarePoint.of(0, 1)) is None


@pytest.mark.parametrize("x", [10**30, 10**80, 10**100])
@pytest.mark.parametrize("direction", [Direction.FORWARD, INV])
def test_h_far_from_the_origin(ctx, x, direction):
    image = h_map(ctx, (x, Fraction(1, 2)), direction)
    assert all(ctx.isfinite(v) for v in image)
    assert max(abs(image.x), abs(image.y)) > 10**6


def test_h_orbit_lifted(ctx):
    orbit = h_orbit_lifted(ctx, (0, 0), 0, 2)
    assert close(orbit[0], (0, 0), TOL)
    assert close(orbit[1], (0, 1), TOL)
    assert close(orbit[2], (0, 1 + 2 ** 0.5), 1e-12)
    assert close(h_orbit_lifted(ctx, (0, 0), -1, -1)[0], (0, -1), TOL)
    with pytest.raises(DomainError):
        h_orbit_lifted(ctx, (0, 0), 3, 1)


def test_h_orbit_on_rays(ctx):
    orbit = h_orbit_lifted(ctx, (2, 0), -2, 2)
    assert [float(p.x) for p in orbit] == [2.0, -2.0, 2.0, -2.0, 2.0]


@pytest.mark.parametrize("seed", [(0, 0), (Fraction(1, 4), Fraction(-1, 2)), (Fraction(-3, 2), Fraction(1, 3))])
def test_naive_and_lifted_orbits_agree(ctx, seed):
    naive = h_orbit_naive(ctx, seed, 3)
    lifted = h_orbit_lifted(ctx, seed, 0, 3)
    for a, b in zip(naive, lifted):
        assert close(a, b, 1e-10)


def test_g_orbit_lifted_matches_g(ctx):
    orbit = g_orbit_lifted(ctx, (0, 0), 0, 2)
    assert close(orbit[1], g_map(ctx, (0, 0)), TOL)
    assert close(orbit[2], (0, 0.75), TOL)
    assert g_orbit_lifted(ctx, (1, Fraction(1, 3)), 0, 1)[1] == (-1, ctx.mpf(1) / 3)


@pytest.mark.parametrize(
    "point, image",
    [
        ((Fraction(0), Fraction(0)), (0, 1)),
        ((Fraction(2), Fraction(7)), (-2, 7)),
        ((Fraction(1, 2), Fraction(0)), (Fraction(-1, 2), Fraction(1, 2))),
    ],
)
def test_example_shift_reflection(point, image):
    assert example_shift_reflection(point) == image
    assert example_shift_reflection(image, INV) == point


def test_slit_approach_converges(ctx):
    for side in ("above", "below"):
        steps = slit_approach(ctx, (Fraction(3, 4), 0), side, [11, 21, 31])
        errors = [float(s.error) for s in steps]
        assert errors[-1] < errors[0]
        assert errors[-1] < 1e-3


def test_slit_approach_rejects_bad_input(ctx):
    with pytest.raises(DomainError):
        slit_approach(ctx, (Fraction(3, 4), 0), "left", [11])
    with pytest.raises(DomainError):
        slit_approach(ctx, (Fraction(3, 4), 0), "above", [12])
