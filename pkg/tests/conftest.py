"""Shared fixtures."""

import pytest

from core.numerics import bigfloat_context
from services.verification_service import VerificationSizes


@pytest.fixture
def ctx():
    return bigfloat_context(256)


@pytest.fixture
def small_sizes():
    return VerificationSizes(
        random_points=50,
        boundary_points=40,
        limit_seeds=2,
        square_grid=8,
        plane_grid=6,
        triangles=20,
        semiconjugacy_seeds=2,
    )


def close(a, b, tol=1e-30):
    return all(abs(x - y) <= tol for x, y in zip(a, b))
