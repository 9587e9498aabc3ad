from fractions import Fraction

import pytest

from config.settings import Tolerances
from core.dynamics import (
    Arithmetic,
    Certificate,
    CertificateKind,
    CertificateStatus,
    LimitSide,
    boundedness_certificate,
    claim1_witness,
    convergence_index,
    displacement_scan,
    entry_index,
    excursion_profile,
    format_value,
    get_map,
    limit_estimate,
    orbit,
    orientation_probe,
    periodic_set_certificate,
    scan_rows,
    scan_rows_task,
    semiconjugacy_probe,
)
from core.exceptions import DomainError, OrbitEscapeError
from core.plane_map import h_cell, h_orbit_lifted
from core.square_map import NamedPoints, SquarePoint

F = Fraction


def test_registry(ctx):
    assert get_map("f").arithmetic is Arithmetic.EXACT
    assert get_map("h", ctx).arithmetic is Arithmetic.BIGFLOAT
    with pytest.raises(DomainError):
        get_map("nope")
    with pytest.raises(DomainError):
        get_map("xi")


def test_f_orbit():
    record = orbit(get_map("f"), (0, 0), (-1, 2))
    assert [s.n for s in record.steps] == [-1, 0, 1, 2]
    assert record.points == [(0, F(-1, 2)), (0, 0), (0, F(1, 2)), (0, F(3, 4))]
    assert record.at(1) == (0, F(1, 2))
    assert record.steps[0].abscissa == 0
    payload = record.to_dict()
    assert payload["map"] == "f"
    assert payload["points"][3] == {"n": 2, "x": "0", "y": "3/4"}


def test_phi_orbit_uses_index():
    record = orbit(get_map("phi", n=1), (F(-1, 2),), (0, 1))
    assert record.points[1] == (F(1, 2),)


def test_orbit_escape_reports_step():
    with pytest.raises(OrbitEscapeError) as excinfo:
        orbit(get_map("eta"), (0, F(1, 4)), (-1, 0))
    assert excinfo.value.step == -1


def test_orbit_rejects_empty_range():
    with pytest.raises(DomainError):
        orbit(get_map("f"), (0, 0), (2, 1))


def test_format_value(ctx):
    assert format_value(F(1, 2)) == "1/2"
    assert format_value(ctx.mpf(-5)) == "-5"
    assert format_value(ctx.mpf(1) / 4).startswith("0.25")


def test_entry_index():
    assert entry_index(F(1, 4)) == 1
    assert entry_index(F(1, 8)) == 2
    assert entry_index(F(3, 16)) == 2
    with pytest.raises(DomainError):
        entry_index(F(0))


def test_claim1_ladder():
    cert = claim1_witness(SquarePoint.of(0, F(1, 4)), 4)
    assert cert.passed
    assert cert.kind is CertificateKind.LADDER
    assert cert.evidence["mu"] == 1
    assert cert.evidence["heights_exact"]
    ladder = dict(cert.evidence["ladder"][:7])
    assert [ladder[i] for i in range(1, 7)] == ["0", "2/3", "-2/3", "8/9", "-8/9", "35/36"]


def test_claim1_rejects_seed_outside_band():
    with pytest.raises(DomainError):
        claim1_witness(SquarePoint.of(0, F(3, 4)), 3)


def test_f_omega_limit_is_top_corners():
    estimate = limit_estimate(get_map("f"), (0, F(1, 4)), LimitSide.OMEGA, Tolerances())
    assert estimate.converged
    assert estimate.matches([tuple(NamedPoints.v1), tuple(NamedPoints.v2)], 1e-3)


def test_displacement_of_shift_reflection():
    region = ((F(-1, 2), F(1, 2)), (F(-1, 2), F(1, 2)))
    cert = displacement_scan(get_map("example12"), region, 4)
    assert cert.passed
    assert cert.evidence["samples"] == 16
    assert F(cert.evidence["min_displacement"]) > 0


def test_f_reverses_orientation():
    samples = [(F(1, 8), F(1, 8)), (F(-3, 8), F(-1, 4)), (F(1, 4), F(-3, 4)), (F(1, 5), F(5, 6))]
    cert = orientation_probe(get_map("f"), samples)
    assert cert.passed
    assert cert.evidence["orientation"] == "reversing"
    assert cert.evidence["negative"] == len(samples)


def test_xi_orientation_is_reported(ctx):
    cert = orientation_probe(get_map("xi", ctx), [(0.3, 0.4), (0.6, -0.2), (-0.4, 0.1)], expected_sign=None)
    assert cert.passed
    assert cert.evidence["orientation"] == "preserving"


def test_h_reverses_orientation(ctx):
    handle = get_map("h", ctx)
    spare = iter([(0.45, -0.35), (-0.6, 1.3), (1.7, 0.9), (-2.2, -0.8)])
    samples = [(0.3, 0.4), (-1.2, 0.7), (2.1, -0.5)]
    cert = orientation_probe(
        handle, samples, cell_key=lambda p: h_cell(ctx, p), redraw=lambda: next(spare)
    )
    assert cert.passed
    assert cert.evidence["orientation"] == "reversing"
    assert cert.evidence["negative"] == len(samples)


def test_semiconjugacy_on_the_fixed_fiber(ctx):
    cert = semiconjugacy_probe(ctx, [SquarePoint.of(0, F(1, 4))], Tolerances())
    assert cert.passed
    assert cert.evidence["failures"] == 0
    assert [row["side"] for row in cert.evidence["rows"]] == ["omega", "alpha"]


@pytest.mark.parametrize("map_id", ["example12", "h"])
def test_split_displacement_scan_matches_whole(ctx, map_id):
    handle = get_map(map_id, ctx)
    region = ((F(-1, 2), F(1, 2)), (F(-1, 2), F(1, 3)))
    parts = [scan_rows(handle, region, 5, [0, 1]), scan_rows(handle, region, 5, [2, 3, 4])]
    assert sum(part.samples for part in parts) == 25
    assert displacement_scan(handle, region, 5, parts).evidence == displacement_scan(handle, region, 5).evidence
    precision = ctx.prec if map_id == "h" else None
    assert scan_rows_task(map_id, precision, region, 5, [2, 3, 4]) == parts[1]


def test_ray_orbit_is_bounded(ctx):
    cert = boundedness_certificate(ctx, (2, 0), 10, Tolerances())
    assert cert.passed
    assert cert.evidence["ray"]


def test_excursion_profile(ctx):
    profile = excursion_profile(ctx, (0, 0), (0, 2))
    assert profile.rows[0] == (0, None)
    assert profile.sup_index == 2
    assert profile.log10_sup == pytest.approx(0.382776, abs=1e-5)


def test_convergence_index():
    points = [(5.0, 5.0), (0.0, 0.0), (0.01, 0.0), (0.0, 0.0)]
    assert convergence_index(points, [0, 1, 2, 3], [(0, 0)], 0.1, 2) == 1
    assert convergence_index(points, [0, 1, 2, 3], [(0, 0)], 0.1, 3) is None
    assert convergence_index(points, [0, -1, -2, -3], [(0, 0)], 0.1, 2) == 1


def test_h_orbit_of_origin_settles_on_o2(ctx):
    targets = [tuple(float(v) for v in w) for w in NamedPoints.O2]
    for n_lo, n_hi in ((0, 700), (-700, 0)):
        points = h_orbit_lifted(ctx, (0, 0), n_lo, n_hi)
        found = convergence_index(
            [None if p is None else tuple(p) for p in points], range(n_lo, n_hi + 1), targets, 0.05, 200
        )
        assert found is not None
        assert 0 < found <= 500


def test_periodic_set(ctx):
    boundary = [NamedPoints.v1, NamedPoints.v2, NamedPoints.v7, NamedPoints.v8, SquarePoint.of(F(1, 3), -1)]
    cert = periodic_set_certificate(ctx, boundary, [2, -3])
    assert cert.passed
    assert cert.evidence["fixed_points"] == [["0", "1"], ["0", "-1"]]


def test_certificate_status():
    assert Certificate.decide("x", CertificateKind.IDENTITY, True, {}).status is CertificateStatus.PASS
    assert not Certificate.decide("x", CertificateKind.IDENTITY, False, {}).passed
    assert Certificate(name="x", kind=CertificateKind.CONJUGACY, status=CertificateStatus.INCONCLUSIVE).passed
