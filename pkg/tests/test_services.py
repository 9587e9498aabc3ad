from fractions import Fraction

import pytest

from core.dynamics import Arithmetic, Certificate, CertificateKind
from core.exceptions import DomainError
from core.numerics import Direction
from services.map_service import map_service, parse_point, parse_range, parse_scalar
from services.verification_service import (
    SUITES,
    ChunkRunner,
    VerificationService,
    rising_task,
    verification_service,
)

QUICK_CHECKS = ["strip_tiling", "pl_roundtrip", "boundary_identity", "rising_bijective", "example_shift_reflection"]


def test_parse_scalar_exact():
    handle = map_service.handle("f")
    assert parse_scalar("-3/4", handle) == Fraction(-3, 4)
    assert parse_scalar("0.375", handle) == Fraction(3, 8)
    with pytest.raises(DomainError):
        parse_scalar("0.1", handle)
    approx = parse_scalar("0.1", handle, approx=True)
    assert approx.denominator & (approx.denominator - 1) == 0
    assert abs(approx - Fraction(1, 10)) < Fraction(1, 10**20)
    with pytest.raises(DomainError):
        parse_scalar("abc", handle)


def test_parse_point_and_range():
    handle = map_service.handle("h", 128)
    assert handle.arithmetic is Arithmetic.BIGFLOAT
    assert parse_point("1/2, 0.25", handle) == (0.5, 0.25)
    with pytest.raises(DomainError):
        parse_point("1,2,3", handle)
    assert parse_range("-5..7") == (-5, 7)
    assert parse_range("10") == (0, 10)
    assert parse_range("-10") == (-10, 0)
    with pytest.raises(DomainError):
        parse_range("3..1")
    with pytest.raises(DomainError):
        parse_range("a..b")


def test_evaluate_with_diagnostics():
    result = map_service.evaluate("f", (Fraction(0), Fraction(-3, 4)))
    assert result["image"] == ["0", "-1/2"]
    assert result["arithmetic"] == "exact"
    assert result["diagnostics"]["region"] == "R_MINUS_2"
    inverse = map_service.evaluate("f", (Fraction(0), Fraction(-1, 2)), Direction.INVERSE)
    assert inverse["image"] == ["0", "-3/4"]


def test_orbit_payload_roundtrip():
    record = map_service.orbit("f", (Fraction(0), Fraction(0)), (-3, 3))
    payload = map_service.orbit_payload(record)
    assert payload["metadata"]["phi_index"] == 1
    assert map_service.check_orbit(payload)["ok"]
    payload["points"][2]["y"] = "1/3"
    result = map_service.check_orbit(payload)
    assert not result["ok"]
    assert result["mismatches"] == [-1]


def test_geometry_payload():
    geometry = map_service.geometry(4, 64)
    assert [row["level"] for row in geometry["strips"]] == [1, 2, 2, 3, 3, 4, 4]
    assert {pin["name"] for pin in geometry["source_pins"]} >= {"slit_top_split", "slit_bottom_split"}
    assert len(geometry["target_corners"]) == 4


def test_suites_are_listed():
    assert verification_service.checks("core") == SUITES["core"]
    assert len(verification_service.checks("all")) == sum(len(v) for v in SUITES.values())
    with pytest.raises(DomainError):
        verification_service.checks("nope")


def test_quick_core_checks_pass(small_sizes):
    report = verification_service.run("core", sizes=small_sizes, sampler_seed=3, precision=128, workers=2, only=QUICK_CHECKS)
    assert [c.name for c in report.certificates] == QUICK_CHECKS
    assert report.passed, report.failed
    assert report.sampler_seed == 3
    assert report.model_dump(mode="json")["certificates"][0]["status"] == "pass"


def test_runs_are_reproducible(small_sizes):
    kwargs = dict(sizes=small_sizes, sampler_seed=11, precision=128, workers=1, only=["boundary_identity"])
    first = verification_service.run("core", **kwargs).certificates[0].evidence
    second = verification_service.run("core", **kwargs).certificates[0].evidence
    assert first == second


def test_raising_check_becomes_failure(monkeypatch, small_sizes):
    service = VerificationService()

    def broken(context):
        raise RuntimeError("boom")

    monkeypatch.setattr(service, "check_strip_tiling", broken)
    report = service.run("core", sizes=small_sizes, only=["strip_tiling"], workers=1)
    assert not report.passed
    assert report.failed == ["strip_tiling"]
    assert "boom" in report.certificates[0].evidence["error"]


def test_merge(small_sizes):
    report = verification_service.run("core", sizes=small_sizes, precision=64, workers=1, only=["strip_tiling"])
    failing = report.model_copy(
        update={
            "suite": "xi",
            "passed": False,
            "certificates": [Certificate.decide("x", CertificateKind.IDENTITY, False, {})],
        }
    )
    merged = VerificationService.merge("all", [report, failing])
    assert merged.suite == "all"
    assert not merged.passed
    assert [c.name for c in merged.certificates] == ["strip_tiling", "x"]
    with pytest.raises(DomainError):
        VerificationService.merge("all", [])


def test_chunks_keep_order():
    items = list(range(100))
    chunks = ChunkRunner(4, min_chunk=10).split(items)
    assert len(chunks) == 8
    assert [i for chunk in chunks for i in chunk] == items
    assert ChunkRunner(1, min_chunk=10).split(items) == [items]
    assert ChunkRunner(4).split(items) == [items]
    assert len(ChunkRunner(4, min_chunk=100).split(items, weight=3)) == 3


def test_worker_processes_match_inline():
    points = [(Fraction(i, 8), Fraction(j, 8)) for i in range(-7, 8) for j in range(-7, 8)]
    inline = rising_task(points)
    runner = ChunkRunner(2, min_chunk=50)
    try:
        chunks = runner.split(points)
        assert len(chunks) == 4
        parts = runner.map(rising_task, chunks)
    finally:
        runner.shutdown()
    assert tuple(map(sum, zip(*parts))) == inline


def test_h_displacement_check_passes(small_sizes):
    report = verification_service.run("plane", sizes=small_sizes, workers=1, only=["h_displacement"])
    assert report.passed, report.certificates[0].evidence
    assert report.certificates[0].evidence["random_samples"] == small_sizes.boundary_points


@pytest.mark.parametrize("suite", ["xi", "plane"])
def test_suite_passes_at_small_sizes(small_sizes, suite):
    report = verification_service.run(suite, sizes=small_sizes, precision=256, workers=1)
    assert [c.name for c in report.certificates] == SUITES[suite]
    assert report.passed, report.failed


def test_excursion_reports_the_origin(small_sizes):
    report = verification_service.run("plane", sizes=small_sizes, workers=1, only=["excursion"])
    evidence = report.certificates[0].evidence
    assert report.passed
    assert float(evidence["origin_sup_norm"]) == pytest.approx(1 + 2**0.5, rel=1e-6)
