import json

import pytest

from cli.main import _fold_values, main
from config.settings import Tolerances
from core.dynamics import Certificate, CertificateKind
from services.exporters import _as_number, write_orbit_svg
from services.verification_service import VerificationReport, verification_service


def _report(ok, sizes):
    return VerificationReport(
        suite="core",
        passed=ok,
        sampler_seed=1,
        precision=64,
        tolerances=Tolerances(),
        sizes=sizes,
        started_at="2024-01-01T00:00:00+00:00",
        elapsed_seconds=0.0,
        certificates=[Certificate.decide("strip_tiling", CertificateKind.IDENTITY, ok, {})],
    )


def test_eval_exact(capsys):
    assert main(["eval", "--map", "f", "--point", "0,0"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "(0, 1/2)"
    assert "region: R0" in out


def test_eval_inverse(capsys):
    assert main(["eval", "--map", "f", "--point", "0,-1/2", "--direction", "inverse"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "(0, -3/4)"


def test_eval_bigfloat_ray(capsys):
    assert main(["--precision", "128", "eval", "--map", "h", "--point", "5,0"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "(-5, 0)"


def test_unknown_map_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["eval", "--map", "nope", "--point", "0,0"])
    assert excinfo.value.code == 2


def test_non_dyadic_needs_approx(capsys):
    assert main(["eval", "--map", "f", "--point", "0.1,0"]) == 2
    assert "dyadic" in capsys.readouterr().err
    assert main(["eval", "--map", "f", "--point", "0.1,0", "--approx"]) == 0


def test_point_outside_square(capsys):
    assert main(["eval", "--map", "f", "--point", "2,0"]) == 2


def test_value_flags_take_negative_values():
    argv = ["orbit", "--steps", "-50..200", "--seed", "0,0", "--out", "o.json"]
    assert _fold_values(argv) == ["orbit", "--steps=-50..200", "--seed=0,0", "--out", "o.json"]
    assert _fold_values(["eval", "--point"]) == ["eval", "--point"]


def test_eval_negative_point(capsys):
    assert main(["eval", "--map", "f", "--point", "-1/2,1"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "(1/2, 1)"


def test_orbit_with_negative_steps(tmp_path):
    out = tmp_path / "h.json"
    assert main(["orbit", "--map", "h", "--seed", "0,0", "--steps", "-50..200", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert [p["n"] for p in payload["points"]] == list(range(-50, 201))


def test_orbit_escape_exit_code():
    assert main(["orbit", "--map", "eta", "--seed", "0,1/4", "--steps", "-2..0"]) == 1


def test_orbit_json_and_check(tmp_path, capsys):
    out = tmp_path / "orbit.json"
    assert main(["orbit", "--map", "f", "--seed", "0,0", "--steps", "-4..6", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["map"] == "f"
    assert payload["points"][4] == {"n": 0, "x": "0", "y": "0"}
    assert main(["check-orbit", str(out)]) == 0

    payload["points"][5]["y"] = "1/3"
    out.write_text(json.dumps(payload))
    assert main(["check-orbit", str(out)]) == 1


def test_orbit_stdout(capsys):
    assert main(["orbit", "--map", "example12", "--seed", "0,0", "--steps", "3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [p["y"] for p in payload["points"]] == ["0", "1", "2", "3"]


def test_orbit_csv(tmp_path):
    out = tmp_path / "orbit.csv"
    assert main(["orbit", "--map", "f", "--seed", "0,0", "--steps", "3", "--format", "csv", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,x,y"
    assert lines[2] == "1,0,1/2"


def test_orbit_svg(tmp_path):
    out = tmp_path / "orbit.svg"
    args = ["--precision", "96", "orbit", "--map", "h", "--seed", "0,0", "--steps", "-3..3", "--format", "svg"]
    assert main(args + ["--out", str(out)]) == 0
    assert "<svg" in out.read_text()


def test_orbit_svg_clamps_far_points(tmp_path):
    payload = {
        "map": "h",
        "seed": ["0", "0"],
        "points": [{"n": 0, "x": "0", "y": "0"}, {"n": 1, "x": "1.5e400", "y": "-2e350"}],
    }
    out = write_orbit_svg(payload, tmp_path / "far.svg")
    assert "<svg" in out.read_text()
    assert _as_number("1.5e400") == 1e100
    assert _as_number("-2e350") == -1e100


def test_non_json_orbit_needs_out():
    assert main(["orbit", "--map", "f", "--seed", "0,0", "--format", "csv"]) == 2


def test_check_orbit_missing_file(tmp_path):
    assert main(["check-orbit", str(tmp_path / "missing.json")]) == 2


def test_geometry(tmp_path, capsys):
    assert main(["geometry", "--levels", "3"]) == 0
    geometry = json.loads(capsys.readouterr().out)
    assert geometry["strips"][0]["zone"] == "D1_CORE"
    svg = tmp_path / "geometry.svg"
    assert main(["geometry", "--levels", "3", "--out", str(svg)]) == 0
    assert "<svg" in svg.read_text()


def test_excursion(tmp_path, capsys):
    out = tmp_path / "excursion.csv"
    assert main(["--precision", "96", "excursion", "--seed", "0,0", "--steps", "0..2", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[:2] == ["n,log10_norm", "0,"]
    assert "at n = 2" in capsys.readouterr().out


@pytest.mark.parametrize("ok, code", [(True, 0), (False, 1)])
def test_verify_exit_code(monkeypatch, tmp_path, capsys, small_sizes, ok, code):
    monkeypatch.setattr(verification_service, "run", lambda *args, **kwargs: _report(ok, small_sizes))
    out = tmp_path / "report.json"
    assert main(["verify", "--suite", "core", "--out", str(out)]) == code
    assert json.loads(out.read_text())["passed"] is ok
    assert "strip_tiling" in capsys.readouterr().out
