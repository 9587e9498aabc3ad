import pytest
from temporalio.testing import ActivityEnvironment

from activities import merge_reports_activity, run_verification_suite_activity
from core.exceptions import DomainError
from services.verification_service import verification_service


@pytest.fixture
def env():
    return ActivityEnvironment()


async def test_suite_activity_returns_json_report(env, small_sizes, monkeypatch):
    request = {
        "suite": "core",
        "sizes": small_sizes.model_dump(),
        "sampler_seed": 5,
        "precision": 64,
    }
    calls = {}
    original = verification_service.run

    def quick(suite, sizes, sampler_seed, precision):
        calls["args"] = (suite, sizes, sampler_seed, precision)
        return original(suite, sizes, sampler_seed, precision, 1, ["strip_tiling"])

    monkeypatch.setattr(verification_service, "run", quick)
    report = await env.run(run_verification_suite_activity, request)
    assert calls["args"][0] == "core"
    assert calls["args"][1] == small_sizes
    assert report["passed"] is True
    assert report["sampler_seed"] == 5
    assert report["certificates"][0]["status"] == "pass"


async def test_merge_activity(env, small_sizes):
    core = verification_service.run("core", small_sizes, 1, 64, 1, ["strip_tiling"]).model_dump(mode="json")
    xi = dict(core, suite="xi")
    merged = await env.run(merge_reports_activity, [core, xi])
    assert merged["suite"] == "all"
    assert len(merged["certificates"]) == 2
    single = await env.run(merge_reports_activity, [core])
    assert single["suite"] == "core"
    with pytest.raises(DomainError):
        await env.run(merge_reports_activity, [])
