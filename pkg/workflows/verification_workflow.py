"""Distributed verification workflow."""

import asyncio
from datetime import timedelta
from typing import Any, Dict, List

from temporalio import workflow
from temporalio.common import RetryPolicy

with workflow.unsafe.imports_passed_through():
    from activities.verification_activities import merge_reports_activity, run_verification_suite_activity

DEFAULT_SUITES = ["core", "xi", "plane"]


@workflow.defn(name="VerificationWorkflow")
class VerificationWorkflow:
    """
    Runs each requested suite as its own activity, in parallel, then merges
    the per-suite reports. The merge is the only synchronisation point.

    Verification is deterministic for a given sampler seed, so activities get
    a single attempt.
    """

    def __init__(self) -> None:
        self._completed: List[str] = []
        self._suites: List[str] = []

    @workflow.run
    async def run(self, request: Dict[str, Any]) -> Dict[str, Any]:
        self._suites = list(request.get("suites") or DEFAULT_SUITES)
        workflow.logger.info("=" * 60)
        workflow.logger.info(f"VERIFICATION: suites {', '.join(self._suites)}")
        workflow.logger.info("=" * 60)

        async def run_suite(suite: str) -> Dict[str, Any]:
            result = await workflow.execute_activity(
                run_verification_suite_activity,
                {
                    "suite": suite,
                    "sizes": request.get("sizes"),
                    "sampler_seed": request.get("sampler_seed"),
                    "precision": request.get("precision"),
                },
                start_to_close_timeout=timedelta(minutes=30),
                retry_policy=RetryPolicy(maximum_attempts=1),
            )
            self._completed.append(suite)
            workflow.logger.info(f"Suite {suite} completed, passed={result['passed']}")
            return result

        reports = await asyncio.gather(*(run_suite(s) for s in self._suites))

        merged = await workflow.execute_activity(
            merge_reports_activity,
            list(reports),
            start_to_close_timeout=timedelta(minutes=5),
            retry_policy=RetryPolicy(maximum_attempts=3, initial_interval=timedelta(seconds=1)),
        )

        workflow.logger.info("=" * 60)
        workflow.logger.info(f"VERIFICATION {'PASSED' if merged['passed'] else 'FAILED'}")
        workflow.logger.info("=" * 60)
        return merged

    @workflow.query
    def get_progress(self) -> Dict[str, Any]:
        """Suites finished so far."""
        return {"suites": self._suites, "completed": list(self._completed)}
