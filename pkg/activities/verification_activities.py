"""Verification activities."""

import asyncio
import logging
from typing import Any, Dict, List

from temporalio import activity

from services.verification_service import VerificationReport, VerificationSizes, verification_service

logger = logging.getLogger(__name__)


@activity.defn(name="run_verification_suite_activity")
async def run_verification_suite_activity(request: Dict[str, Any]) -> Dict[str, Any]:
    """Run one suite in a worker thread and return its report as JSON data."""
    suite = request["suite"]
    logger.info(f"Running verification suite {suite} for request: {request}")
    sizes = VerificationSizes(**request["sizes"]) if request.get("sizes") else None
    report = await asyncio.to_thread(
        verification_service.run,
        suite,
        sizes,
        request.get("sampler_seed"),
        request.get("precision"),
    )
    logger.info(f"Suite {suite} finished, passed={report.passed}")
    return report.model_dump(mode="json")


@activity.defn(name="merge_reports_activity")
async def merge_reports_activity(reports: List[Dict[str, Any]]) -> Dict[str, Any]:
    """Merge per-suite reports into the combined report."""
    parsed = [VerificationReport.model_validate(r) for r in reports]
    suite = parsed[0].suite if len(parsed) == 1 else "all"
    merged = verification_service.merge(suite, parsed)
    logger.info(f"Merged {len(parsed)} reports, passed={merged.passed}, failed={merged.failed}")
    return merged.model_dump(mode="json")
