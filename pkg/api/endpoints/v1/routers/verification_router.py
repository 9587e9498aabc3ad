"""Verification router."""

import logging

from fastapi import APIRouter, HTTPException, Path
from fastapi.concurrency import run_in_threadpool

from api.schemas.v1.generated import (
    RunVerificationRequest,
    StartVerificationRequest,
    StartVerificationResponse,
    VerificationReportResponse,
    VerificationStatusResponse,
)
from core.exceptions import DomainError
from services.verification_runs import verification_run_service
from services.verification_service import VerificationSizes, verification_service

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/verifications", tags=["Verifications"])


@router.post("/run", response_model=VerificationReportResponse)
async def run_verification(request: RunVerificationRequest):
    """Run a suite in this process and return the report."""
    try:
        sizes = VerificationSizes(**request.sizes) if request.sizes else None
        report = await run_in_threadpool(
            verification_service.run,
            request.suite,
            sizes,
            request.sampler_seed,
            request.precision,
            None,
            request.only,
        )
        return VerificationReportResponse(**report.model_dump(mode="json"))
    except DomainError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        logger.error(f"Error running verification: {e}", exc_info=True)
        raise HTTPException(status_code=500, detail=str(e))


@router.post("/start", response_model=StartVerificationResponse)
async def start_verification(request: StartVerificationRequest):
    """Start a verification workflow on the Temporal worker."""
    try:
        result = await verification_run_service.start(
            request.suites, request.sampler_seed, request.precision, request.sizes
        )
        return StartVerificationResponse(**result)
    except Exception as e:
        logger.error(f"Error starting verification workflow: {e}", exc_info=True)
        raise HTTPException(status_code=500, detail=str(e))


@router.get("/{workflow_id}", response_model=VerificationStatusResponse)
async def get_verification_status(
    workflow_id: str = Path(..., description="ID of the verification workflow"),
):
    """Status, progress and (once completed) the merged report."""
    try:
        result = await verification_run_service.status(workflow_id)
        return VerificationStatusResponse(**result)
    except Exception as e:
        logger.error(f"Error getting verification status: {e}", exc_info=True)
        raise HTTPException(status_code=500, detail=str(e))
