"""Service layer for verification runs executed on the Temporal worker."""

import logging
import uuid
from typing import Any, Dict, List, Optional

from temporalio.client import Client, WorkflowExecutionStatus

from client.temporal_client import get_temporal_client
from config.settings import settings

logger = logging.getLogger(__name__)

WORKFLOW_TYPE = "VerificationWorkflow"


class VerificationRunService:
    """Starts VerificationWorkflow executions and reads back their state."""

    def __init__(self):
        self._client: Optional[Client] = None

    async def get_client(self) -> Client:
        if self._client is None:
            self._client = await get_temporal_client()
        return self._client

    def _generate_workflow_id(self, suites: List[str]) -> str:
        return f"verify-{'-'.join(suites)}-{str(uuid.uuid4())[:8]}"

    async def start(
        self,
        suites: List[str],
        sampler_seed: Optional[int] = None,
        precision: Optional[int] = None,
        sizes: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, str]:
        client = await self.get_client()
        workflow_id = self._generate_workflow_id(suites)
        request = {
            "suites": suites,
            "sampler_seed": settings.sampler_seed if sampler_seed is None else sampler_seed,
            "precision": precision or settings.bigfloat_precision,
            "sizes": sizes,
        }
        logger.info(f"Starting {WORKFLOW_TYPE} with ID: {workflow_id}")
        logger.info(f"Suites: {suites}, task queue: {settings.temporal_task_queue}")

        handle = await client.start_workflow(
            WORKFLOW_TYPE,
            request,
            id=workflow_id,
            task_queue=settings.temporal_task_queue,
        )
        logger.info(f"Workflow started: {workflow_id}, run_id: {handle.result_run_id}")
        return {"workflow_id": handle.id, "run_id": handle.result_run_id}

    async def status(self, workflow_id: str) -> Dict[str, Any]:
        """Execution status, progress while running and the report once completed."""
        client = await self.get_client()
        handle = client.get_workflow_handle(workflow_id)
        description = await handle.describe()
        status = description.status
        logger.info(f"Workflow {workflow_id} status: {status.name if status else None}")

        result: Dict[str, Any] = {
            "workflow_id": workflow_id,
            "status": status.name if status else "UNKNOWN",
            "start_time": description.start_time.isoformat() if description.start_time else None,
            "close_time": description.close_time.isoformat() if description.close_time else None,
            "progress": None,
            "report": None,
        }
        if status == WorkflowExecutionStatus.RUNNING:
            result["progress"] = await handle.query("get_progress")
        elif status == WorkflowExecutionStatus.COMPLETED:
            result["report"] = await handle.result()
        return result


# Global service instance
verification_run_service = VerificationRunService()
