"""Map evaluation router."""

import logging

from fastapi import APIRouter, HTTPException

from api.schemas.v1.generated import EvaluateRequest, EvaluateResponse
from core.exceptions import DomainError
from core.numerics import Direction
from services.map_service import map_service, parse_point

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/maps", tags=["Maps"])


@router.post("/evaluate", response_model=EvaluateResponse)
async def evaluate_map(request: EvaluateRequest):
    """Evaluate one map at one point."""
    try:
        handle = map_service.handle(request.map, request.precision, request.n)
        point = parse_point(",".join(request.point), handle, request.approx)
        result = map_service.evaluate(request.map, point, Direction(request.direction), request.precision, request.n)
        return EvaluateResponse(**result)
    except DomainError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        logger.error(f"Error evaluating {request.map}: {e}", exc_info=True)
        raise HTTPException(status_code=500, detail=str(e))
