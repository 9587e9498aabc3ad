"""Orbit router."""

import logging

from fastapi import APIRouter, HTTPException

from api.schemas.v1.generated import OrbitRequest, OrbitResponse
from core.exceptions import DomainError
from services.map_service import map_service, parse_point, parse_range

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/orbits", tags=["Orbits"])


@router.post("", response_model=OrbitResponse)
async def compute_orbit(request: OrbitRequest):
    """Compute an orbit segment and return its serialized record."""
    try:
        handle = map_service.handle(request.map, request.precision, request.n)
        seed = parse_point(",".join(request.seed), handle, request.approx)
        n_range = parse_range(request.steps)
        record = map_service.orbit(request.map, seed, n_range, request.precision, request.n)
        return OrbitResponse(**map_service.orbit_payload(record, request.precision, request.n))
    except DomainError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except Exception as e:
        logger.error(f"Error computing {request.map} orbit: {e}", exc_info=True)
        raise HTTPException(status_code=500, detail=str(e))
