"""V1 API routes."""

from fastapi import APIRouter

from . import maps_router, orbits_router, verification_router

router = APIRouter(prefix="/api/v1")
router.include_router(maps_router.router)
router.include_router(orbits_router.router)
router.include_router(verification_router.router)
