"""Pydantic models for API requests and responses."""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from core.dynamics import MAP_IDS

MapId = Literal[MAP_IDS]  # type: ignore[valid-type]
Suite = Literal["core", "xi", "plane", "all"]


class EvaluateRequest(BaseModel):
    """Request to evaluate one map at one point."""

    map: MapId = Field(..., description="Map id", examples=["f"])
    point: List[str] = Field(
        ..., description="Coordinates as integers, p/q fractions or decimals", examples=[["0", "-3/4"]]
    )
    direction: Literal["forward", "inverse"] = "forward"
    n: int = Field(1, ge=1, description="Index of phi_n when map is phi")
    approx: bool = Field(False, description="Round non-dyadic decimals for exact maps")
    precision: Optional[int] = Field(None, ge=16, description="BigFloat precision in bits")


class EvaluateResponse(BaseModel):
    """Image of the point with region and strip diagnostics."""

    map: str
    direction: str
    arithmetic: str
    point: List[str]
    image: List[str]
    diagnostics: Dict[str, Any] = Field(default_factory=dict)


class OrbitRequest(BaseModel):
    """Request for an orbit segment."""

    map: MapId = Field(..., examples=["h"])
    seed: List[str] = Field(..., examples=[["0", "0"]])
    steps: str = Field("0..100", description="'a..b' or a step count", examples=["-50..200"])
    n: int = Field(1, ge=1)
    approx: bool = False
    precision: Optional[int] = Field(None, ge=16)


class OrbitPoint(BaseModel):
    n: int
    x: Optional[str] = None
    y: Optional[str] = None


class OrbitResponse(BaseModel):
    """Serialized orbit record."""

    map: str
    seed: List[str]
    arithmetic: str
    points: List[OrbitPoint]
    metadata: Dict[str, Any]


class RunVerificationRequest(BaseModel):
    """Request to run a suite in-process."""

    suite: Suite = "core"
    sampler_seed: Optional[int] = None
    precision: Optional[int] = Field(None, ge=16)
    sizes: Optional[Dict[str, int]] = Field(None, description="Overrides of sample counts and grid sizes")
    only: Optional[List[str]] = Field(None, description="Restrict to these check names")


class CertificateModel(BaseModel):
    name: str
    kind: str
    status: str
    evidence: Dict[str, Any]
    elapsed_seconds: float


class VerificationReportResponse(BaseModel):
    """Report of a verification run."""

    suite: str
    passed: bool
    sampler_seed: int
    precision: int
    tolerances: Dict[str, Any]
    sizes: Dict[str, Any]
    started_at: str
    elapsed_seconds: float
    certificates: List[CertificateModel]


class StartVerificationRequest(BaseModel):
    """Request to run suites on the Temporal worker."""

    suites: List[Literal["core", "xi", "plane"]] = Field(default_factory=lambda: ["core", "xi", "plane"])
    sampler_seed: Optional[int] = None
    precision: Optional[int] = Field(None, ge=16)
    sizes: Optional[Dict[str, int]] = None


class StartVerificationResponse(BaseModel):
    """Response after starting a verification workflow."""

    workflow_id: str
    run_id: str
    message: str = "Verification started successfully"


class VerificationStatusResponse(BaseModel):
    """Status of a verification workflow."""

    workflow_id: str
    status: str
    start_time: Optional[str] = None
    close_time: Optional[str] = None
    progress: Optional[Dict[str, Any]] = None
    report: Optional[VerificationReportResponse] = None


class ErrorResponse(BaseModel):
    detail: str
