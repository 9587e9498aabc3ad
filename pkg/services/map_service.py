"""Service layer for single evaluations, orbits, excursions and geometry."""

import logging
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from config.settings import settings
from core import collapse_map, dynamics, square_map
from core.dynamics import Arithmetic, MapHandle, OrbitRecord, format_point, format_value, get_map
from core.exceptions import DomainError
from core.numerics import Direction, bigfloat_context, to_bigfloat, to_rational
from core.strips import strip_locate, strip_table

logger = logging.getLogger(__name__)

_FRACTION = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_scalar(text: str, handle: MapHandle, approx: bool = False) -> Any:
    """Read one coordinate for ``handle``.

    Exact maps take integers and p/q fractions as typed. A decimal is accepted
    only when its value is dyadic (so no binary rounding is hidden) unless
    ``approx`` is set, in which case it is rounded to the nearest BigFloat.
    """
    text = text.strip()
    if _FRACTION.match(text):
        value = Fraction(text)
        if handle.arithmetic is Arithmetic.EXACT:
            return value
        return to_bigfloat(handle.ctx, value)
    if handle.arithmetic is Arithmetic.BIGFLOAT:
        try:
            return handle.ctx.mpf(text)
        except (ValueError, TypeError) as e:
            raise DomainError(f"malformed coordinate {text!r}") from e
    try:
        value = Fraction(text)
    except ValueError as e:
        raise DomainError(f"malformed coordinate {text!r}") from e
    denominator = value.denominator
    if denominator & (denominator - 1) == 0:
        return value
    if not approx:
        raise DomainError(f"{text!r} is not a dyadic rational, pass --approx to round it")
    ctx = bigfloat_context(settings.bigfloat_precision)
    return to_rational(ctx, ctx.mpf(text))


def parse_point(text: str, handle: MapHandle, approx: bool = False) -> Tuple[Any, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != handle.dim:
        raise DomainError(f"map {handle.map_id} takes {handle.dim} coordinate(s), got {text!r}")
    return tuple(parse_scalar(p, handle, approx) for p in parts)


def parse_range(text: str) -> Tuple[int, int]:
    """'a..b' or a single step count 'n' (meaning 0..n)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            n_range = int(lo), int(hi)
        else:
            n = int(text)
            n_range = (0, n) if n >= 0 else (n, 0)
    except ValueError as e:
        raise DomainError(f"malformed step range {text!r}") from e
    if n_range[0] > n_range[1]:
        raise DomainError(f"empty range {text!r}")
    return n_range


class MapService:
    """Evaluations and orbits for the CLI and the HTTP API."""

    def handle(self, map_id: str, precision: Optional[int] = None, n: int = 1) -> MapHandle:
        ctx = bigfloat_context(precision or settings.bigfloat_precision)
        return get_map(map_id, ctx, n)

    def diagnostics(self, handle: MapHandle, point: Sequence[Any], direction: Direction) -> Dict[str, Any]:
        """Region and strip of a square-map argument."""
        if handle.arithmetic is not Arithmetic.EXACT or handle.dim != 2 or handle.map_id == "example12":
            return {}
        p = square_map.SquarePoint(*point)
        info: Dict[str, Any] = {"region": square_map.region_of(p, direction).value}
        height = p.s
        if handle.map_id in ("f", "eta") and direction is Direction.FORWARD and p.s >= 0:
            height = square_map.f01(p.s)
        if Fraction(1, 2) <= height <= 1:
            info["strip"] = strip_locate(height).to_dict()
        if handle.map_id == "f":
            info["cell"] = [str(k) for k in square_map.f_cell(p, direction)]
        return info

    def evaluate(
        self,
        map_id: str,
        point: Sequence[Any],
        direction: Direction = Direction.FORWARD,
        precision: Optional[int] = None,
        n: int = 1,
    ) -> Dict[str, Any]:
        handle = self.handle(map_id, precision, n)
        point = handle.convert(point)
        image = handle.apply(point, direction)
        logger.debug(f"{map_id} {direction.value} {format_point(point)} -> {format_point(image)}")
        return {
            "map": map_id,
            "direction": direction.value,
            "arithmetic": handle.arithmetic.value,
            "point": format_point(point),
            "image": format_point(image),
            "diagnostics": self.diagnostics(handle, point, direction),
        }

    def orbit(
        self,
        map_id: str,
        seed: Sequence[Any],
        n_range: Tuple[int, int],
        precision: Optional[int] = None,
        n: int = 1,
    ) -> OrbitRecord:
        handle = self.handle(map_id, precision, n)
        logger.info(f"Computing {map_id} orbit of {format_point(handle.convert(seed))} over {n_range}")
        return dynamics.orbit(handle, seed, n_range)

    def orbit_payload(self, record: OrbitRecord, precision: Optional[int] = None, n: int = 1) -> Dict[str, Any]:
        payload = record.to_dict()
        payload["metadata"] = {
            "precision": precision or settings.bigfloat_precision,
            "tolerances": settings.tolerances.model_dump(),
            "sampler_seed": settings.sampler_seed,
            "phi_index": n,
        }
        return payload

    def check_orbit(self, payload: Dict[str, Any]) -> Dict[str, Any]:
        """Recompute a serialized orbit and compare it point by point."""
        meta = payload.get("metadata", {})
        precision = meta.get("precision", settings.bigfloat_precision)
        n = meta.get("phi_index", 1)
        handle = self.handle(payload["map"], precision, n)
        seed = tuple(parse_scalar(v, handle, approx=True) for v in payload["seed"])
        steps = [p["n"] for p in payload["points"]]
        record = dynamics.orbit(handle, seed, (min(steps), max(steps)))
        recomputed = {s["n"]: s for s in record.to_dict()["points"]}
        mismatches = [p["n"] for p in payload["points"] if recomputed.get(p["n"]) != p]
        logger.info(f"Re-verified {len(steps)} points of the {payload['map']} orbit, {len(mismatches)} mismatches")
        return {"map": payload["map"], "points": len(steps), "mismatches": mismatches, "ok": not mismatches}

    def excursion(
        self, seed: Sequence[Any], n_range: Tuple[int, int], precision: Optional[int] = None
    ) -> dynamics.ExcursionProfile:
        ctx = bigfloat_context(precision or settings.bigfloat_precision)
        return dynamics.excursion_profile(ctx, seed, n_range)

    def geometry(self, max_level: int = 12, precision: Optional[int] = None) -> Dict[str, Any]:
        """Strip table, chart pins and slits as plain data."""
        ctx = bigfloat_context(precision or settings.bigfloat_precision)
        pi = ctx.pi
        source_pins = {
            "slit_bottom_split": pi / 8,
            "corner_v8": pi / 4,
            "corner_v7": 3 * pi / 4,
            "slit_top_split": 7 * pi / 8,
        }
        pins = [
            {
                "name": name,
                "alpha": format_value(alpha),
                "exit": format_point(collapse_map.exit_point(ctx, collapse_map.Center.V6, alpha)),
            }
            for name, alpha in source_pins.items()
        ]
        corners = [
            {
                "name": name,
                "theta": format_value(theta),
                "exit": format_point(collapse_map.exit_point(ctx, collapse_map.Center.V0, theta)),
            }
            for name, theta in (
                ("v2", ctx.atan(2)),
                ("v7", pi - ctx.atan(2)),
                ("v8", pi + ctx.atan(2)),
                ("v4", 2 * pi - ctx.atan(2)),
            )
        ]
        return {
            "strips": [row.to_dict() for row in strip_table(max_level)],
            "source_pins": pins,
            "target_corners": corners,
            "slits": [["-1", "0", "-1/2", "0"], ["1/2", "0", "1", "0"]],
        }


# Global service instance
map_service = MapService()
