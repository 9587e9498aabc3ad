"""Orbits, limit-set estimates and the certificates built on them.

Maps are looked up by id in a small registry. Exact maps iterate on Fractions,
BigFloat maps in the mpmath context the handle was created with. Every probe
returns a ``Certificate``; non-convergence is recorded in it, never raised.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Sequence

import mpmath
from pydantic import BaseModel, Field

from config.settings import Tolerances
from core import collapse_map, plane_map, square_map
from core.exceptions import DomainError, OrbitEscapeError
from core.numerics import Direction, bigfloat_context, to_bigfloat, to_rational
from core.square_map import NamedPoints, SquarePoint, shear_bound
from core.strips import block_index, f01_pow, shear_height

logger = logging.getLogger(__name__)

Point = tuple[Any, ...]


class Arithmetic(str, Enum):
    EXACT = "exact"
    BIGFLOAT = "bigfloat"


class LimitSide(str, Enum):
    OMEGA = "omega"
    ALPHA = "alpha"


class CertificateKind(str, Enum):
    BOUNDEDNESS = "boundedness"
    FIXEDPOINTFREE = "fixedpointfree"
    ORIENTATION = "orientation"
    CONJUGACY = "conjugacy"
    IDENTITY = "identity"
    LADDER = "ladder"
    LIMITSET = "limitset"
    CONTRACT = "contract"
    CONTINUITY = "continuity"
    PERIODIC = "periodic"
    EXCURSION = "excursion"


class CertificateStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


class Certificate(BaseModel):
    """Pass/fail evidence for one property."""

    name: str
    kind: CertificateKind
    status: CertificateStatus
    evidence: dict[str, Any] = Field(default_factory=dict)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status is not CertificateStatus.FAIL

    @classmethod
    def decide(cls, name: str, kind: CertificateKind, ok: bool, evidence: dict[str, Any], **extra: Any) -> Certificate:
        status = CertificateStatus.PASS if ok else CertificateStatus.FAIL
        return cls(name=name, kind=kind, status=status, evidence=evidence, **extra)


def format_value(value: Any) -> str:
    """Fractions as 'p/q', BigFloats with enough digits to read back exactly."""
    if isinstance(value, (Fraction, int)):
        return str(value)
    if value.context.isint(value):
        return str(int(value))
    digits = int(value.context.prec * math.log10(2)) + 2
    return mpmath.nstr(value, digits)


def format_point(point: Sequence[Any] | None) -> list[str] | None:
    if point is None:
        return None
    return [format_value(v) for v in point]


@dataclass(frozen=True)
class MapHandle:
    map_id: str
    arithmetic: Arithmetic
    dim: int
    forward: Callable[[Point], Point]
    inverse: Callable[[Point], Point]
    ctx: Any = None
    segment: Callable[[Point, int, int], list[Point | None]] | None = None

    def apply(self, point: Point, direction: Direction = Direction.FORWARD) -> Point:
        fn = self.forward if direction is Direction.FORWARD else self.inverse
        return tuple(fn(tuple(point)))

    def convert(self, point: Sequence[Any]) -> Point:
        """Coordinates in this map's arithmetic."""
        if self.arithmetic is Arithmetic.EXACT:
            return tuple(Fraction(v) for v in point)
        return tuple(to_bigfloat(self.ctx, v) if isinstance(v, (Fraction, int)) else self.ctx.mpf(v) for v in point)


def _square(fn: Callable[..., SquarePoint]) -> tuple[Callable, Callable]:
    return (
        lambda p: tuple(fn(SquarePoint(*p))),
        lambda p: tuple(fn(SquarePoint(*p), Direction.INVERSE)),
    )


MAP_IDS = ("f01", "f02", "phi", "Phi", "eta", "zeta", "f", "reflect", "xi", "g", "h", "example12")


def get_map(map_id: str, ctx: mpmath.MPContext | None = None, n: int = 1) -> MapHandle:
    """Registry of every map the engine can iterate or probe."""
    exact = Arithmetic.EXACT
    if map_id == "f01":
        return MapHandle(
            map_id, exact, 1,
            lambda p: (square_map.f01(p[0]),),
            lambda p: (square_map.f01(p[0], Direction.INVERSE),),
        )
    if map_id == "phi":
        return MapHandle(
            map_id, exact, 1,
            lambda p: (square_map.phi(n, p[0]),),
            lambda p: (square_map.phi(n, p[0], Direction.INVERSE),),
        )
    square_maps = {
        "f02": square_map.f02,
        "Phi": square_map.Phi,
        "eta": square_map.eta,
        "zeta": square_map.zeta,
        "f": square_map.f,
    }
    if map_id in square_maps:
        return MapHandle(map_id, exact, 2, *_square(square_maps[map_id]))
    if map_id == "reflect":
        mirror = lambda p: tuple(square_map.reflect(SquarePoint(*p)))  # noqa: E731
        return MapHandle(map_id, exact, 2, mirror, mirror)
    if map_id == "example12":
        return MapHandle(
            map_id, exact, 2,
            plane_map.example_shift_reflection,
            lambda p: plane_map.example_shift_reflection(p, Direction.INVERSE),
        )
    if ctx is None:
        raise DomainError(f"map {map_id!r} needs a BigFloat context")
    bigfloat = Arithmetic.BIGFLOAT
    if map_id == "xi":
        return MapHandle(
            map_id, bigfloat, 2,
            lambda p: collapse_map.xi(ctx, p),
            lambda p: collapse_map.xi_inv(ctx, p),
            ctx,
        )
    if map_id == "g":
        return MapHandle(
            map_id, bigfloat, 2,
            lambda p: plane_map.g_map(ctx, p),
            lambda p: plane_map.g_map(ctx, p, Direction.INVERSE),
            ctx,
            lambda seed, lo, hi: plane_map.g_orbit_lifted(ctx, seed, lo, hi),
        )
    if map_id == "h":
        return MapHandle(
            map_id, bigfloat, 2,
            lambda p: tuple(plane_map.h_map(ctx, p)),
            lambda p: tuple(plane_map.h_map(ctx, p, Direction.INVERSE)),
            ctx,
            lambda seed, lo, hi: [
                None if q is None else tuple(q) for q in plane_map.h_orbit_lifted(ctx, seed, lo, hi)
            ],
        )
    raise DomainError(f"unknown map id {map_id!r}, expected one of {', '.join(MAP_IDS)}")


@dataclass(frozen=True)
class OrbitStep:
    n: int
    point: Point | None

    @property
    def abscissa(self) -> Any:
        """The projection p: first coordinate of the point."""
        return None if self.point is None else self.point[0]


@dataclass
class OrbitRecord:
    map_id: str
    seed: Point
    arithmetic: Arithmetic
    steps: list[OrbitStep] = field(default_factory=list)

    @property
    def points(self) -> list[Point | None]:
        return [step.point for step in self.steps]

    def at(self, n: int) -> Point | None:
        return self.steps[n - self.steps[0].n].point

    def to_dict(self) -> dict[str, Any]:
        return {
            "map": self.map_id,
            "seed": format_point(self.seed),
            "arithmetic": self.arithmetic.value,
            "points": [
                {"n": s.n, **dict(zip(("x", "y"), format_point(s.point) or [None, None]))}
                for s in self.steps
            ],
        }


def orbit(handle: MapHandle, seed: Sequence[Any], n_range: tuple[int, int]) -> OrbitRecord:
    """Iterates of ``seed`` for n in the closed range, iterating outward from 0."""
    n_lo, n_hi = n_range
    if n_lo > n_hi:
        raise DomainError(f"empty orbit range [{n_lo}, {n_hi}]")
    seed = handle.convert(seed)
    if handle.segment is not None:
        points = handle.segment(seed, n_lo, n_hi)
        steps = [OrbitStep(n, p) for n, p in zip(range(n_lo, n_hi + 1), points)]
        return OrbitRecord(handle.map_id, seed, handle.arithmetic, steps)

    found: dict[int, Point] = {0: seed}
    for direction, stop, delta in (
        (Direction.FORWARD, max(n_hi, 0), 1),
        (Direction.INVERSE, min(n_lo, 0), -1),
    ):
        current, n = seed, 0
        while n != stop:
            try:
                current = handle.apply(current, direction)
            except DomainError as e:
                raise OrbitEscapeError(n + delta, f"{handle.map_id} orbit of {format_point(seed)}: {e}") from e
            n += delta
            found[n] = current
    steps = [OrbitStep(n, found[n]) for n in range(n_lo, n_hi + 1)]
    return OrbitRecord(handle.map_id, seed, handle.arithmetic, steps)


def distance(a: Sequence[Any], b: Sequence[Any]) -> float:
    return math.sqrt(sum(float(x - y) ** 2 for x, y in zip(a, b)))


@dataclass
class LimitEstimate:
    side: LimitSide
    points: list[Point]
    distances: list[float]
    horizon: int
    converged: bool
    parity: dict[str, Point | None]

    def matches(self, expected: Sequence[Sequence[Any]], tol: float) -> bool:
        """Every candidate near some expected point and vice versa."""
        if not self.points:
            return False
        near = lambda p, pool: any(distance(p, q) < tol for q in pool)  # noqa: E731
        return all(near(p, expected) for p in self.points) and all(near(q, self.points) for q in expected)

    def to_dict(self) -> dict[str, Any]:
        return {
            "side": self.side.value,
            "points": [format_point(p) for p in self.points],
            "distances": self.distances,
            "horizon": self.horizon,
            "converged": self.converged,
            "parity": {k: format_point(v) for k, v in self.parity.items()},
        }


def limit_estimate(
    handle: MapHandle,
    seed: Sequence[Any],
    side: LimitSide,
    tolerances: Tolerances,
    seed_label: str | None = None,
) -> LimitEstimate:
    """Tail clustering with a parity split.

    The tail is the last quarter of the iterates up to the horizon. Each parity
    class is represented by its final point; the class is converged when every
    tail point of that parity is within the limit-set tolerance of it.
    """
    horizon = tolerances.horizon
    n_range = (0, horizon) if side is LimitSide.OMEGA else (-horizon, 0)
    record = orbit(handle, seed, n_range)
    tail_start = horizon - horizon // 4
    parity: dict[str, Point | None] = {}
    spreads: list[float] = []
    converged = True
    for label, bit in (("even", 0), ("odd", 1)):
        tail = [s.point for s in record.steps if abs(s.n) >= tail_start and abs(s.n) % 2 == bit]
        tail = [p for p in tail if p is not None]
        if not tail:
            parity[label] = None
            converged = False
            continue
        final = tail[-1] if side is LimitSide.OMEGA else tail[0]
        spread = max(distance(p, final) for p in tail)
        parity[label] = final
        spreads.append(spread)
        converged = converged and spread < tolerances.limitset
    candidates: list[Point] = []
    for p in parity.values():
        if p is not None and not any(distance(p, q) < tolerances.limitset for q in candidates):
            candidates.append(p)
    logger.debug(
        f"Limit estimate {handle.map_id} {side.value} of {seed_label or format_point(record.seed)}: "
        f"{len(candidates)} points, converged={converged}"
    )
    return LimitEstimate(side, candidates, spreads, horizon, converged, parity)


def _timed(fn: Callable[..., Certificate]) -> Callable[..., Certificate]:
    def wrapper(*args: Any, **kwargs: Any) -> Certificate:
        started = time.perf_counter()
        cert = fn(*args, **kwargs)
        return cert.model_copy(update={"elapsed_seconds": round(time.perf_counter() - started, 4)})

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def entry_index(s0: Fraction) -> int:
    """μ = min{n : a_n <= s0}."""
    if s0 <= 0:
        raise DomainError(f"entry index needs s0 > 0, got {s0}")
    n = 1
    while shear_height(n) > s0:
        n += 1
    return n


@_timed
def claim1_witness(seed: SquarePoint, m_max: int) -> Certificate:
    """Exact ladder of the η-orbit of a seed in J x (0, 1/2].

    Checks that the even abscissae r_2i never decrease once the orbit enters
    its first shear block, that every block m > μ entered to the right of -b_m
    lifts r past b_m within 2m steps (together with the exact rung
    -b_m -> b_m), and that the heights are f01^i(s0).
    """
    r0, s0 = seed.r, seed.s
    if not (-1 < r0 < 1 and 0 < s0 <= Fraction(1, 2)):
        raise DomainError(f"ladder seeds need r0 in (-1, 1) and s0 in (0, 1/2], got {seed}")
    mu = entry_index(s0)
    steps = max(200, block_index(m_max) + 2 * m_max)
    xs = [seed]
    for _ in range(steps):
        xs.append(square_map.eta(xs[-1]))
    rs = [x.r for x in xs]

    start = block_index(mu)
    start += start % 2
    monotone = all(rs[i] <= rs[i + 2] for i in range(start, steps - 1, 2))
    heights_exact = all(x.s == f01_pow(s0, i) for i, x in enumerate(xs))

    rungs = []
    rungs_ok = True
    for m in range(mu + 1, m_max + 1):
        k, b = block_index(m), shear_bound(m)
        rung: dict[str, Any] = {"m": m, "k": k, "b_m": str(b), "r_k": str(rs[k])}
        beta = SquarePoint(-b, xs[k].s)
        for _ in range(2 * m):
            beta = square_map.eta(beta)
        rung["beta_end"] = str(beta.r)
        rung["beta_exact"] = beta.r == b
        if rs[k] > -b:
            rung["r_k_plus_2m"] = str(rs[k + 2 * m])
            rung["lifted"] = rs[k + 2 * m] > b
        else:
            rung["lifted"] = None
        rungs_ok = rungs_ok and rung["beta_exact"] and rung["lifted"] is not False
        rungs.append(rung)

    evidence = {
        "seed": format_point(seed),
        "mu": mu,
        "steps": steps,
        "monotone_from": start,
        "monotone": monotone,
        "heights_exact": heights_exact,
        "rungs": rungs,
        "ladder": [[i, str(r)] for i, r in enumerate(rs)],
    }
    return Certificate.decide(
        "claim1_witness", CertificateKind.LADDER, monotone and heights_exact and rungs_ok, evidence
    )


def _difference_norm(a: Point, b: Point) -> Any:
    return max(abs(x - y) for x, y in zip(a, b))


Region = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


@dataclass(frozen=True)
class ScanPart:
    """Smallest displacement over a band of grid columns, as an exact rational."""

    best: Fraction | None
    argmin: Point | None
    samples: int


def scan_rows(handle: MapHandle, region: Region, grid: int, rows: Sequence[int]) -> ScanPart:
    from core.sampling import cell_centred_rows

    best, argmin, samples = None, None, 0
    for point in cell_centred_rows(region, grid, rows):
        x = handle.convert(point)
        d = _difference_norm(handle.apply(x), x)
        samples += 1
        if best is None or d < best:
            best, argmin = d, point
    if best is not None and handle.arithmetic is Arithmetic.BIGFLOAT:
        best = to_rational(handle.ctx, best)
    return ScanPart(best, argmin, samples)


def scan_rows_task(map_id: str, precision: int | None, region: Region, grid: int, rows: Sequence[int]) -> ScanPart:
    """``scan_rows`` by map id, for worker processes."""
    ctx = bigfloat_context(precision) if precision else None
    return scan_rows(get_map(map_id, ctx), region, grid, rows)


@_timed
def displacement_scan(
    handle: MapHandle,
    region: Region,
    grid: int,
    parts: Sequence[ScanPart] | None = None,
) -> Certificate:
    """Minimum of |map(x) - x| (max norm) over a cell-centred grid.

    ``parts`` are bands of columns computed elsewhere (see ``scan_rows``), in
    grid order; the whole grid is scanned here when they are omitted.
    """
    if parts is None:
        parts = [scan_rows(handle, region, grid, range(grid))]
    best, argmin = None, None
    for part in parts:
        if part.best is not None and (best is None or part.best < best):
            best, argmin = part.best, part.argmin
    if best is None:
        raise DomainError(f"empty displacement grid for {handle.map_id}")
    shown = best if handle.arithmetic is Arithmetic.EXACT else to_bigfloat(handle.ctx, best)
    evidence = {
        "map": handle.map_id,
        "grid": grid,
        "samples": sum(part.samples for part in parts),
        "region": [[str(a), str(b)] for a, b in region],
        "min_displacement": format_value(shown),
        "argmin": format_point(argmin),
    }
    logger.info(f"Displacement scan {handle.map_id}: min {float(best):.3e} at {format_point(argmin)}")
    return Certificate.decide(f"displacement_{handle.map_id}", CertificateKind.FIXEDPOINTFREE, best > 0, evidence)


def signed_area(a: Point, b: Point, c: Point) -> Any:
    return ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])) / 2


@_timed
def orientation_probe(
    handle: MapHandle,
    samples: Sequence[Sequence[Any]],
    leg: Fraction = Fraction(1, 2**20),
    expected_sign: int | None = -1,
    cell_key: Callable[[Point], Any] | None = None,
    redraw: Callable[[], Sequence[Any]] | None = None,
    max_redraws: int = 1000,
) -> Certificate:
    """Sign of the signed area of map images of small right triangles.

    A triangle whose vertices fall in different smooth pieces (per
    ``cell_key``) or leave the domain is replaced by a fresh ``redraw()``.
    ``expected_sign=None`` only reports the orientation class.
    """
    signs = {-1: 0, 0: 0, 1: 0}
    redraws = 0
    smallest = None
    queue = list(samples)
    while queue:
        base = handle.convert(queue.pop())
        step = handle.convert((leg, leg))
        tri = [base, (base[0] + step[0], base[1]), (base[0], base[1] + step[1])]
        try:
            if cell_key is not None and len({cell_key(v) for v in tri}) > 1:
                raise DomainError("triangle straddles a seam")
            image = [handle.apply(v) for v in tri]
        except DomainError:
            if redraw is None or redraws >= max_redraws:
                raise
            redraws += 1
            queue.append(redraw())
            continue
        area = signed_area(*image)
        sign = (area > 0) - (area < 0)
        signs[sign] += 1
        if smallest is None or abs(area) < smallest:
            smallest = abs(area)
    if signs[1] and signs[-1]:
        orientation = "mixed"
    elif signs[-1]:
        orientation = "reversing"
    else:
        orientation = "preserving"
    evidence = {
        "map": handle.map_id,
        "leg": str(leg),
        "negative": signs[-1],
        "positive": signs[1],
        "zero": signs[0],
        "redraws": redraws,
        "min_abs_area": format_value(smallest) if smallest is not None else None,
        "orientation": orientation,
        "expected_sign": expected_sign,
    }
    total = sum(signs.values())
    ok = expected_sign is None or signs[expected_sign] == total
    return Certificate.decide(f"orientation_{handle.map_id}", CertificateKind.ORIENTATION, ok, evidence)


def _corner_sets() -> tuple[list[Point], list[Point]]:
    omega = [tuple(NamedPoints.v1), tuple(NamedPoints.v2)]
    alpha = [tuple(NamedPoints.v3), tuple(NamedPoints.v4)]
    return omega, alpha


@_timed
def boundedness_certificate(
    ctx: mpmath.MPContext,
    seed: Sequence[Any],
    window: int,
    tolerances: Tolerances,
) -> Certificate:
    """Evidence that the h-orbit of ``seed`` is bounded, read off the exact lift."""
    x = plane_map.PlanePoint.of(ctx, seed)
    if plane_map.is_h_periodic(x):
        orbit_points = [format_point(x), format_point(plane_map.h_map(ctx, x))]
        return Certificate.decide(
            "boundedness", CertificateKind.BOUNDEDNESS, True, {"seed": format_point(x), "ray": True, "orbit": orbit_points}
        )
    square = plane_map.tangent_chart(ctx, x, Direction.INVERSE)
    w = plane_map.lift(ctx, square)
    exact = plane_map.iterate_exact(w, -window, window)
    interior = all(p.is_interior for p in exact.values())

    f_handle = get_map("f")
    omega_set, alpha_set = _corner_sets()
    omega = limit_estimate(f_handle, tuple(w), LimitSide.OMEGA, tolerances)
    alpha = limit_estimate(f_handle, tuple(w), LimitSide.ALPHA, tolerances)
    limits_ok = (
        omega.converged
        and alpha.converged
        and omega.matches(omega_set, tolerances.limitset)
        and alpha.matches(alpha_set, tolerances.limitset)
    )

    margin = None
    sup_norm, sup_index, unreported = ctx.zero, 0, 0
    for n in sorted(exact):
        image = collapse_map.xi(ctx, exact[n])
        edge = min(1 - abs(image[0]), 1 - abs(image[1]))
        margin = edge if margin is None else min(margin, edge)
        if edge == 0:
            unreported += 1
            continue
        norm = ctx.hypot(*plane_map.tangent_chart(ctx, image))
        if norm > sup_norm:
            sup_norm, sup_index = norm, n
    evidence = {
        "seed": format_point(x),
        "lift": format_point(w),
        "window": window,
        "interior": interior,
        "omega": omega.to_dict(),
        "alpha": alpha.to_dict(),
        "margin": format_value(margin),
        "sup_norm": mpmath.nstr(sup_norm, 12),
        "log10_sup_norm": float(ctx.log10(sup_norm)) if sup_norm > 0 else None,
        "sup_index": sup_index,
        "unreported": unreported,
    }
    return Certificate.decide("boundedness", CertificateKind.BOUNDEDNESS, interior and limits_ok, evidence)


@_timed
def semiconjugacy_probe(
    ctx: mpmath.MPContext,
    seeds: Sequence[SquarePoint],
    tolerances: Tolerances,
) -> Certificate:
    """ψξ of the f limit estimates against the lifted h limit estimates."""
    f_handle = get_map("f")
    h_handle = get_map("h", ctx)
    rows = []
    failures = inconclusive = 0
    for seed in seeds:
        h_seed = plane_map.push_out(ctx, seed)
        if h_seed is None:
            raise DomainError(f"seed {seed} is not interior")
        for side in (LimitSide.OMEGA, LimitSide.ALPHA):
            f_est = limit_estimate(f_handle, tuple(seed), side, tolerances)
            h_est = limit_estimate(h_handle, tuple(h_seed), side, tolerances)
            pushed = [plane_map.push_out(ctx, SquarePoint(*p)) for p in f_est.points]
            row: dict[str, Any] = {
                "seed": format_point(seed),
                "side": side.value,
                "pushed": [format_point(p) for p in pushed],
                "h_points": [format_point(p) for p in h_est.points],
            }
            if not (f_est.converged and h_est.converged) or any(p is None for p in pushed):
                row["status"] = CertificateStatus.INCONCLUSIVE.value
                inconclusive += 1
            elif h_est.matches([tuple(p) for p in pushed], tolerances.limitset):
                row["status"] = CertificateStatus.PASS.value
            else:
                row["status"] = CertificateStatus.FAIL.value
                failures += 1
            rows.append(row)
    evidence = {"seeds": len(seeds), "rows": rows, "failures": failures, "inconclusive": inconclusive}
    if failures:
        status = CertificateStatus.FAIL
    elif inconclusive:
        status = CertificateStatus.INCONCLUSIVE
    else:
        status = CertificateStatus.PASS
    return Certificate(name="semiconjugacy", kind=CertificateKind.CONJUGACY, status=status, evidence=evidence)


@dataclass
class ExcursionProfile:
    seed: Point
    rows: list[tuple[int, float | None]]
    sup_norm: Any
    sup_index: int

    @property
    def log10_sup(self) -> float | None:
        return None if not self.sup_norm else float(mpmath.log10(self.sup_norm))


def excursion_profile(ctx: mpmath.MPContext, seed: Sequence[Any], n_range: tuple[int, int]) -> ExcursionProfile:
    """Per-step log10 of the norm of the lifted h-orbit.

    Rows hold None where the point is at the origin or beyond the plane chart.
    """
    n_lo, n_hi = n_range
    points = plane_map.h_orbit_lifted(ctx, seed, n_lo, n_hi)
    rows: list[tuple[int, float | None]] = []
    sup, sup_index = ctx.zero, 0
    for n, p in zip(range(n_lo, n_hi + 1), points):
        if p is None:
            rows.append((n, None))
            continue
        norm = ctx.hypot(p.x, p.y)
        rows.append((n, float(ctx.log10(norm)) if norm > 0 else None))
        if norm > sup:
            sup, sup_index = norm, n
    return ExcursionProfile(tuple(plane_map.PlanePoint.of(ctx, seed)), rows, sup, sup_index)


def convergence_index(
    points: Sequence[Point | None],
    n_values: Sequence[int],
    targets: Sequence[Sequence[Any]],
    radius: float,
    window: int,
) -> int | None:
    """Smallest |N| such that every point with |n| in [N, N + window] is within ``radius`` of a target."""
    by_n = dict(zip((abs(n) for n in n_values), points))
    last_bad = -1
    for n in sorted(by_n):
        p = by_n[n]
        if p is None or min(distance(p, t) for t in targets) >= radius:
            last_bad = n
    candidate = last_bad + 1
    if candidate + window > max(by_n):
        return None
    return candidate


@_timed
def periodic_set_certificate(ctx: mpmath.MPContext, boundary: Sequence[SquarePoint], rays: Sequence[Any]) -> Certificate:
    """Periodic structure on the boundary, the slits and the rays.

    f is Ψ f02 on ∂J^2 and fixes exactly v7 and v8 there; g is Ψ on P(g); h
    swaps (r, 0) and (-r, 0) on the rays.
    """
    boundary_rule = all(square_map.f(p) == square_map.reflect(square_map.f02(p)) for p in boundary)
    fixed = [format_point(p) for p in boundary if square_map.f(p) == p]
    fixed_ok = set(map(tuple, fixed)) <= {("0", "1"), ("0", "-1")}
    period_ok = all(
        square_map.f(square_map.f(p)) == p
        for p in boundary
        if square_map.is_f_periodic(p)
    )
    slit = [(Fraction(k, 8), Fraction(0)) for k in range(4, 9)] + [(Fraction(-k, 8), Fraction(0)) for k in range(4, 9)]
    g_ok = all(plane_map.g_map(ctx, q) == (-to_bigfloat(ctx, q[0]), to_bigfloat(ctx, q[1])) for q in slit)
    g_ok = g_ok and all(
        plane_map.g_map(ctx, p) == (-to_bigfloat(ctx, p.r), to_bigfloat(ctx, p.s)) for p in boundary
    )
    ray_ok = True
    for r in rays:
        x = plane_map.PlanePoint.of(ctx, (r, 0))
        once = plane_map.h_map(ctx, x)
        ray_ok = ray_ok and once == plane_map.PlanePoint(-x.x, x.y) and plane_map.h_map(ctx, once) == x
    evidence = {
        "boundary_samples": len(boundary),
        "boundary_rule": boundary_rule,
        "fixed_points": fixed,
        "edge_period_two": period_ok,
        "g_reflection": g_ok,
        "ray_samples": len(rays),
        "ray_period_two": ray_ok,
    }
    ok = boundary_rule and fixed_ok and period_ok and g_ok and ray_ok
    return Certificate.decide("periodic_set", CertificateKind.PERIODIC, ok, evidence)
