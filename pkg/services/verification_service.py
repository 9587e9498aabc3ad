"""Service layer for the verification battery.

Each check is a method returning a ``Certificate``. Checks of a suite run in a
thread pool, each with its own generator derived from the sampler seed and the
check's position, so reports are reproducible whatever the scheduling. The
heavy loops (displacement grids, the large sample sets) are drawn in the
check, cut into chunks and evaluated in worker processes; chunk results are
merged in order. The merge into a ``VerificationReport`` is the only
synchronisation point between checks.
"""

import logging
import multiprocessing
import threading
import time
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
from pydantic import BaseModel, Field

from config.settings import Tolerances, settings
from core import collapse_map, dynamics, plane_map, square_map
from core.dynamics import Certificate, CertificateKind, LimitSide, format_point, format_value
from core.exceptions import DomainError
from core.numerics import Direction, bigfloat_context, pl_eval, to_bigfloat, to_rational
from core.sampling import make_rng, random_boundary_points, random_rational, random_square_points
from core.square_map import NamedPoints, SquarePoint
from core.strips import block_index, block_of, strip_bounds, strip_locate

logger = logging.getLogger(__name__)

SUITES: Dict[str, List[str]] = {
    "core": [
        "strip_tiling",
        "pl_roundtrip",
        "boundary_identity",
        "rising_bijective",
        "seam_agreement",
        "claim1_ladder",
        "f_limit_sets",
        "f_displacement",
        "f_orientation",
        "periodic_set",
        "example_shift_reflection",
    ],
    "xi": [
        "chart_roundtrip",
        "cone_bijective",
        "xi_fixed_fiber_and_halving",
        "xi_edge_collapse",
        "xi_symmetry",
        "xi_injective_roundtrip",
        "xi_orientation",
    ],
    "plane": [
        "g_seam_continuity",
        "g_limit_sets",
        "h_rays",
        "h_convergence",
        "h_displacement",
        "h_orientation",
        "semiconjugacy",
        "boundedness",
        "excursion",
    ],
}

APPROACH_LEVELS = list(range(11, 32, 2))
CONVERGENCE_RADIUS = 0.05
CONVERGENCE_WINDOW = 200


class VerificationSizes(BaseModel):
    """Sample counts and grid resolutions; defaults come from the settings."""

    random_points: int = Field(default_factory=lambda: settings.verify_random_points, ge=1)
    boundary_points: int = Field(default_factory=lambda: settings.verify_boundary_points, ge=1)
    limit_seeds: int = Field(default_factory=lambda: settings.verify_limit_seeds, ge=1)
    square_grid: int = Field(default_factory=lambda: settings.verify_square_grid, ge=1)
    plane_grid: int = Field(default_factory=lambda: settings.verify_plane_grid, ge=1)
    triangles: int = Field(default_factory=lambda: settings.verify_triangles, ge=1)
    semiconjugacy_seeds: int = Field(default=5, ge=1)
    orbit_horizon: int = Field(default=700, ge=CONVERGENCE_WINDOW + 1)


class VerificationReport(BaseModel):
    suite: str
    passed: bool
    sampler_seed: int
    precision: int
    tolerances: Tolerances
    sizes: VerificationSizes
    started_at: str
    elapsed_seconds: float
    certificates: List[Certificate]

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.certificates if not c.passed]


T = TypeVar("T")


class ChunkRunner:
    """Evaluates chunked work in worker processes, started on first use.

    With one worker, or too little work to ship, chunks run in the calling
    thread. The results always come back in chunk order.
    """

    def __init__(self, workers: int, min_chunk: int = 250):
        self.workers = workers
        self.min_chunk = min_chunk
        self._pool: Optional[ProcessPoolExecutor] = None
        self._lock = threading.Lock()

    def split(self, items: Sequence[T], weight: int = 1) -> List[List[T]]:
        """Consecutive chunks of ``items``, each item costing ``weight`` evaluations."""
        items = list(items)
        count = min(2 * self.workers, len(items) * weight // self.min_chunk)
        if self.workers <= 1 or count <= 1:
            return [items]
        size = -(-len(items) // count)
        return [items[i : i + size] for i in range(0, len(items), size)]

    def map(self, task: Callable[..., Any], chunks: List[List[Any]], *args: Any) -> List[Any]:
        """``task(*args, chunk)`` for every chunk."""
        if len(chunks) <= 1:
            return [task(*args, chunk) for chunk in chunks]
        with self._lock:
            if self._pool is None:
                logger.info(f"Starting {self.workers} verification worker processes")
                self._pool = ProcessPoolExecutor(
                    max_workers=self.workers, mp_context=multiprocessing.get_context("spawn")
                )
        futures = [self._pool.submit(task, *args, chunk) for chunk in chunks]
        return [future.result() for future in futures]

    def shutdown(self) -> None:
        with self._lock:
            if self._pool is not None:
                self._pool.shutdown()
                self._pool = None


@dataclass
class CheckContext:
    ctx: Any
    tolerances: Tolerances
    sizes: VerificationSizes
    rng: np.random.Generator
    runner: ChunkRunner = field(default_factory=lambda: ChunkRunner(1))


def _max_error(pairs) -> Any:
    worst = 0
    for a, b in pairs:
        worst = max(worst, max(abs(x - y) for x, y in zip(a, b)))
    return worst


def _slit_free(point) -> bool:
    x, y = point
    return not (y == 0 and 2 * abs(x) >= 1)


def _path_position(point) -> float:
    """Arc-length position along [v7, v2] ∪ [v2, v6] ∪ [v6, v0]."""
    x, y = (float(v) for v in point)
    if y > 1 - 1e-12:
        return x
    if x > 1 - 1e-12:
        return 1 + (1 - y)
    return 2 + (1 - x)


# Chunk tasks: module level, plain arguments and exact results, so they can
# cross a process boundary.


def rising_task(points: List[Tuple[Fraction, Fraction]]) -> Tuple[int, int]:
    rising = inverse = 0
    for r, s in points:
        p = SquarePoint(r, s)
        image = square_map.f(p)
        if image.s != square_map.f01(p.s):
            rising += 1
        if square_map.f(image, Direction.INVERSE) != p or square_map.f(square_map.f(p, Direction.INVERSE)) != p:
            inverse += 1
    return rising, inverse


def xi_symmetry_task(precision: int, points: List[Tuple[Fraction, Fraction]]) -> Tuple[Fraction, Fraction]:
    ctx = bigfloat_context(precision)
    level, vertical = [], []
    for r, s in points:
        p = SquarePoint(r, s)
        image = collapse_map.xi(ctx, p)
        mirrored = collapse_map.xi(ctx, square_map.reflect(p))
        flipped = collapse_map.xi(ctx, square_map.reflect(p, square_map.Axis.VERTICAL))
        level.append((mirrored, (-image[0], image[1])))
        vertical.append((flipped, (image[0], -image[1])))
    return to_rational(ctx, _max_error(level)), to_rational(ctx, _max_error(vertical))


def xi_roundtrip_task(precision: int, points: List[Tuple[Fraction, Fraction]]) -> Tuple[Fraction, int]:
    ctx = bigfloat_context(precision)
    pairs, on_slit = [], 0
    for r, s in points:
        image = collapse_map.xi(ctx, SquarePoint(r, s))
        if not _slit_free(image):
            on_slit += 1
            continue
        pairs.append((collapse_map.xi_inv(ctx, image), (to_bigfloat(ctx, r), to_bigfloat(ctx, s))))
    return to_rational(ctx, _max_error(pairs)), on_slit


def h_displacement_task(precision: int, points: List[Tuple[float, float]]) -> Optional[Fraction]:
    ctx = bigfloat_context(precision)
    worst = None
    for x0, y0 in points:
        x, y = ctx.mpf(x0), ctx.mpf(y0)
        image = plane_map.h_map(ctx, (x, y))
        d = max(abs(image.x - x), abs(image.y - y))
        worst = d if worst is None else min(worst, d)
    return None if worst is None else to_rational(ctx, worst)


class VerificationService:
    """Runs the verification battery and assembles reports."""

    def checks(self, suite: str) -> List[str]:
        if suite == "all":
            return [name for names in SUITES.values() for name in names]
        if suite not in SUITES:
            raise DomainError(f"unknown suite {suite!r}, expected one of all, {', '.join(SUITES)}")
        return list(SUITES[suite])

    def run_check(
        self,
        name: str,
        index: int,
        sampler_seed: int,
        precision: int,
        tolerances: Tolerances,
        sizes: VerificationSizes,
        runner: Optional[ChunkRunner] = None,
    ) -> Certificate:
        check: Callable[[CheckContext], Certificate] = getattr(self, f"check_{name}")
        context = CheckContext(
            bigfloat_context(precision), tolerances, sizes, make_rng(sampler_seed, index), runner or ChunkRunner(1)
        )
        started = time.perf_counter()
        try:
            cert = check(context)
        except Exception as e:
            logger.error(f"Check {name} raised: {e}", exc_info=True)
            cert = Certificate.decide(name, CertificateKind.IDENTITY, False, {"error": f"{type(e).__name__}: {e}"})
        elapsed = round(time.perf_counter() - started, 4)
        status = "PASS" if cert.passed else "FAIL"
        logger.info(f"[{status}] {name} ({elapsed:.2f}s)")
        return cert.model_copy(update={"name": name, "elapsed_seconds": elapsed})

    def run(
        self,
        suite: str = "all",
        sizes: Optional[VerificationSizes] = None,
        sampler_seed: Optional[int] = None,
        precision: Optional[int] = None,
        workers: Optional[int] = None,
        only: Optional[List[str]] = None,
    ) -> VerificationReport:
        names = self.checks(suite)
        all_names = self.checks("all")
        if only is not None:
            names = [n for n in names if n in only]
        sizes = sizes or VerificationSizes()
        sampler_seed = settings.sampler_seed if sampler_seed is None else sampler_seed
        precision = precision or settings.bigfloat_precision
        tolerances = settings.tolerances
        started_at = datetime.now(timezone.utc).isoformat()
        started = time.perf_counter()

        logger.info("=" * 60)
        logger.info(f"Verification suite '{suite}': {len(names)} checks")
        logger.info(f"Sampler seed {sampler_seed}, precision {precision} bits")
        logger.info("=" * 60)

        workers = workers or settings.verify_workers
        runner = ChunkRunner(workers)
        try:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [
                    pool.submit(
                        self.run_check, name, all_names.index(name), sampler_seed, precision, tolerances, sizes, runner
                    )
                    for name in names
                ]
                certificates = [future.result() for future in futures]
        finally:
            runner.shutdown()

        report = VerificationReport(
            suite=suite,
            passed=all(c.passed for c in certificates),
            sampler_seed=sampler_seed,
            precision=precision,
            tolerances=tolerances,
            sizes=sizes,
            started_at=started_at,
            elapsed_seconds=round(time.perf_counter() - started, 4),
            certificates=certificates,
        )
        logger.info("=" * 60)
        logger.info(f"Suite '{suite}' {'passed' if report.passed else 'FAILED'}: {report.failed or 'no failures'}")
        logger.info("=" * 60)
        return report

    @staticmethod
    def merge(suite: str, reports: List[VerificationReport]) -> VerificationReport:
        """Combine per-suite reports into one."""
        if not reports:
            raise DomainError("nothing to merge")
        certificates = [c for r in reports for c in r.certificates]
        first = reports[0]
        return first.model_copy(
            update={
                "suite": suite,
                "passed": all(c.passed for c in certificates),
                "elapsed_seconds": round(sum(r.elapsed_seconds for r in reports), 4),
                "certificates": certificates,
            }
        )

    # core suite

    def check_strip_tiling(self, c: CheckContext) -> Certificate:
        roundtrip = all(block_of(block_index(n)) == n for n in range(1, 51))
        even = all(block_index(n) % 2 == 0 for n in range(1, 51))
        strict_mid = all(strip_bounds(i).lo < strip_bounds(i).mid < strip_bounds(i).hi for i in range(2, 201))
        seams = all(strip_bounds(i).hi == strip_bounds(i + 1).lo for i in range(2, 200))
        covered = True
        for _ in range(c.sizes.boundary_points):
            s = random_rational(c.rng, Fraction(1, 2), Fraction(1))
            d = strip_locate(s)
            covered = covered and d.lo <= s and (s < d.hi or s == d.hi == Fraction(3, 4))
        evidence = {
            "block_roundtrip": roundtrip,
            "block_index_even": even,
            "mid_strict": strict_mid,
            "seams_tile": seams,
            "samples_covered": covered,
        }
        ok = roundtrip and even and strict_mid and seams and covered
        return Certificate.decide("strip_tiling", CertificateKind.IDENTITY, ok, evidence)

    def check_pl_roundtrip(self, c: CheckContext) -> Certificate:
        failures = 0
        for _ in range(c.sizes.random_points):
            if c.rng.random() < 0.5:
                fn = square_map.phi_function(int(c.rng.integers(1, 12)))
            else:
                fn = square_map.phi_slice(random_rational(c.rng, Fraction(1, 2), Fraction(1)))
            x = random_rational(c.rng, Fraction(-1), Fraction(1))
            if pl_eval(fn, pl_eval(fn, x), Direction.INVERSE) != x:
                failures += 1
        compose_failures = 0
        for _ in range(20):
            outer = square_map.phi_function(int(c.rng.integers(1, 8)))
            inner = square_map.phi_slice(random_rational(c.rng, Fraction(3, 4), Fraction(1)))
            composed = outer.compose(inner)
            grid = [Fraction(k, 64) for k in range(-64, 65)]
            if any(composed.evaluate(x) != outer.evaluate(inner.evaluate(x)) for x in grid):
                compose_failures += 1
        evidence = {"samples": c.sizes.random_points, "failures": failures, "compose_failures": compose_failures}
        return Certificate.decide("pl_roundtrip", CertificateKind.IDENTITY, not failures and not compose_failures, evidence)

    def check_boundary_identity(self, c: CheckContext) -> Certificate:
        points = random_boundary_points(c.rng, c.sizes.boundary_points)
        rule = [p for p in points if square_map.f(p) != square_map.reflect(square_map.f02(p))]
        edges = [p for p in points if abs(p.s) == 1]
        periodic = [p for p in edges if square_map.f(square_map.f(p)) != p]
        evidence = {
            "samples": len(points),
            "edge_samples": len(edges),
            "rule_violations": [format_point(p) for p in rule[:10]],
            "period_violations": [format_point(p) for p in periodic[:10]],
        }
        return Certificate.decide("boundary_identity", CertificateKind.IDENTITY, not rule and not periodic, evidence)

    def check_rising_bijective(self, c: CheckContext) -> Certificate:
        points = [tuple(p) for p in random_square_points(c.rng, c.sizes.random_points)]
        counts = c.runner.map(rising_task, c.runner.split(points))
        rising = sum(r for r, _ in counts)
        inverse = sum(i for _, i in counts)
        evidence = {"samples": c.sizes.random_points, "rising_failures": rising, "roundtrip_failures": inverse}
        return Certificate.decide("rising_bijective", CertificateKind.IDENTITY, not rising and not inverse, evidence)

    def check_seam_agreement(self, c: CheckContext) -> Certificate:
        inv = Direction.INVERSE
        mismatches = []
        for _ in range(c.sizes.boundary_points):
            r = random_rational(c.rng, Fraction(-1), Fraction(1))
            at0 = SquarePoint(r, Fraction(0))
            at_half = SquarePoint(r, Fraction(-1, 2))
            up_half = SquarePoint(r, Fraction(1, 2))
            pairs = [
                (square_map.eta(at0), square_map.reflect(square_map.f02(at0))),
                (square_map.reflect(square_map.f02(at_half)), square_map.zeta(at_half, inv)),
                (square_map.eta(up_half, inv), square_map.f02(square_map.reflect(up_half), inv)),
                (square_map.f02(square_map.reflect(at0), inv), square_map.zeta(at0)),
                (square_map.reflect(square_map.f02(at0)), square_map.f02(square_map.reflect(at0))),
                (
                    square_map.reflect(square_map.f02(at_half), square_map.Axis.VERTICAL),
                    square_map.f02(square_map.reflect(at_half, square_map.Axis.VERTICAL), inv),
                ),
            ]
            mismatches.extend(format_point(a) for a, b in pairs if a != b)
        slices_increasing = all(
            all(y0 < y1 for y0, y1 in zip(fn.ys, fn.ys[1:]))
            for fn in (square_map.phi_slice(random_rational(c.rng, Fraction(1, 2), Fraction(1))) for _ in range(200))
        )
        evidence = {"mismatches": mismatches[:10], "slices_increasing": slices_increasing}
        return Certificate.decide("seam_agreement", CertificateKind.IDENTITY, not mismatches and slices_increasing, evidence)

    def check_claim1_ladder(self, c: CheckContext) -> Certificate:
        main = dynamics.claim1_witness(SquarePoint.of(0, Fraction(1, 4)), 5)
        ladder = {i: Fraction(r) for i, r in main.evidence["ladder"]}
        exact_values = (
            ladder[2] == Fraction(2, 3) and ladder[4] == Fraction(8, 9) and ladder[6] == Fraction(35, 36)
        )
        beta_bounds = all(1 - ladder[block_index(m) + 2 * m] < Fraction(1, 2**m) for m in range(2, 6))
        monotone = all(ladder[2 * i] <= ladder[2 * i + 2] for i in range(1, 100))
        random_failures = []
        for _ in range(c.sizes.limit_seeds):
            seed = SquarePoint(
                random_rational(c.rng, Fraction(-7, 8), Fraction(7, 8)),
                random_rational(c.rng, Fraction(0), Fraction(1, 2)),
            )
            cert = dynamics.claim1_witness(seed, 5)
            if not cert.passed:
                random_failures.append(format_point(seed))
        evidence = {
            "seed": ["0", "1/4"],
            "mu": main.evidence["mu"],
            "r2_r4_r6": [str(ladder[2]), str(ladder[4]), str(ladder[6])],
            "exact_values": exact_values,
            "beta_bounds": beta_bounds,
            "monotone_1_to_100": monotone,
            "rungs": main.evidence["rungs"],
            "random_seeds": c.sizes.limit_seeds,
            "random_failures": random_failures,
        }
        ok = main.passed and exact_values and beta_bounds and monotone and not random_failures
        return Certificate.decide("claim1_ladder", CertificateKind.LADDER, ok, evidence)

    def _limit_seeds(self, c: CheckContext, count: int) -> List[SquarePoint]:
        """Interior seeds whose forward and backward entry heights are at least 1/64."""
        lo, hi = Fraction(1, 64), Fraction(31, 64)
        return [
            SquarePoint(
                random_rational(c.rng, Fraction(-7, 8), Fraction(7, 8)),
                random_rational(c.rng, lo, hi),
            )
            for _ in range(count)
        ]

    def check_f_limit_sets(self, c: CheckContext) -> Certificate:
        handle = dynamics.get_map("f")
        omega_set = [tuple(NamedPoints.v1), tuple(NamedPoints.v2)]
        alpha_set = [tuple(NamedPoints.v3), tuple(NamedPoints.v4)]
        rows, failures = [], 0
        seeds = [SquarePoint.of(0, Fraction(1, 4))] + self._limit_seeds(c, c.sizes.limit_seeds)
        for seed in seeds:
            omega = dynamics.limit_estimate(handle, tuple(seed), LimitSide.OMEGA, c.tolerances)
            alpha = dynamics.limit_estimate(handle, tuple(seed), LimitSide.ALPHA, c.tolerances)
            ok = (
                omega.converged
                and alpha.converged
                and omega.matches(omega_set, c.tolerances.limitset)
                and alpha.matches(alpha_set, c.tolerances.limitset)
            )
            failures += not ok
            rows.append(
                {
                    "seed": format_point(seed),
                    "ok": ok,
                    "omega_even": format_point(omega.parity["even"]),
                    "omega_odd": format_point(omega.parity["odd"]),
                    "omega_spread": omega.distances,
                    "alpha_spread": alpha.distances,
                }
            )
        first = rows[0]
        parity_ok = Fraction(first["omega_even"][0]) > 0 and Fraction(first["omega_odd"][0]) < 0
        evidence = {"seeds": len(seeds), "failures": failures, "parity_even_to_v2": parity_ok, "rows": rows}
        return Certificate.decide("f_limit_sets", CertificateKind.LIMITSET, not failures and parity_ok, evidence)

    def check_f_displacement(self, c: CheckContext) -> Certificate:
        square = ((Fraction(-1), Fraction(1)), (Fraction(-1), Fraction(1)))
        return self._displacement(c, "f", square, c.sizes.square_grid)

    def _displacement(self, c: CheckContext, map_id: str, region, grid: int) -> Certificate:
        """Displacement scan with the grid columns spread over the chunk runner."""
        handle = dynamics.get_map(map_id, c.ctx)
        precision = c.ctx.prec if handle.arithmetic is dynamics.Arithmetic.BIGFLOAT else None
        bands = c.runner.split(range(grid), weight=grid)
        parts = c.runner.map(dynamics.scan_rows_task, bands, map_id, precision, region, grid)
        return dynamics.displacement_scan(handle, region, grid, parts)

    def check_f_orientation(self, c: CheckContext) -> Certificate:
        margin = Fraction(1, 16)
        samples = random_square_points(c.rng, c.sizes.triangles, margin)
        return dynamics.orientation_probe(
            dynamics.get_map("f"),
            samples,
            cell_key=lambda p: square_map.f_cell(SquarePoint(*p)),
            redraw=lambda: random_square_points(c.rng, 1, margin)[0],
        )

    def check_periodic_set(self, c: CheckContext) -> Certificate:
        boundary = random_boundary_points(c.rng, c.sizes.boundary_points)
        boundary += [NamedPoints.v7, NamedPoints.v8]
        rays = [random_rational(c.rng, Fraction(1), Fraction(100)) * (1 if k % 2 else -1) for k in range(100)]
        return dynamics.periodic_set_certificate(c.ctx, boundary, rays)

    def check_example_shift_reflection(self, c: CheckContext) -> Certificate:
        handle = dynamics.get_map("example12")
        region = ((Fraction(-2), Fraction(2)), (Fraction(-2), Fraction(2)))
        scan = self._displacement(c, "example12", region, 100)
        involution = True
        for _ in range(c.sizes.boundary_points):
            x = random_rational(c.rng, Fraction(1), Fraction(50)) * (1 if c.rng.random() < 0.5 else -1)
            y = random_rational(c.rng, Fraction(-50), Fraction(50))
            involution = involution and handle.apply(handle.apply((x, y))) == (x, y)
        record = dynamics.orbit(handle, (Fraction(0), Fraction(0)), (0, 100))
        unbounded = all(step.point[1] == step.n for step in record.steps)
        evidence = {
            "min_displacement": scan.evidence["min_displacement"],
            "involution_outside_band": involution,
            "y_equals_n_to_100": unbounded,
        }
        ok = scan.passed and involution and unbounded
        return Certificate.decide("example_shift_reflection", CertificateKind.FIXEDPOINTFREE, ok, evidence)

    # xi suite

    def check_chart_roundtrip(self, c: CheckContext) -> Certificate:
        ctx, tol = c.ctx, c.tolerances.chart_roundtrip
        worst_s = worst_t = 0
        for _ in range(c.sizes.boundary_points):
            p = (random_rational(c.rng, Fraction(0), Fraction(1)), random_rational(c.rng, Fraction(-1), Fraction(1)))
            q = (to_bigfloat(ctx, p[0]), to_bigfloat(ctx, p[1]))
            back = collapse_map.source_chart(ctx, collapse_map.source_chart(ctx, q), Direction.INVERSE)
            worst_s = max(worst_s, _max_error([(back, q)]))
            if _slit_free(q):
                back = collapse_map.target_chart(ctx, collapse_map.target_chart(ctx, q), Direction.INVERSE)
                worst_t = max(worst_t, _max_error([(back, q)]))
        evidence = {"source_error": format_value(worst_s), "target_error": format_value(worst_t)}
        return Certificate.decide("chart_roundtrip", CertificateKind.CONTRACT, worst_s <= tol and worst_t <= tol, evidence)

    def check_cone_bijective(self, c: CheckContext) -> Certificate:
        ctx = c.ctx
        worst = 0
        for _ in range(c.sizes.boundary_points):
            u = (
                ctx.pi * to_bigfloat(ctx, random_rational(c.rng, Fraction(0), Fraction(1))),
                to_bigfloat(ctx, random_rational(c.rng, Fraction(0), Fraction(1))),
            )
            back = collapse_map.cone_map(ctx, collapse_map.cone_map(ctx, u), Direction.INVERSE)
            worst = max(worst, _max_error([(back, u)]))
        evidence = {"samples": c.sizes.boundary_points, "max_error": format_value(worst)}
        return Certificate.decide("cone_bijective", CertificateKind.CONTRACT, worst <= c.tolerances.commutation, evidence)

    def check_xi_fixed_fiber_and_halving(self, c: CheckContext) -> Certificate:
        ctx, tol = c.ctx, c.tolerances.commutation
        fiber, axis = [], []
        for _ in range(c.sizes.boundary_points):
            s = random_rational(c.rng, Fraction(-1), Fraction(1))
            fiber.append((collapse_map.xi(ctx, (Fraction(0), s)), (0, to_bigfloat(ctx, s))))
            r = random_rational(c.rng, Fraction(-1), Fraction(1))
            axis.append((collapse_map.xi(ctx, (r, Fraction(0))), (to_bigfloat(ctx, r) / 2, 0)))
        fiber_err, axis_err = _max_error(fiber), _max_error(axis)
        evidence = {"fiber_error": format_value(fiber_err), "axis_error": format_value(axis_err)}
        return Certificate.decide(
            "xi_fixed_fiber_and_halving", CertificateKind.CONTRACT, fiber_err <= tol and axis_err <= tol, evidence
        )

    def check_xi_edge_collapse(self, c: CheckContext) -> Certificate:
        ctx, tol = c.ctx, c.tolerances.commutation
        v0 = (ctx.mpf(1) / 2, 0)
        edge = [
            (collapse_map.xi(ctx, (Fraction(1), random_rational(c.rng, Fraction(-1), Fraction(1)))), v0)
            for _ in range(100)
        ]
        collapse_err = _max_error(edge)
        positions = []
        for k in range(1, c.sizes.boundary_points):
            r = Fraction(k, c.sizes.boundary_points)
            positions.append(_path_position(collapse_map.xi(ctx, (r, Fraction(1)))))
        monotone = all(a < b for a, b in zip(positions, positions[1:]))
        evidence = {
            "collapse_error": format_value(collapse_err),
            "top_edge_samples": len(positions),
            "path_monotone": monotone,
            "path_span": [positions[0], positions[-1]] if positions else None,
        }
        ok = collapse_err <= tol and monotone
        return Certificate.decide("xi_edge_collapse", CertificateKind.CONTRACT, ok, evidence)

    def check_xi_symmetry(self, c: CheckContext) -> Certificate:
        ctx = c.ctx
        points = [tuple(p) for p in random_square_points(c.rng, c.sizes.random_points)]
        errors = c.runner.map(xi_symmetry_task, c.runner.split(points, weight=3), ctx.prec)
        level_err = max(e for e, _ in errors)
        vertical_err = max(e for _, e in errors)
        tol = c.tolerances.commutation
        evidence = {
            "level_error": format_value(to_bigfloat(ctx, level_err)),
            "vertical_error": format_value(to_bigfloat(ctx, vertical_err)),
        }
        return Certificate.decide("xi_symmetry", CertificateKind.CONTRACT, level_err <= tol and vertical_err <= tol, evidence)

    def check_xi_injective_roundtrip(self, c: CheckContext) -> Certificate:
        ctx = c.ctx
        margin = Fraction(1, 1000)
        points = [tuple(p) for p in random_square_points(c.rng, c.sizes.random_points, margin)]
        results = c.runner.map(xi_roundtrip_task, c.runner.split(points, weight=2), ctx.prec)
        err = max(e for e, _ in results)
        on_slit = sum(n for _, n in results)
        evidence = {
            "samples": c.sizes.random_points,
            "roundtrip_error": format_value(to_bigfloat(ctx, err)),
            "images_on_slit": on_slit,
        }
        ok = err <= c.tolerances.chart_roundtrip and not on_slit
        return Certificate.decide("xi_injective_roundtrip", CertificateKind.CONTRACT, ok, evidence)

    def check_xi_orientation(self, c: CheckContext) -> Certificate:
        ctx = c.ctx
        margin = Fraction(1, 64)
        samples = random_square_points(c.rng, min(c.sizes.triangles, 200), margin)
        return dynamics.orientation_probe(
            dynamics.get_map("xi", ctx),
            samples,
            expected_sign=None,
            cell_key=lambda p: collapse_map.xi_cell(ctx, p),
            redraw=lambda: random_square_points(c.rng, 1, margin)[0],
        )

    # plane suite

    def check_g_seam_continuity(self, c: CheckContext) -> Certificate:
        ctx = c.ctx
        q = (Fraction(3, 4), Fraction(0))
        rows, ok = {}, True
        for side in ("above", "below"):
            steps = plane_map.slit_approach(ctx, q, side, APPROACH_LEVELS)
            errors = [s.error for s in steps]
            last = errors[-5:]
            monotone = all(a > b for a, b in zip(last, last[1:]))
            final_ok = errors[-1] < 1e-6
            side_ok = monotone and final_ok and all(s.point[1] > 0 if side == "above" else s.point[1] < 0 for s in steps)
            ok = ok and side_ok
            rows[side] = {
                "levels": APPROACH_LEVELS,
                "errors": [ctx.nstr(e, 6) for e in errors],
                "monotone_last_5": monotone,
                "final_below_1e-6": final_ok,
            }
        return Certificate.decide("g_seam_continuity", CertificateKind.CONTINUITY, ok, {"slit_point": ["3/4", "0"], **rows})

    def check_g_limit_sets(self, c: CheckContext) -> Certificate:
        ctx = c.ctx
        handle = dynamics.get_map("g", ctx)
        targets = [(-ctx.mpf(1) / 2, ctx.zero), (ctx.mpf(1) / 2, ctx.zero)]
        rows, failures = [], 0
        for seed in [SquarePoint.of(0, Fraction(1, 4))] + self._limit_seeds(c, 2):
            g_seed = collapse_map.xi(ctx, seed)
            for side in (LimitSide.OMEGA, LimitSide.ALPHA):
                est = dynamics.limit_estimate(handle, g_seed, side, c.tolerances)
                ok = est.converged and est.matches(targets, c.tolerances.limitset)
                failures += not ok
                rows.append({"seed": format_point(seed), "side": side.value, "ok": ok, "points": est.to_dict()["points"]})
        return Certificate.decide("g_limit_sets", CertificateKind.LIMITSET, not failures, {"rows": rows})

    def check_h_rays(self, c: CheckContext) -> Certificate:
        ctx = c.ctx
        failures = []
        for k in range(c.sizes.boundary_points):
            r = random_rational(c.rng, Fraction(1), Fraction(1000)) * (1 if k % 2 else -1)
            x = plane_map.PlanePoint.of(ctx, (r, 0))
            once = plane_map.h_map(ctx, x)
            if once != plane_map.PlanePoint(-x.x, x.y) or plane_map.h_map(ctx, once) != x:
                failures.append(str(r))
        evidence = {"samples": c.sizes.boundary_points, "failures": failures[:10]}
        return Certificate.decide("h_rays", CertificateKind.PERIODIC, not failures, evidence)

    def _convergence(self, c: CheckContext, seed) -> Dict[str, Any]:
        ctx = c.ctx
        horizon = c.sizes.orbit_horizon
        targets = [tuple(float(v) for v in w) for w in NamedPoints.O2]
        result: Dict[str, Any] = {}
        for label, n_range in (("omega", (0, horizon)), ("alpha", (-horizon, 0))):
            points = plane_map.h_orbit_lifted(ctx, seed, *n_range)
            n_values = list(range(n_range[0], n_range[1] + 1))
            result[label] = dynamics.convergence_index(
                [None if p is None else tuple(p) for p in points],
                n_values,
                targets,
                CONVERGENCE_RADIUS,
                CONVERGENCE_WINDOW,
            )
        return result

    def check_h_convergence(self, c: CheckContext) -> Certificate:
        found = self._convergence(c, (Fraction(0), Fraction(0)))
        ok = all(n is not None and n <= 5000 for n in found.values())
        evidence = {
            "seed": ["0", "0"],
            "radius": CONVERGENCE_RADIUS,
            "window": CONVERGENCE_WINDOW,
            "N_omega": found["omega"],
            "N_alpha": found["alpha"],
        }
        return Certificate.decide("h_convergence", CertificateKind.LIMITSET, ok, evidence)

    def check_h_displacement(self, c: CheckContext) -> Certificate:
        region = ((Fraction(-3), Fraction(3)), (Fraction(-3), Fraction(3)))
        scan = self._displacement(c, "h", region, c.sizes.plane_grid)
        ctx = c.ctx
        points = []
        for _ in range(c.sizes.boundary_points):
            radius = 100 * c.rng.random()
            angle = 2 * np.pi * c.rng.random()
            points.append((float(radius * np.cos(angle)), float(radius * np.sin(angle))))
        minima = c.runner.map(h_displacement_task, c.runner.split(points), ctx.prec)
        worst = min(m for m in minima if m is not None)
        evidence = dict(
            scan.evidence,
            random_samples=c.sizes.boundary_points,
            random_min=format_value(to_bigfloat(ctx, worst)),
        )
        return Certificate.decide("h_displacement", CertificateKind.FIXEDPOINTFREE, scan.passed and worst > 0, evidence)

    def _plane_sample(self, c: CheckContext):
        ctx = c.ctx
        return (
            to_bigfloat(ctx, random_rational(c.rng, Fraction(-3), Fraction(3))),
            to_bigfloat(ctx, random_rational(c.rng, Fraction(-3), Fraction(3))),
        )

    def check_h_orientation(self, c: CheckContext) -> Certificate:
        ctx = c.ctx
        samples = [self._plane_sample(c) for _ in range(c.sizes.triangles)]
        return dynamics.orientation_probe(
            dynamics.get_map("h", ctx),
            samples,
            cell_key=lambda p: plane_map.h_cell(ctx, p),
            redraw=lambda: self._plane_sample(c),
        )

    def check_semiconjugacy(self, c: CheckContext) -> Certificate:
        seeds = [SquarePoint.of(0, Fraction(1, 4))] + self._limit_seeds(c, c.sizes.semiconjugacy_seeds - 1)
        return dynamics.semiconjugacy_probe(c.ctx, seeds, c.tolerances)

    def check_boundedness(self, c: CheckContext) -> Certificate:
        ctx = c.ctx
        origin = dynamics.boundedness_certificate(ctx, (0, 0), 300, c.tolerances)
        ray = dynamics.boundedness_certificate(ctx, (2, 0), 300, c.tolerances)
        evidence = {"origin": origin.evidence, "ray": ray.evidence}
        return Certificate.decide("boundedness", CertificateKind.BOUNDEDNESS, origin.passed and ray.passed, evidence)

    def excursion_seed(self, ctx) -> plane_map.PlanePoint:
        """ψ ξ f^-12(0, 1 - 2^-13): its orbit climbs the fixed fiber {0} x J."""
        w = SquarePoint.of(0, 1 - Fraction(1, 2**13))
        for _ in range(12):
            w = square_map.f(w, Direction.INVERSE)
        return plane_map.push_out(ctx, w)

    def check_excursion(self, c: CheckContext) -> Certificate:
        ctx = c.ctx
        seed = self.excursion_seed(ctx)
        profile = dynamics.excursion_profile(ctx, seed, (-300, 300))
        origin = dynamics.excursion_profile(ctx, (0, 0), (-300, 300))
        found = self._convergence(c, seed)
        large = profile.sup_norm > 1000
        converges = all(n is not None and n <= 5000 for n in found.values())
        evidence = {
            "seed": format_point(seed),
            "sup_norm": ctx.nstr(profile.sup_norm, 8),
            "sup_index": profile.sup_index,
            "N_omega": found["omega"],
            "N_alpha": found["alpha"],
            "origin_sup_norm": ctx.nstr(origin.sup_norm, 8),
            "origin_sup_index": origin.sup_index,
        }
        return Certificate.decide("excursion", CertificateKind.EXCURSION, large and converges, evidence)


# Global service instance
verification_service = VerificationService()
