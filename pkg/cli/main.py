"""Command line frontend: evaluate maps, export orbits, run verification suites."""

import argparse
import json
import logging
import sys
from pathlib import Path

from config.settings import settings
from core.dynamics import MAP_IDS
from core.exceptions import DomainError, OrbitEscapeError
from core.numerics import Direction
from services.exporters import (
    ORBIT_FORMATS,
    read_orbit_json,
    write_excursion_csv,
    write_geometry_svg,
    write_json,
    write_orbit,
)
from services.map_service import map_service, parse_point, parse_range
from services.verification_service import SUITES, verification_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


VALUE_FLAGS = ("--point", "--seed", "--steps")


def _fold_values(argv):
    """Join '--steps -50..200' into '--steps=-50..200'.

    argparse reads a value that starts with '-' and is not a plain number as
    an option, which rejects negative ranges and points.
    """
    folded, tokens = [], iter(argv)
    for token in tokens:
        if token in VALUE_FLAGS:
            value = next(tokens, None)
            folded.append(token if value is None else f"{token}={value}")
        else:
            folded.append(token)
    return folded


def _tuple_text(values) -> str:
    return "(" + ", ".join(values) + ")"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bounded-orbit-lab",
        description="Exact and BigFloat evaluation of the square, quotient and plane maps, with verification suites.",
    )
    parser.add_argument("--log-level", default=None, help=f"logging level [default {settings.log_level}]")
    parser.add_argument("--precision", type=int, default=None, help="BigFloat precision in bits")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one map at one point")
    ev.add_argument("--map", required=True, choices=MAP_IDS)
    ev.add_argument("--point", required=True, help="comma separated coordinates, e.g. 0,1/2")
    ev.add_argument("--direction", choices=[d.value for d in Direction], default=Direction.FORWARD.value)
    ev.add_argument("--n", type=int, default=1, help="index of phi_n for --map phi")
    ev.add_argument("--approx", action="store_true", help="round non-dyadic decimals to the nearest BigFloat")

    orb = sub.add_parser("orbit", help="compute and export an orbit segment")
    orb.add_argument("--map", required=True, choices=MAP_IDS)
    orb.add_argument("--seed", required=True)
    orb.add_argument("--steps", default="0..100", help="n range 'a..b' or a step count")
    orb.add_argument("--n", type=int, default=1)
    orb.add_argument("--approx", action="store_true")
    orb.add_argument("--format", choices=ORBIT_FORMATS, default="json")
    orb.add_argument("--out", default=None, help="output file [default: JSON on stdout]")

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", choices=["all", *SUITES], default="all")
    ver.add_argument("--seed", type=int, default=None, help="sampler seed")
    ver.add_argument("--workers", type=int, default=None)
    ver.add_argument("--out", default=None, help="write the JSON report here")

    geo = sub.add_parser("geometry", help="strip table, chart pins and slits")
    geo.add_argument("--levels", type=int, default=12)
    geo.add_argument("--out", default=None, help="SVG output (JSON on stdout otherwise)")

    exc = sub.add_parser("excursion", help="log10 norm profile of a lifted h-orbit")
    exc.add_argument("--seed", default="0,0")
    exc.add_argument("--steps", default="-300..300")
    exc.add_argument("--out", default=None, help="CSV output")

    chk = sub.add_parser("check-orbit", help="recompute a JSON orbit file and compare")
    chk.add_argument("orbit_file")
    return parser


def _cmd_eval(args) -> int:
    handle = map_service.handle(args.map, args.precision, args.n)
    point = parse_point(args.point, handle, args.approx)
    result = map_service.evaluate(args.map, point, Direction(args.direction), args.precision, args.n)
    print(_tuple_text(result["image"]))
    for key, value in result["diagnostics"].items():
        print(f"{key}: {value}")
    return EXIT_OK


def _cmd_orbit(args) -> int:
    handle = map_service.handle(args.map, args.precision, args.n)
    seed = parse_point(args.seed, handle, args.approx)
    record = map_service.orbit(args.map, seed, parse_range(args.steps), args.precision, args.n)
    payload = map_service.orbit_payload(record, args.precision, args.n)
    if args.out is None:
        if args.format != "json":
            raise DomainError(f"--format {args.format} needs --out")
        print(json.dumps(payload, indent=2))
    else:
        write_orbit(payload, args.out, args.format)
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = verification_service.run(
        args.suite, sampler_seed=args.seed, precision=args.precision, workers=args.workers
    )
    for cert in report.certificates:
        print(f"{cert.status.value.upper():13s} {cert.name} ({cert.elapsed_seconds:.2f}s)")
    if args.out:
        write_json(report.model_dump(mode="json"), args.out)
    print("passed" if report.passed else f"FAILED: {', '.join(report.failed)}")
    return EXIT_OK if report.passed else EXIT_FAILED


def _cmd_geometry(args) -> int:
    geometry = map_service.geometry(args.levels, args.precision)
    if args.out and Path(args.out).suffix == ".svg":
        write_geometry_svg(geometry, args.out)
    elif args.out:
        write_json(geometry, args.out)
    else:
        print(json.dumps(geometry, indent=2))
    return EXIT_OK


def _cmd_excursion(args) -> int:
    handle = map_service.handle("h", args.precision)
    seed = parse_point(args.seed, handle)
    profile = map_service.excursion(seed, parse_range(args.steps), args.precision)
    if args.out:
        write_excursion_csv(profile, args.out)
    print(f"sup |h^n(x)| = {profile.sup_norm} at n = {profile.sup_index}")
    return EXIT_OK


def _cmd_check_orbit(args) -> int:
    result = map_service.check_orbit(read_orbit_json(args.orbit_file))
    if result["ok"]:
        print(f"ok: {result['points']} points reproduced")
        return EXIT_OK
    print(f"mismatch at n = {result['mismatches'][:20]}")
    return EXIT_FAILED


COMMANDS = {
    "eval": _cmd_eval,
    "orbit": _cmd_orbit,
    "verify": _cmd_verify,
    "geometry": _cmd_geometry,
    "excursion": _cmd_excursion,
    "check-orbit": _cmd_check_orbit,
}


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]

    parser = _build_parser()
    args = parser.parse_args(_fold_values(argv))

    logging.basicConfig(
        level=getattr(logging, (args.log_level or settings.log_level).upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        return COMMANDS[args.command](args)
    except OrbitEscapeError as e:
        logger.error(f"Orbit left the domain at step {e.step}: {e}")
        return EXIT_FAILED
    except ValueError as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Command {args.command} failed with error: {e}", exc_info=True)
        raise


if __name__ == "__main__":
    sys.exit(main())
