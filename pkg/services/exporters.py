"""Writers for orbit, excursion, geometry and report artifacts."""

import csv
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from core.dynamics import ExcursionProfile  # noqa: E402
from core.exceptions import DomainError  # noqa: E402

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

ORBIT_FORMATS = ("json", "csv", "svg")


def write_json(payload: Dict[str, Any], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, default=str) + "\n")
    logger.info(f"Wrote {path}")
    return path


def read_orbit_json(path: PathLike) -> Dict[str, Any]:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise DomainError(f"cannot read orbit file {path}: {e}") from e
    missing = {"map", "seed", "points"} - set(payload)
    if missing:
        raise DomainError(f"orbit file {path} lacks {', '.join(sorted(missing))}")
    return payload


def write_orbit_csv(payload: Dict[str, Any], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["n", "x", "y"])
        for row in payload["points"]:
            writer.writerow([row["n"], row.get("x") or "", row.get("y") or ""])
    logger.info(f"Wrote {len(payload['points'])} orbit rows to {path}")
    return path


def write_excursion_csv(profile: ExcursionProfile, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["n", "log10_norm"])
        for n, value in profile.rows:
            writer.writerow([n, "" if value is None else f"{value:.12g}"])
    logger.info(f"Wrote excursion profile ({len(profile.rows)} rows) to {path}")
    return path


def _floats(rows: Iterable[Dict[str, Any]]):
    """Plot coordinates; one-dimensional orbits are drawn against n."""
    xs, ys = [], []
    for row in rows:
        if row.get("x") is None:
            continue
        if "y" in row:
            xs.append(_as_number(row["x"]))
            ys.append(_as_number(row["y"]))
        else:
            xs.append(float(row["n"]))
            ys.append(_as_number(row["x"]))
    return xs, ys


def write_orbit_svg(payload: Dict[str, Any], path: PathLike, title: Optional[str] = None) -> Path:
    """Scatter of the orbit, seed marked, square outline for maps living on J^2."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig = Figure(figsize=(6, 6))
    ax = fig.add_subplot(1, 1, 1)
    xs, ys = _floats(payload["points"])
    ax.plot(xs, ys, ".", markersize=2, color="tab:blue")
    seed = [_as_number(v) for v in payload["seed"]]
    if len(seed) == 2:
        ax.plot([seed[0]], [seed[1]], "o", color="tab:red", label="seed")
    if payload["map"] != "h" and len(seed) == 2:
        ax.add_patch(Rectangle((-1, -1), 2, 2, fill=False, linewidth=0.8, color="black"))
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_title(title or f"{payload['map']} orbit of ({', '.join(payload['seed'])})", fontsize=9)
    ax.legend(loc="upper right", fontsize=8)
    fig.savefig(path, format="svg")
    logger.info(f"Wrote {path}")
    return path


def write_geometry_svg(geometry: Dict[str, Any], path: PathLike) -> Path:
    """The strip decomposition of the upper half, the chart pins and the slits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig = Figure(figsize=(7, 7))
    ax = fig.add_subplot(1, 1, 1)
    ax.add_patch(Rectangle((-1, -1), 2, 2, fill=False, linewidth=1.0, color="black"))
    colours = {"D1_CORE": "#dde8f5", "F_ZONE": "#f5e6c8", "B_ZONE": "#d8f0d8"}
    for row in geometry["strips"]:
        lo, mid, hi = (_as_number(v) for v in (row["lo"], row["mid"], row["hi"]))
        if row["zone"] == "F_ZONE":
            bottom, top = lo, mid
        elif row["zone"] == "B_ZONE":
            bottom, top = mid, hi
        else:
            bottom, top = lo, hi
        colour = colours.get(row["zone"], "white")
        ax.add_patch(Rectangle((-1, bottom), 2, top - bottom, color=colour, linewidth=0))
        ax.plot([-1, 1], [bottom, bottom], color="grey", linewidth=0.3)
    for x0, y0, x1, y1 in geometry["slits"]:
        ax.plot([_as_number(x0), _as_number(x1)], [_as_number(y0), _as_number(y1)], color="tab:red", linewidth=1.5)
    for pin in geometry["source_pins"]:
        ex, ey = (_as_number(v) for v in pin["exit"])
        ax.plot([1, ex], [0, ey], color="tab:purple", linewidth=0.6)
        ax.annotate(pin["name"], (ex, ey), fontsize=6)
    for corner in geometry["target_corners"]:
        ex, ey = (_as_number(v) for v in corner["exit"])
        ax.plot([0.5, ex], [0, ey], color="tab:green", linewidth=0.6, linestyle="--")
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_aspect("equal")
    ax.set_title("Strip decomposition, chart pins and slits", fontsize=9)
    fig.savefig(path, format="svg")
    logger.info(f"Wrote {path}")
    return path


PLOT_LIMIT = Fraction(10) ** 100


def _as_number(text: Any) -> float:
    """Plot coordinate, clamped to ±1e100 so far excursions stay finite."""
    value = Fraction(str(text))
    return float(max(min(value, PLOT_LIMIT), -PLOT_LIMIT))


def write_orbit(payload: Dict[str, Any], path: PathLike, fmt: str) -> Path:
    if fmt == "json":
        return write_json(payload, path)
    if fmt == "csv":
        return write_orbit_csv(payload, path)
    if fmt == "svg":
        return write_orbit_svg(payload, path)
    raise DomainError(f"unknown orbit format {fmt!r}, expected one of {', '.join(ORBIT_FORMATS)}")
