"""Localization error measures: per-link ranging error, per-placement
position error (ER), and their experiment-wide average (GER)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateInputError

Point = tuple[float, float]


@dataclass(frozen=True)
class PlacementError:
    """Actual and estimated coordinates of one placement, with its ER."""

    actual: Point
    estimated: Point
    er_m: float


@dataclass(frozen=True)
class LocalizationReport:
    """Per-placement errors plus the GER and min/max summary for one run."""

    placements: tuple[PlacementError, ...]
    ger_m: float
    min_er_m: float
    max_er_m: float
    method: str


def distance_error(estimated_m: float, actual_m: float) -> float:
    """Signed ranging error in meters; positive means overestimate."""
    if actual_m < 0:
        raise ValueError(f"actual_m must be non-negative, got {actual_m!r}")
    return estimated_m - actual_m


def position_error(estimated: Point, actual: Point) -> float:
    """Euclidean distance between an estimated and an actual coordinate."""
    return math.hypot(estimated[0] - actual[0], estimated[1] - actual[1])


def general_error(errors: list[float]) -> float:
    """Arithmetic mean of per-placement errors (the GER)."""
    if not errors:
        raise DegenerateInputError("cannot average an empty error list")
    for e in errors:
        if e < 0:
            raise ValueError(f"errors must be non-negative, got {e!r}")
    return sum(errors) / len(errors)


def summarize(placements: list[tuple[Point, Point]], method: str) -> LocalizationReport:
    """Aggregate (actual, estimated) pairs into a LocalizationReport."""
    if not placements:
        raise DegenerateInputError("cannot summarize zero placements")
    entries = tuple(
        PlacementError(
            actual=(float(a[0]), float(a[1])),
            estimated=(float(e[0]), float(e[1])),
            er_m=position_error(e, a),
        )
        for a, e in placements
    )
    errors = [p.er_m for p in entries]
    return LocalizationReport(
        placements=entries,
        ger_m=general_error(errors),
        min_er_m=min(errors),
        max_er_m=max(errors),
        method=method,
    )
