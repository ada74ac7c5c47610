"""Linearized lateration: build the anchor system and solve for a 2-D position.

Each ranging circle (x - x_i)^2 + (y - y_i)^2 = d_i^2 is linearized by
subtracting the last anchor's equation from the n-1 previous ones, giving
one row per non-reference anchor:

    -2(x_i - x_n) * x - 2(y_i - y_n) * y
        = (d_i^2 - d_n^2) - (x_i^2 - x_n^2) - (y_i^2 - y_n^2)

The resulting A X = B is solved exactly for three anchors and in the
least-squares sense (normal equations) for four or more. The reference
anchor is always the last one in input order; with inconsistent distances
the answer depends on that choice, so callers should treat anchor order
as part of the problem statement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientAnchorsError, SingularGeometryError
from .pathloss import PathLossModel, estimate_distance

TRILATERATION = "trilateration"
MULTILATERATION = "multilateration"

WELL_CONDITIONED = "well-conditioned"
NEAR_SINGULAR = "near-singular"

# Thresholds on det(A'A) / ||A||_F^4, a scale-invariant conditioning measure
# in [0, 1/4]. Exactly collinear anchors land at float-roundoff level
# (< 1e-28); a 1e-8 m perturbation of meter-scale anchors lands near 1e-16.
_SINGULAR_RATIO = 1e-24
_NEAR_SINGULAR_RATIO = 1e-12


@dataclass(frozen=True)
class AnchorNode:
    """A receiver at a known position, used as a ranging reference."""

    id: str
    x_m: float
    y_m: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_m) and math.isfinite(self.y_m)):
            raise ValueError(f"anchor {self.id!r} has non-finite coordinates")

    @property
    def position(self) -> tuple[float, float]:
        return (self.x_m, self.y_m)


@dataclass(frozen=True)
class LinearSystem:
    """The (n-1) x 2 linearized system A X = B for n anchors."""

    a: np.ndarray
    b: np.ndarray
    n: int
    anchor_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class PositionEstimate:
    """Solver output: coordinate plus solve diagnostics.

    ``residual_norm`` is the Euclidean norm of A X - B at the solution
    (units m^2, zero for a consistent system); ``distances_m`` holds the
    per-anchor ranged distances the solve consumed, when known.
    """

    x_m: float
    y_m: float
    method: str
    residual_norm: float
    condition_flag: str
    distances_m: tuple[float, ...] | None = None

    @property
    def position(self) -> tuple[float, float]:
        return (self.x_m, self.y_m)


def build_system(anchors: list[AnchorNode], distances_m: list[float]) -> LinearSystem:
    """Assemble A X = B from anchors and their ranged distances.

    The last anchor is the subtracted reference. Distances are used as
    given, including zero; negative or non-finite distances are rejected.
    """
    n = len(anchors)
    if n < 3:
        raise InsufficientAnchorsError(f"need at least 3 anchors, got {n}")
    if len(distances_m) != n:
        raise ValueError(
            f"got {n} anchors but {len(distances_m)} distances"
        )
    for d in distances_m:
        if not (math.isfinite(d) and d >= 0):
            raise ValueError(f"distances must be finite and non-negative, got {d!r}")

    xn, yn = anchors[-1].position
    dn = distances_m[-1]
    a = np.empty((n - 1, 2), dtype=float)
    b = np.empty(n - 1, dtype=float)
    for i, (anchor, di) in enumerate(zip(anchors[:-1], distances_m[:-1])):
        xi, yi = anchor.position
        a[i, 0] = -2.0 * (xi - xn)
        a[i, 1] = -2.0 * (yi - yn)
        b[i] = (di**2 - dn**2) - (xi**2 - xn**2) - (yi**2 - yn**2)
    return LinearSystem(a=a, b=b, n=n, anchor_ids=tuple(anc.id for anc in anchors))


def conditioning_ratio(a: np.ndarray) -> float:
    """Scale-invariant det(A'A) / ||A||_F^4; 0 for rank-deficient A."""
    fro2 = float(np.sum(a * a))
    if fro2 == 0.0:
        return 0.0
    ata = a.T @ a
    det = float(ata[0, 0] * ata[1, 1] - ata[0, 1] * ata[1, 0])
    return det / fro2**2


def solve(system: LinearSystem) -> PositionEstimate:
    """Solve A X = B by normal equations, with conditioning diagnostics.

    Raises SingularGeometryError (carrying the anchor ids) when the anchors
    are collinear; flags the estimate near-singular when the geometry is
    almost so but still solvable.
    """
    ratio = conditioning_ratio(system.a)
    if ratio <= _SINGULAR_RATIO:
        raise SingularGeometryError(
            f"anchors {list(system.anchor_ids)} are collinear: "
            "the lateration system has no unique solution",
            anchor_ids=system.anchor_ids,
        )
    flag = NEAR_SINGULAR if ratio <= _NEAR_SINGULAR_RATIO else WELL_CONDITIONED

    ata = system.a.T @ system.a
    atb = system.a.T @ system.b
    try:
        x = np.linalg.solve(ata, atb)
    except np.linalg.LinAlgError as exc:
        raise SingularGeometryError(
            f"anchors {list(system.anchor_ids)}: normal matrix is singular ({exc})",
            anchor_ids=system.anchor_ids,
        ) from exc
    residual = system.a @ x - system.b
    method = TRILATERATION if system.n == 3 else MULTILATERATION
    return PositionEstimate(
        x_m=float(x[0]),
        y_m=float(x[1]),
        method=method,
        residual_norm=float(np.linalg.norm(residual)),
        condition_flag=flag,
    )


def locate(anchors: list[AnchorNode], distances_m: list[float]) -> PositionEstimate:
    """Build and solve in one step, keeping the ranged distances as diagnostics."""
    estimate = solve(build_system(anchors, distances_m))
    return PositionEstimate(
        x_m=estimate.x_m,
        y_m=estimate.y_m,
        method=estimate.method,
        residual_norm=estimate.residual_norm,
        condition_flag=estimate.condition_flag,
        distances_m=tuple(float(d) for d in distances_m),
    )


def locate_from_rssi(
    anchors: list[AnchorNode],
    rssi_dbm_per_anchor: list[float],
    model: PathLossModel,
    tx_power_dbm: float,
) -> PositionEstimate:
    """Range each anchor through the channel model, then locate."""
    if len(rssi_dbm_per_anchor) != len(anchors):
        raise ValueError(
            f"got {len(anchors)} anchors but {len(rssi_dbm_per_anchor)} RSSI values"
        )
    distances = [
        estimate_distance(model, tx_power_dbm, rssi) for rssi in rssi_dbm_per_anchor
    ]
    return locate(anchors, distances)
