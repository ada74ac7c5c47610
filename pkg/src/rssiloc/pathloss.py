"""Log-distance path-loss channel model and its calibration.

The model describes received power as a linear function of log-distance:

    rssi = tx_power - plo_db - 10 * eta * log10(d / d0)

with ``plo_db`` the channel loss at the reference distance ``d0_m`` and
``eta`` the dimensionless attenuation exponent (2 in free space). All
powers are in dBm, all distances in meters; there is no linear-watt
representation anywhere in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateInputError


@dataclass(frozen=True)
class PathLossModel:
    """Calibrated channel parameters governing the RSSI/distance relation.

    Attributes:
        plo_db: path loss at the reference distance, decibels.
        eta: attenuation exponent, dimensionless, > 0.
        d0_m: reference distance, meters, > 0 (1 m by convention).
    """

    plo_db: float
    eta: float
    d0_m: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.plo_db):
            raise ValueError(f"plo_db must be finite, got {self.plo_db!r}")
        if not (self.eta > 0 and math.isfinite(self.eta)):
            raise ValueError(f"eta must be positive and finite, got {self.eta!r}")
        if not (self.d0_m > 0 and math.isfinite(self.d0_m)):
            raise ValueError(f"d0_m must be positive and finite, got {self.d0_m!r}")


@dataclass(frozen=True)
class RangingSample:
    """One calibration observation at a known transmitter-receiver separation."""

    distance_m: float
    rssi_dbm: float
    tx_power_dbm: float

    def __post_init__(self) -> None:
        if not (self.distance_m > 0 and math.isfinite(self.distance_m)):
            raise ValueError(f"distance_m must be positive, got {self.distance_m!r}")
        if not math.isfinite(self.rssi_dbm):
            raise ValueError(f"rssi_dbm must be finite, got {self.rssi_dbm!r}")
        if not math.isfinite(self.tx_power_dbm):
            raise ValueError(f"tx_power_dbm must be finite, got {self.tx_power_dbm!r}")


def predict_rssi(model: PathLossModel, tx_power_dbm: float, distance_m: float) -> float:
    """Deterministic received power, dBm, at ``distance_m`` from the transmitter.

    Raises ValueError for non-positive distance.
    """
    if not distance_m > 0:
        raise ValueError(f"distance_m must be positive, got {distance_m!r}")
    return tx_power_dbm - model.plo_db - 10.0 * model.eta * math.log10(distance_m / model.d0_m)


def estimate_distance(model: PathLossModel, tx_power_dbm: float, rssi_dbm: float) -> float:
    """Invert the channel model: distance in meters implied by a received power.

    Exact inverse of :func:`predict_rssi`; any finite RSSI maps to a positive
    distance (an infinitely strong RSSI maps to 0).
    """
    return model.d0_m * 10.0 ** ((tx_power_dbm - model.plo_db - rssi_dbm) / (10.0 * model.eta))


def calibrate(samples: list[RangingSample], d0_m: float = 1.0) -> PathLossModel:
    """Fit (plo_db, eta) to measured samples by ordinary least squares.

    The regression is in the dB plane: measured loss (tx_power - rssi)
    against 10*log10(distance / d0). The slope is eta, the intercept plo_db.
    Requires at least two samples at two distinct distances.
    """
    if not d0_m > 0:
        raise ValueError(f"d0_m must be positive, got {d0_m!r}")
    if len(samples) < 2:
        raise DegenerateInputError(
            f"calibration needs at least 2 samples, got {len(samples)}"
        )
    if len({s.distance_m for s in samples}) < 2:
        raise DegenerateInputError(
            "calibration needs samples at two or more distinct distances"
        )

    us = [10.0 * math.log10(s.distance_m / d0_m) for s in samples]
    losses = [s.tx_power_dbm - s.rssi_dbm for s in samples]
    n = len(samples)
    u_mean = sum(us) / n
    l_mean = sum(losses) / n
    suu = sum((u - u_mean) ** 2 for u in us)
    sul = sum((u - u_mean) * (l - l_mean) for u, l in zip(us, losses))
    eta = sul / suu
    plo_db = l_mean - eta * u_mean
    return PathLossModel(plo_db=plo_db, eta=eta, d0_m=d0_m)
