import math

import numpy as np
import pytest

from rssiloc import (
    DegenerateInputError,
    PathLossModel,
    RangingSample,
    calibrate,
    estimate_distance,
    predict_rssi,
)

PAPER_MODEL = PathLossModel(plo_db=32.769, eta=2.185, d0_m=1.0)


def test_predict_at_reference_distance():
    assert predict_rssi(PAPER_MODEL, 0.0, 1.0) == pytest.approx(-32.769, abs=1e-12)


def test_predict_at_ten_meters():
    # 10 * 2.185 * log10(10) = 21.85 dB below the 1 m value
    assert predict_rssi(PAPER_MODEL, 0.0, 10.0) == pytest.approx(-54.619, abs=1e-12)


def test_predict_reference_distance_any_model():
    model = PathLossModel(plo_db=40.0, eta=3.1, d0_m=2.5)
    assert predict_rssi(model, 17.0, 2.5) == pytest.approx(17.0 - 40.0, abs=1e-12)


def test_predict_rejects_nonpositive_distance():
    with pytest.raises(ValueError):
        predict_rssi(PAPER_MODEL, 0.0, 0.0)
    with pytest.raises(ValueError):
        predict_rssi(PAPER_MODEL, 0.0, -3.0)


def test_estimate_distance_paper_values():
    assert estimate_distance(PAPER_MODEL, 0.0, -32.769) == pytest.approx(1.0, rel=1e-12)
    assert estimate_distance(PAPER_MODEL, 0.0, -54.619) == pytest.approx(10.0, rel=1e-12)


def test_estimate_distance_at_model_offset_gives_reference():
    model = PathLossModel(plo_db=28.0, eta=1.9, d0_m=3.0)
    assert estimate_distance(model, 5.0, 5.0 - 28.0) == pytest.approx(3.0, rel=1e-12)


def test_estimate_distance_infinite_rssi_maps_to_zero():
    assert estimate_distance(PAPER_MODEL, 0.0, math.inf) == 0.0


def test_round_trip_sweep():
    rng = np.random.default_rng(101)
    for _ in range(10_000):
        model = PathLossModel(
            plo_db=rng.uniform(20.0, 60.0),
            eta=rng.uniform(1.5, 5.0),
            d0_m=rng.uniform(0.5, 2.0),
        )
        tx = rng.uniform(-10.0, 20.0)
        d = 10.0 ** rng.uniform(-1.0, 3.0)
        back = estimate_distance(model, tx, predict_rssi(model, tx, d))
        assert back == pytest.approx(d, rel=1e-9)


def test_predict_strictly_decreasing_in_distance():
    distances = np.logspace(-1, 3, 500)
    values = [predict_rssi(PAPER_MODEL, 14.0, d) for d in distances]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_calibrate_two_point_exact():
    samples = [
        RangingSample(distance_m=1.0, rssi_dbm=-32.769, tx_power_dbm=0.0),
        RangingSample(distance_m=10.0, rssi_dbm=-54.619, tx_power_dbm=0.0),
    ]
    model = calibrate(samples)
    assert model.plo_db == pytest.approx(32.769, abs=1e-9)
    assert model.eta == pytest.approx(2.185, abs=1e-9)
    assert model.d0_m == 1.0


def test_calibrate_noiseless_fixed_point():
    rng = np.random.default_rng(77)
    for _ in range(20):
        true = PathLossModel(
            plo_db=rng.uniform(25.0, 50.0), eta=rng.uniform(1.5, 4.0), d0_m=1.0
        )
        tx = rng.uniform(0.0, 20.0)
        samples = [
            RangingSample(d, predict_rssi(true, tx, d), tx)
            for d in np.logspace(0.0, 2.0, 20)
        ]
        fitted = calibrate(samples)
        assert fitted.plo_db == pytest.approx(true.plo_db, abs=1e-9)
        assert fitted.eta == pytest.approx(true.eta, abs=1e-9)


def test_calibrate_symmetric_perturbation_cancels():
    # Perturbations (+k, -k, -k, +k) at log-distances mirrored about their
    # center are orthogonal to both regressors, so the fit is unchanged.
    true = PathLossModel(plo_db=32.769, eta=2.185)
    tx = 14.0
    distances = [10.0**-1.5, 10.0**-0.5, 10.0**0.5, 10.0**1.5]
    k = 4.0
    perturbation = [k, -k, -k, k]
    clean = [RangingSample(d, predict_rssi(true, tx, d), tx) for d in distances]
    noisy = [
        RangingSample(d, predict_rssi(true, tx, d) + p, tx)
        for d, p in zip(distances, perturbation)
    ]
    fit_clean = calibrate(clean)
    fit_noisy = calibrate(noisy)
    assert fit_noisy.plo_db == pytest.approx(fit_clean.plo_db, abs=1e-9)
    assert fit_noisy.eta == pytest.approx(fit_clean.eta, abs=1e-9)


def test_calibrate_residuals_sum_to_zero():
    rng = np.random.default_rng(5)
    samples = [
        RangingSample(d, predict_rssi(PAPER_MODEL, 14.0, d) + rng.normal(0, 3), 14.0)
        for d in np.logspace(0, 1.5, 25)
    ]
    model = calibrate(samples)
    residuals = [
        (s.tx_power_dbm - s.rssi_dbm)
        - (model.plo_db + 10.0 * model.eta * math.log10(s.distance_m / model.d0_m))
        for s in samples
    ]
    assert abs(sum(residuals)) < 1e-6


def test_calibrate_custom_reference_distance():
    true = PathLossModel(plo_db=20.0, eta=2.5, d0_m=2.0)
    samples = [
        RangingSample(d, predict_rssi(true, 0.0, d), 0.0) for d in (2.0, 8.0, 32.0)
    ]
    fitted = calibrate(samples, d0_m=2.0)
    assert fitted.d0_m == 2.0
    assert fitted.plo_db == pytest.approx(20.0, abs=1e-9)
    assert fitted.eta == pytest.approx(2.5, abs=1e-9)


def test_calibrate_rejects_degenerate_inputs():
    one = [RangingSample(1.0, -30.0, 0.0)]
    with pytest.raises(DegenerateInputError):
        calibrate(one)
    same_distance = [
        RangingSample(5.0, -40.0, 0.0),
        RangingSample(5.0, -41.0, 0.0),
        RangingSample(5.0, -39.0, 0.0),
    ]
    with pytest.raises(DegenerateInputError):
        calibrate(same_distance)


def test_model_validation():
    with pytest.raises(ValueError):
        PathLossModel(plo_db=math.nan, eta=2.0)
    with pytest.raises(ValueError):
        PathLossModel(plo_db=30.0, eta=0.0)
    with pytest.raises(ValueError):
        PathLossModel(plo_db=30.0, eta=2.0, d0_m=-1.0)


def test_ranging_sample_validation():
    with pytest.raises(ValueError):
        RangingSample(distance_m=0.0, rssi_dbm=-30.0, tx_power_dbm=0.0)
    with pytest.raises(ValueError):
        RangingSample(distance_m=1.0, rssi_dbm=math.inf, tx_power_dbm=0.0)
