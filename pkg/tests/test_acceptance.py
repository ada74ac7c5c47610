"""Acceptance suite: one test per release criterion, at pinned tolerances.

Run with ``pytest tests/test_acceptance.py -s`` to see one verdict line per
criterion; each test also fails loudly with the measured values.
"""

import math

import numpy as np
import pytest

from rssiloc import (
    AnchorNode,
    PathLossModel,
    RangingSample,
    SingularGeometryError,
    calibrate,
    cli,
    compare_methods,
    default_paper_scenario,
    estimate_distance,
    locate,
    position_error,
    predict_rssi,
)

PAPER_MODEL = PathLossModel(plo_db=32.769, eta=2.185, d0_m=1.0)

FIG5_ANCHORS = [
    AnchorNode("Rx1", 2.0, 6.0),
    AnchorNode("Rx2", 6.0, 8.0),
    AnchorNode("Rx3", 6.0, 2.0),
    AnchorNode("Rx4", 9.0, 5.0),
]


def _verdict(criterion: str, passed: bool, detail: str) -> str:
    line = f"[acceptance] {criterion}: {'PASS' if passed else 'FAIL'} ({detail})"
    print(line)
    return line


def test_criterion_1_worked_geometry_oracle():
    # Anchors 1-3 with exact distances to (4,6); by hand the linearized
    # system reduces to x - y = -2 and y = 6.
    estimate = locate(FIG5_ANCHORS[:3], [2.0, math.sqrt(8.0), math.sqrt(20.0)])
    error = position_error(estimate.position, (4.0, 6.0))
    ok = error <= 1e-6
    line = _verdict(
        "criterion 1 (worked geometry)", ok,
        f"estimate ({estimate.x_m:.9f}, {estimate.y_m:.9f}), error {error:.3e} m",
    )
    assert ok, line


def _random_non_collinear_anchors(rng, n):
    while True:
        anchors = [
            AnchorNode(f"a{k}", rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0))
            for k in range(n)
        ]
        areas = [
            abs(
                (anchors[j].x_m - anchors[i].x_m) * (anchors[k].y_m - anchors[i].y_m)
                - (anchors[k].x_m - anchors[i].x_m) * (anchors[j].y_m - anchors[i].y_m)
            )
            / 2.0
            for i in range(n)
            for j in range(i + 1, n)
            for k in range(j + 1, n)
        ]
        if max(areas) > 0.5:
            return anchors


def test_criterion_2_exact_recovery_sweep():
    rng = np.random.default_rng(2202)
    worst = 0.0
    for case in range(1000):
        n = 3 if case % 2 == 0 else 4
        anchors = _random_non_collinear_anchors(rng, n)
        target = (rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0))
        distances = [
            math.hypot(target[0] - a.x_m, target[1] - a.y_m) for a in anchors
        ]
        estimate = locate(anchors, distances)
        worst = max(worst, position_error(estimate.position, target))
    ok = worst <= 1e-6
    line = _verdict(
        "criterion 2 (exact recovery, 1000 configs)", ok, f"max ER {worst:.3e} m"
    )
    assert ok, line


def test_criterion_3_calibration_fixed_point():
    tx = 14.0
    samples = [
        RangingSample(d, predict_rssi(PAPER_MODEL, tx, d), tx)
        for d in np.logspace(0.0, 2.0, 20)
    ]
    fitted = calibrate(samples)
    plo_error = abs(fitted.plo_db - 32.769)
    eta_error = abs(fitted.eta - 2.185)
    ok = plo_error <= 1e-9 and eta_error <= 1e-9
    line = _verdict(
        "criterion 3 (calibration fixed point)", ok,
        f"plo_db off by {plo_error:.2e}, eta off by {eta_error:.2e}",
    )
    assert ok, line


def test_criterion_4_round_trip_ranging():
    rng = np.random.default_rng(2204)
    worst = 0.0
    for _ in range(10_000):
        tx = rng.uniform(-10.0, 20.0)
        d = 10.0 ** rng.uniform(math.log10(0.1), math.log10(1000.0))
        back = estimate_distance(PAPER_MODEL, tx, predict_rssi(PAPER_MODEL, tx, d))
        worst = max(worst, abs(back - d) / d)
    ok = worst <= 1e-9
    line = _verdict(
        "criterion 4 (round-trip ranging, 1e4 cases)", ok,
        f"max relative error {worst:.3e}",
    )
    assert ok, line


def test_criterion_5_statistical_reproduction():
    report = compare_methods(default_paper_scenario(), 200)
    ordering_ok = report.mean_ger_multi_m < report.mean_ger_tri_m
    win_rate_ok = report.multi_win_rate >= 0.9
    band_ok = (
        0.5 <= report.mean_ger_multi_m <= 5.0 and 0.5 <= report.mean_ger_tri_m <= 5.0
    )
    ok = ordering_ok and win_rate_ok and band_ok
    line = _verdict(
        "criterion 5 (statistical reproduction, 200 reps)", ok,
        f"mean GER multi {report.mean_ger_multi_m:.3f} m vs tri "
        f"{report.mean_ger_tri_m:.3f} m (ordering {'ok' if ordering_ok else 'VIOLATED'}), "
        f"win rate {report.multi_win_rate:.3f} (need >= 0.9: "
        f"{'ok' if win_rate_ok else 'VIOLATED'}), "
        f"band [0.5, 5.0] {'ok' if band_ok else 'VIOLATED'}",
    )
    assert ok, line


def test_criterion_6_curve_shape(tmp_path):
    model_path = tmp_path / "model.json"
    model_path.write_text('{"plo_db": 32.769, "eta": 2.185, "d0_m": 1.0}\n')
    out = tmp_path / "curve.csv"
    exit_code = cli.main([
        "curve", "--model", str(model_path), "--tx-power", "14",
        "--dmin", "1", "--dmax", "10", "--points", "50", "--out", str(out),
    ])
    assert exit_code == 0
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    distances = [float(r[0]) for r in rows]
    rssi = [float(r[1]) for r in rows]
    decreasing = all(a > b for a, b in zip(rssi, rssi[1:]))
    # Second divided differences of rssi against log10(distance); the model
    # is linear there, so they must be non-positive within tolerance.
    u = [math.log10(d) for d in distances]
    second = [
        ((rssi[i + 2] - rssi[i + 1]) / (u[i + 2] - u[i + 1])
         - (rssi[i + 1] - rssi[i]) / (u[i + 1] - u[i])) / (u[i + 2] - u[i])
        for i in range(len(u) - 2)
    ]
    convex_ok = max(second) <= 1e-9
    ok = decreasing and convex_ok
    line = _verdict(
        "criterion 6 (curve shape)", ok,
        f"strictly decreasing: {decreasing}, max second difference "
        f"{max(second):.2e} (need <= 1e-9)",
    )
    assert ok, line


def test_criterion_7_degenerate_geometry():
    collinear = [
        AnchorNode("a", 0.0, 0.0),
        AnchorNode("b", 1.0, 0.0),
        AnchorNode("c", 2.0, 0.0),
    ]
    raised = False
    try:
        locate(collinear, [1.0, 1.0, 1.0])
    except SingularGeometryError:
        raised = True

    near = [
        AnchorNode("a", 0.0, 0.0),
        AnchorNode("b", 1.0, 1e-8),
        AnchorNode("c", 2.0, 0.0),
    ]
    estimate = locate(near, [1.0, 1.2, 1.0])
    flagged = estimate.condition_flag == "near-singular"
    ok = raised and flagged
    line = _verdict(
        "criterion 7 (degenerate geometry)", ok,
        f"collinear raised: {raised}, 1e-8 perturbation flag: "
        f"{estimate.condition_flag!r}",
    )
    assert ok, line


def test_criterion_8_byte_identical_compare(tmp_path):
    from rssiloc.fileio import scenario_to_json

    scenario_path = tmp_path / "scenario.json"
    scenario_path.write_text(scenario_to_json(default_paper_scenario()))
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    argv = ["compare", "--scenario", str(scenario_path), "--replications", "50"]
    assert cli.main(argv + ["--out", str(out_a)]) == 0
    assert cli.main(argv + ["--out", str(out_b)]) == 0
    identical = out_a.read_bytes() == out_b.read_bytes()
    line = _verdict(
        "criterion 8 (deterministic compare)", identical,
        f"two runs, {len(out_a.read_bytes())} bytes each, identical: {identical}",
    )
    assert identical, line
