"""Command-line front end.

Subcommands:
  calibrate  fit a channel model to a ranging CSV
  locate     position a transmitter from an observation log
  simulate   run one synthetic experiment and write its report CSV
  compare    run paired trilateration/multilateration replications
  curve      tabulate RSSI against distance for a model

Exit codes: 0 success, 1 usage error, 2 data or model error. Data goes to
the file named by --out/--output (standard output when omitted); all
diagnostics go to standard error. --plot additionally renders a figure
next to the delimited output.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import fileio
from .errors import LocalizationError
from .lateration import locate_from_rssi
from .metrics import position_error
from .pathloss import calibrate as calibrate_model
from .pathloss import predict_rssi
from .simulator import Scenario, compare_methods, normalize_method, run_trial

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 1 (not 2) on usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_scenario(args) -> Scenario:
    scenario = fileio.scenario_from_json(Path(args.scenario).read_text(encoding="utf-8"))
    if args.seed is not None:
        scenario = dataclasses.replace(scenario, seed=args.seed)
    return scenario


def _cmd_calibrate(args) -> int:
    samples = fileio.parse_ranging_samples(Path(args.input).read_text(encoding="utf-8"))
    model = calibrate_model(samples)
    Path(args.output).write_text(fileio.model_to_json(model), encoding="utf-8")
    print(f"plo_db={model.plo_db:.3f} eta={model.eta:.3f}", file=sys.stderr)
    return 0


def _cmd_locate(args) -> int:
    model = fileio.model_from_json(Path(args.model).read_text(encoding="utf-8"))
    anchors = fileio.parse_anchors(Path(args.anchors).read_text(encoding="utf-8"))
    records = fileio.parse_observations(
        Path(args.observations).read_text(encoding="utf-8"), strict=True
    )

    tx_ids = {r.tx_id for r in records}
    if len(tx_ids) > 1:
        raise LocalizationError(
            f"observations mix several transmitters ({', '.join(sorted(tx_ids))}); "
            "filter the log to one tx_id first"
        )

    method = normalize_method(args.method)
    anchors_used = anchors[:3] if method == "trilateration" else anchors

    rssi_avg = []
    for anchor in anchors_used:
        values = [r.rssi_dbm for r in records if r.rx_id == anchor.id]
        if not values:
            raise LocalizationError(f"no observations for anchor {anchor.id!r}")
        rssi_avg.append(sum(values) / len(values))

    estimate = locate_from_rssi(anchors_used, rssi_avg, model, args.tx_power)

    truth = next((r.truth for r in records if r.truth is not None), None)
    er = repr(position_error(estimate.position, truth)) if truth else ""
    header = "est_x_m,est_y_m,method,residual_norm,condition_flag,er_m"
    row = (
        f"{estimate.x_m!r},{estimate.y_m!r},{estimate.method},"
        f"{estimate.residual_norm!r},{estimate.condition_flag},{er}"
    )
    _write_output(header + "\n" + row + "\n", args.out)
    for anchor, rssi, distance in zip(anchors_used, rssi_avg, estimate.distances_m):
        print(
            f"{anchor.id}: mean rssi {rssi:.2f} dBm -> {distance:.3f} m",
            file=sys.stderr,
        )
    return 0


def _cmd_simulate(args) -> int:
    scenario = _load_scenario(args)
    report = run_trial(scenario, args.method)
    _write_output(fileio.report_to_csv(report), args.out)
    if args.plot:
        from . import plotting

        plotting.plot_report(report, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def _cmd_compare(args) -> int:
    scenario = _load_scenario(args)
    report = compare_methods(scenario, args.replications)
    _write_output(fileio.comparison_to_csv(report), args.out)
    print(
        f"mean GER: trilateration {report.mean_ger_tri_m:.3f} m, "
        f"multilateration {report.mean_ger_multi_m:.3f} m, "
        f"multilateration win rate {report.multi_win_rate:.3f}",
        file=sys.stderr,
    )
    if args.plot:
        from . import plotting

        plotting.plot_comparison(report, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def _cmd_curve(args) -> int:
    if args.dmin <= 0:
        raise LocalizationError(f"--dmin must be positive, got {args.dmin}")
    if args.dmax <= args.dmin:
        raise LocalizationError("--dmax must exceed --dmin")
    if args.points < 2:
        raise LocalizationError("--points must be at least 2")
    model = fileio.model_from_json(Path(args.model).read_text(encoding="utf-8"))
    step = (args.dmax - args.dmin) / (args.points - 1)
    distances = [args.dmin + i * step for i in range(args.points)]
    rssi = [predict_rssi(model, args.tx_power, d) for d in distances]
    _write_output(fileio.curve_to_csv(list(zip(distances, rssi))), args.out)
    if args.plot:
        from . import plotting

        plotting.plot_curve(distances, rssi, args.plot)
        print(f"figure written to {args.plot}", file=sys.stderr)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="rssiloc", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("calibrate", help="fit a channel model to ranging data")
    p.add_argument("--input", required=True, help="ranging CSV (distance_m,rssi_dbm,tx_power_dbm)")
    p.add_argument("--output", required=True, help="model JSON to write")
    p.set_defaults(handler=_cmd_calibrate)

    p = sub.add_parser("locate", help="position a transmitter from observations")
    p.add_argument("--model", required=True, help="channel model JSON")
    p.add_argument("--anchors", required=True, help="anchors CSV (rx_id,x_m,y_m); file order fixes the reference anchor")
    p.add_argument("--observations", required=True, help="observation log CSV")
    p.add_argument("--method", choices=["tri", "multi"], default="multi",
                   help="tri: first 3 anchors; multi: all anchors (default)")
    p.add_argument("--tx-power", type=float, required=True, help="transmit power, dBm")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.set_defaults(handler=_cmd_locate)

    p = sub.add_parser("simulate", help="run one synthetic experiment")
    p.add_argument("--scenario", required=True, help="scenario JSON")
    p.add_argument("--method", choices=["tri", "multi"], required=True)
    p.add_argument("--out", default=None, help="report CSV (default: stdout)")
    p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p.add_argument("--plot", default=None, help="also render the error figure to this file")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("compare", help="paired trilateration/multilateration replications")
    p.add_argument("--scenario", required=True, help="scenario JSON")
    p.add_argument("--replications", type=int, required=True)
    p.add_argument("--out", default=None, help="comparison CSV (default: stdout)")
    p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p.add_argument("--plot", default=None, help="also render the comparison figure to this file")
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("curve", help="tabulate RSSI against distance")
    p.add_argument("--model", required=True, help="channel model JSON")
    p.add_argument("--tx-power", type=float, required=True, help="transmit power, dBm")
    p.add_argument("--dmin", type=float, required=True, help="smallest distance, m")
    p.add_argument("--dmax", type=float, required=True, help="largest distance, m")
    p.add_argument("--points", type=int, required=True, help="number of samples")
    p.add_argument("--out", default=None, help="curve CSV (default: stdout)")
    p.add_argument("--plot", default=None, help="also render the curve figure to this file")
    p.set_defaults(handler=_cmd_curve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return args.handler(args)
    except (LocalizationError, ValueError, OSError) as exc:
        print(f"rssiloc {args.command}: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
