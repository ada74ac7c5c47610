"""CSV and JSON readers/writers for every file format the tools exchange.

Formats (headers are exact):
  observations  tx_id,rx_id,rssi_dbm,snr_db,timestamp,truth_x_m,truth_y_m
  ranging       distance_m,rssi_dbm,tx_power_dbm
  anchors       rx_id,x_m,y_m
  report        placement_index,actual_x,actual_y,est_x,est_y,er_m + ger footer
  comparison    replication,ger_tri_m,ger_multi_m + mean / win-rate footer
  curve         distance_m,rssi_dbm
  model         JSON object with keys plo_db, eta, d0_m
  scenario      JSON object mirroring the Scenario type

Floats are written in shortest round-trip form (repr), so a text round
trip reproduces every value exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from .errors import RowParseError, SchemaError
from .lateration import AnchorNode
from .metrics import LocalizationReport, position_error, summarize
from .pathloss import PathLossModel, RangingSample
from .simulator import ComparisonReport, FieldSize, Scenario

OBSERVATION_HEADER = ("tx_id", "rx_id", "rssi_dbm", "snr_db", "timestamp", "truth_x_m", "truth_y_m")
OBSERVATION_MANDATORY = ("tx_id", "rx_id", "rssi_dbm")
RANGING_HEADER = ("distance_m", "rssi_dbm", "tx_power_dbm")
ANCHOR_HEADER = ("rx_id", "x_m", "y_m")
REPORT_HEADER = ("placement_index", "actual_x", "actual_y", "est_x", "est_y", "er_m")
COMPARISON_HEADER = ("replication", "ger_tri_m", "ger_multi_m")
CURVE_HEADER = ("distance_m", "rssi_dbm")


@dataclass(frozen=True)
class ObservationRecord:
    """One row of a field log; ``line`` is its 1-based source line number."""

    tx_id: str
    rx_id: str
    rssi_dbm: float
    snr_db: float | None = None
    timestamp: str | None = None
    truth_x_m: float | None = None
    truth_y_m: float | None = None
    line: int = 0

    @property
    def truth(self) -> tuple[float, float] | None:
        if self.truth_x_m is None or self.truth_y_m is None:
            return None
        return (self.truth_x_m, self.truth_y_m)


def _fmt(value: float) -> str:
    return repr(float(value))


def _read_rows(csv_text: str, kind: str) -> tuple[dict[str, int], list[tuple[int, list[str]]]]:
    """Split CSV text into a header index map and (line, fields) data rows."""
    rows = list(csv.reader(io.StringIO(csv_text)))
    if not rows or not any(any(field.strip() for field in row) for row in rows):
        raise SchemaError(f"empty {kind} file")
    header = [name.strip() for name in rows[0]]
    columns = {name: i for i, name in enumerate(header)}
    data = [
        (line, row)
        for line, row in enumerate(rows[1:], start=2)
        if any(field.strip() for field in row)
    ]
    return columns, data


def _require_columns(columns: dict[str, int], required: tuple[str, ...], kind: str) -> None:
    for name in required:
        if name not in columns:
            raise SchemaError(f"{kind} file is missing the {name!r} column")


def _cell(row: list[str], columns: dict[str, int], name: str) -> str:
    index = columns.get(name)
    if index is None or index >= len(row):
        return ""
    return row[index].strip()


def _parse_float(value: str, name: str, line: int, optional: bool = False) -> float | None:
    if value == "":
        if optional:
            return None
        raise RowParseError(line, f"column {name!r} is empty")
    try:
        parsed = float(value)
    except ValueError:
        raise RowParseError(line, f"column {name!r}: cannot parse {value!r} as a number") from None
    if not math.isfinite(parsed):
        raise RowParseError(line, f"column {name!r}: value {value!r} is not finite")
    return parsed


def parse_observations(csv_text: str, strict: bool = False) -> list[ObservationRecord]:
    """Parse a field log. With ``strict`` a file without data rows is an error."""
    columns, data = _read_rows(csv_text, "observations")
    _require_columns(columns, OBSERVATION_MANDATORY, "observations")
    if strict and not data:
        raise SchemaError("observations file has a header but no data rows")

    records = []
    for line, row in data:
        tx_id = _cell(row, columns, "tx_id")
        rx_id = _cell(row, columns, "rx_id")
        if not tx_id or not rx_id:
            raise RowParseError(line, "tx_id and rx_id must be non-empty")
        rssi = _parse_float(_cell(row, columns, "rssi_dbm"), "rssi_dbm", line)
        snr = _parse_float(_cell(row, columns, "snr_db"), "snr_db", line, optional=True)
        timestamp = _cell(row, columns, "timestamp") or None
        truth_x = _parse_float(_cell(row, columns, "truth_x_m"), "truth_x_m", line, optional=True)
        truth_y = _parse_float(_cell(row, columns, "truth_y_m"), "truth_y_m", line, optional=True)
        if (truth_x is None) != (truth_y is None):
            raise RowParseError(line, "truth_x_m and truth_y_m must be present together")
        records.append(
            ObservationRecord(
                tx_id=tx_id,
                rx_id=rx_id,
                rssi_dbm=rssi,
                snr_db=snr,
                timestamp=timestamp,
                truth_x_m=truth_x,
                truth_y_m=truth_y,
                line=line,
            )
        )
    return records


def parse_ranging_samples(csv_text: str) -> list[RangingSample]:
    """Parse a calibration set of (distance, rssi, tx power) rows."""
    columns, data = _read_rows(csv_text, "ranging")
    _require_columns(columns, RANGING_HEADER, "ranging")
    samples = []
    for line, row in data:
        try:
            samples.append(
                RangingSample(
                    distance_m=_parse_float(_cell(row, columns, "distance_m"), "distance_m", line),
                    rssi_dbm=_parse_float(_cell(row, columns, "rssi_dbm"), "rssi_dbm", line),
                    tx_power_dbm=_parse_float(
                        _cell(row, columns, "tx_power_dbm"), "tx_power_dbm", line
                    ),
                )
            )
        except ValueError as exc:
            if isinstance(exc, RowParseError):
                raise
            raise RowParseError(line, str(exc)) from None
    return samples


def parse_anchors(csv_text: str) -> list[AnchorNode]:
    """Parse anchor positions; file order is preserved and meaningful
    (the last listed anchor becomes the lateration reference)."""
    columns, data = _read_rows(csv_text, "anchors")
    _require_columns(columns, ANCHOR_HEADER, "anchors")
    anchors = []
    seen = set()
    for line, row in data:
        rx_id = _cell(row, columns, "rx_id")
        if not rx_id:
            raise RowParseError(line, "rx_id must be non-empty")
        if rx_id in seen:
            raise RowParseError(line, f"duplicate anchor id {rx_id!r}")
        seen.add(rx_id)
        anchors.append(
            AnchorNode(
                id=rx_id,
                x_m=_parse_float(_cell(row, columns, "x_m"), "x_m", line),
                y_m=_parse_float(_cell(row, columns, "y_m"), "y_m", line),
            )
        )
    return anchors


def model_to_json(model: PathLossModel) -> str:
    return json.dumps(
        {"plo_db": model.plo_db, "eta": model.eta, "d0_m": model.d0_m}, indent=2
    ) + "\n"


def model_from_json(text: str) -> PathLossModel:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"model file is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise SchemaError("model file must hold a JSON object")
    try:
        return PathLossModel(
            plo_db=float(raw["plo_db"]),
            eta=float(raw["eta"]),
            d0_m=float(raw.get("d0_m", 1.0)),
        )
    except KeyError as exc:
        raise SchemaError(f"model file is missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"model file holds invalid values: {exc}") from None


def scenario_to_json(scenario: Scenario) -> str:
    payload = {
        "field": {"width_m": scenario.field.width_m, "height_m": scenario.field.height_m},
        "anchors": [
            {"id": a.id, "x_m": a.x_m, "y_m": a.y_m} for a in scenario.anchors
        ],
        "targets": [[x, y] for x, y in scenario.targets],
        "model": {
            "plo_db": scenario.model.plo_db,
            "eta": scenario.model.eta,
            "d0_m": scenario.model.d0_m,
        },
        "tx_power_dbm": scenario.tx_power_dbm,
        "shadowing_sigma_db": scenario.shadowing_sigma_db,
        "samples_per_link": scenario.samples_per_link,
        "seed": scenario.seed,
    }
    return json.dumps(payload, indent=2) + "\n"


def scenario_from_json(text: str) -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"scenario file is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise SchemaError("scenario file must hold a JSON object")
    try:
        return Scenario(
            field=FieldSize(
                width_m=float(raw["field"]["width_m"]),
                height_m=float(raw["field"]["height_m"]),
            ),
            anchors=tuple(
                AnchorNode(id=str(a["id"]), x_m=float(a["x_m"]), y_m=float(a["y_m"]))
                for a in raw["anchors"]
            ),
            targets=tuple((float(t[0]), float(t[1])) for t in raw["targets"]),
            model=PathLossModel(
                plo_db=float(raw["model"]["plo_db"]),
                eta=float(raw["model"]["eta"]),
                d0_m=float(raw["model"].get("d0_m", 1.0)),
            ),
            tx_power_dbm=float(raw["tx_power_dbm"]),
            shadowing_sigma_db=float(raw["shadowing_sigma_db"]),
            samples_per_link=int(raw["samples_per_link"]),
            seed=int(raw["seed"]),
        )
    except (KeyError, IndexError) as exc:
        raise SchemaError(f"scenario file is missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"scenario file holds invalid values: {exc}") from None


def report_to_csv(report: LocalizationReport) -> str:
    lines = [",".join(REPORT_HEADER)]
    for index, p in enumerate(report.placements, start=1):
        lines.append(
            f"{index},{_fmt(p.actual[0])},{_fmt(p.actual[1])},"
            f"{_fmt(p.estimated[0])},{_fmt(p.estimated[1])},{_fmt(p.er_m)}"
        )
    lines.append(f"ger,,,,,{_fmt(report.ger_m)}")
    return "\n".join(lines) + "\n"


def report_from_csv(csv_text: str, method: str) -> LocalizationReport:
    """Rebuild a report from its CSV form; the ger footer is cross-checked."""
    columns, data = _read_rows(csv_text, "report")
    _require_columns(columns, REPORT_HEADER, "report")
    placements = []
    footer_ger = None
    for line, row in data:
        index = _cell(row, columns, "placement_index")
        if index == "ger":
            footer_ger = _parse_float(_cell(row, columns, "er_m"), "er_m", line)
            continue
        actual = (
            _parse_float(_cell(row, columns, "actual_x"), "actual_x", line),
            _parse_float(_cell(row, columns, "actual_y"), "actual_y", line),
        )
        estimated = (
            _parse_float(_cell(row, columns, "est_x"), "est_x", line),
            _parse_float(_cell(row, columns, "est_y"), "est_y", line),
        )
        stored_er = _parse_float(_cell(row, columns, "er_m"), "er_m", line)
        if abs(stored_er - position_error(estimated, actual)) > 1e-6:
            raise RowParseError(line, "er_m does not match the stored coordinates")
        placements.append((actual, estimated))
    if not placements:
        raise SchemaError("report file has no placement rows")
    report = summarize(placements, method)
    if footer_ger is not None and abs(footer_ger - report.ger_m) > 1e-6:
        raise SchemaError("report ger footer does not match the placement rows")
    return report


def comparison_to_csv(report: ComparisonReport) -> str:
    lines = [",".join(COMPARISON_HEADER)]
    for rep, (tri, multi) in enumerate(
        zip(report.ger_tri_m, report.ger_multi_m), start=1
    ):
        lines.append(f"{rep},{_fmt(tri)},{_fmt(multi)}")
    lines.append(f"mean,{_fmt(report.mean_ger_tri_m)},{_fmt(report.mean_ger_multi_m)}")
    lines.append(f"multi_win_rate,{_fmt(report.multi_win_rate)},")
    return "\n".join(lines) + "\n"


def curve_to_csv(points: list[tuple[float, float]]) -> str:
    lines = [",".join(CURVE_HEADER)]
    for distance, rssi in points:
        lines.append(f"{_fmt(distance)},{_fmt(rssi)}")
    return "\n".join(lines) + "\n"
