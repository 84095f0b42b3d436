"""Ingestion of the per-source statistics dataset (flat CSV rendering of the workbook)."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Union

from .errors import (
    InputError,
    Malformed,
    RowError,
    SchemaViolation,
    UnknownParameter,
    UnknownScenario,
    UnknownStatistic,
)
from .fitting import StatPoint
from .types import (
    LG_ANGLES,
    PLYWOOD,
    Condition,
    Parameter,
    ParameterKind,
    Release,
    Scenario,
    SourceType,
    StatisticKind,
)

COLUMNS = (
    "sheet",
    "condition",
    "source",
    "source_type",
    "release",
    "freq_ghz",
    "bandwidth_mhz",
    "value",
    "weight",
)
HEADER = ",".join(COLUMNS)

DS_MEAN_BAND = (-9.0, -5.0)
ANGLE_MEAN_BAND = (-1.0, 3.0)


class Special(Enum):
    References = "List of References"
    NumClusters = "#cluster"
    PlywoodPenLoss = "Plywood_Pen_Loss"


_SPECIAL_BY_RAW = {s.value: s for s in Special}

_PARAM_TOKENS = {p.value: p for p in ParameterKind}
del _PARAM_TOKENS["ClusterASD"]
_PARAM_TOKENS["Cluster_ASD"] = ParameterKind.ClusterASD
_TOKEN_BY_PARAM = {p: t for t, p in _PARAM_TOKENS.items()}


@dataclass(frozen=True)
class SheetName:
    raw: str
    scenario: Optional[Scenario] = None
    statistic: Optional[StatisticKind] = None
    parameter: Optional[Parameter] = None
    special: Optional[Special] = None

    @property
    def is_triple(self) -> bool:
        return self.special is None

    def format(self) -> str:
        if self.special is not None:
            return self.special.value
        return f"{self.scenario.value}_{self.statistic.value}_{_TOKEN_BY_PARAM[self.parameter]}"

    def binding(self) -> dict:
        if self.special is Special.PlywoodPenLoss:
            return {"scenario": None, "statistic": "Mean", "parameter": str(PLYWOOD)}
        if self.special is Special.NumClusters:
            return {"scenario": None, "statistic": "Mean", "parameter": "NumClusters"}
        if self.special is Special.References:
            return {"scenario": None, "statistic": None, "parameter": None}
        return {
            "scenario": self.scenario.value,
            "statistic": self.statistic.value,
            "parameter": self.parameter.value,
        }


def parse_sheet_name(raw: str) -> SheetName:
    """Parse ``Scenario_Statistic_Parameter`` (case-sensitive) or a special sheet name."""
    if raw in _SPECIAL_BY_RAW:
        return SheetName(raw, special=_SPECIAL_BY_RAW[raw])
    parts = raw.split("_", 2)
    if len(parts) != 3 or not all(parts):
        raise Malformed(raw, raw, "expected Scenario_Statistic_Parameter")
    scen, stat, param = parts
    try:
        scenario = Scenario(scen)
    except ValueError:
        raise UnknownScenario(raw, scen, "unknown scenario") from None
    try:
        statistic = StatisticKind(stat)
    except ValueError:
        raise UnknownStatistic(raw, stat, "unknown statistic") from None
    if param not in _PARAM_TOKENS:
        raise UnknownParameter(raw, param, "unknown parameter")
    return SheetName(raw, scenario, statistic, _PARAM_TOKENS[param])


SHEET_INVENTORY = (
    "List of References",
    "UMi_Mean_DS",
    "UMi_Std_DS",
    "UMi_Mean_ASA",
    "UMi_Std_ASA",
    "UMa_Mean_DS",
    "UMa_Std_DS",
    "UMa_Mean_ASD",
    "UMa_Std_ASD",
    "UMa_Mean_ASA",
    "UMa_Std_ASA",
    "UMa_Mean_ZSA",
    "UMa_Std_ZSA",
    "UMi_Mean_ASD",
    "UMi_Std_ASD",
    "UMi_Mean_ZSA",
    "UMi_Std_ZSA",
    "#cluster",
    "Plywood_Pen_Loss",
    "SMa_Mean_DS",
    "SMa_Std_DS",
    "SMa_Mean_ASA",
    "SMa_Std_ASA",
    "SMa_Mean_ZSA",
    "SMa_Std_ZSA",
    "SMa_Mean_ASD",
    "SMa_Std_ASD",
    "SMa_Mean_Cluster_ASD",
    "UMa_Mean_Cluster_ASD",
)


@dataclass(frozen=True)
class Diagnostic:
    line: Optional[int]
    message: str
    severity: str = "error"
    lines: tuple[int, ...] = ()

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{self.severity}: {where}{self.message}"

    def to_dict(self) -> dict:
        return {"severity": self.severity, "line": self.line, "message": self.message}


@dataclass
class DatasetManifest:
    counts: dict[str, int] = field(default_factory=dict)
    bindings: dict[str, dict] = field(default_factory=dict)
    checksum: str = ""

    @classmethod
    def empty(cls, checksum: str = "") -> "DatasetManifest":
        m = cls(checksum=checksum)
        for raw in SHEET_INVENTORY:
            m.counts[raw] = 0
            m.bindings[raw] = parse_sheet_name(raw).binding()
        return m

    def add(self, sheet: SheetName) -> None:
        self.counts[sheet.raw] = self.counts.get(sheet.raw, 0) + 1
        self.bindings.setdefault(sheet.raw, sheet.binding())

    def to_dict(self) -> dict:
        return {"checksum": self.checksum, "counts": self.counts, "bindings": self.bindings}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "DatasetManifest":
        return cls(dict(d["counts"]), dict(d["bindings"]), d["checksum"])


@dataclass
class IngestResult:
    points: list[StatPoint]
    manifest: DatasetManifest
    diagnostics: list[Diagnostic]


def _parse_bandwidth(text: str) -> Union[float, str]:
    if text in ("NA", "CW"):
        return text
    bw = float(text)
    if not (math.isfinite(bw) and bw > 0):
        raise ValueError
    return bw


def _parse_row(row: dict, line: int, sheet_cache: dict) -> tuple[Optional[SheetName], Optional[StatPoint], list[str]]:
    problems = []
    raw_sheet = row["sheet"]
    sheet = sheet_cache.get(raw_sheet)
    if sheet is None:
        try:
            sheet = parse_sheet_name(raw_sheet)
            sheet_cache[raw_sheet] = sheet
        except (Malformed, UnknownScenario, UnknownStatistic, UnknownParameter) as exc:
            problems.append(f"sheet: {exc}")
    if sheet is not None and sheet.special is Special.References:
        problems.append("sheet: 'List of References' carries no statistics")

    condition = None
    if row["condition"]:
        try:
            condition = Condition(row["condition"])
        except ValueError:
            problems.append(f"condition must be LOS or NLOS, got {row['condition']!r}")
    elif sheet is not None and sheet.is_triple:
        problems.append("condition is required for scenario sheets")

    if not row["source"].strip():
        problems.append("source must not be empty")
    try:
        source_type = SourceType(row["source_type"])
    except ValueError:
        problems.append(f"source_type must be Meas or RT, got {row['source_type']!r}")
    try:
        release = Release(row["release"])
    except ValueError:
        problems.append(f"release must be Rel14 or Rel19, got {row['release']!r}")

    f = None
    try:
        f = float(row["freq_ghz"])
    except ValueError:
        problems.append(f"freq_ghz is not a number: {row['freq_ghz']!r}")
    else:
        if not math.isfinite(f) or f <= 0:
            problems.append("freq_ghz must be > 0")
    try:
        bandwidth = _parse_bandwidth(row["bandwidth_mhz"])
    except ValueError:
        problems.append(f"bandwidth_mhz must be a positive number, NA or CW, got {row['bandwidth_mhz']!r}")
    try:
        value = float(row["value"])
        if not math.isfinite(value):
            problems.append("value must be finite")
    except ValueError:
        problems.append(f"value is not a number: {row['value']!r}")
    weight = 1.0
    if row["weight"] != "":
        try:
            weight = float(row["weight"])
            if not (math.isfinite(weight) and weight >= 0):
                problems.append("weight must be >= 0")
        except ValueError:
            problems.append(f"weight is not a number: {row['weight']!r}")

    if problems:
        return sheet, None, problems
    if sheet.special is Special.PlywoodPenLoss:
        parameter, statistic = PLYWOOD, StatisticKind.Mean
    elif sheet.special is Special.NumClusters:
        parameter, statistic = ParameterKind.NumClusters, StatisticKind.Mean
    else:
        parameter, statistic = sheet.parameter, sheet.statistic
    point = StatPoint(
        scenario=sheet.scenario,
        condition=condition,
        parameter=parameter,
        statistic=statistic,
        f=f,
        value=value,
        weight=weight,
        source=row["source"],
        source_type=source_type,
        release=release,
        bandwidth_mhz=bandwidth,
        line=line,
    )
    return sheet, point, []


def ingest_text(data: bytes, strict: bool = True) -> IngestResult:
    """Parse dataset bytes; see :func:`ingest`."""
    checksum = hashlib.sha256(data).hexdigest()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SchemaViolation(f"dataset is not valid UTF-8: {exc}") from None
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if header is None:
        raise SchemaViolation(f"dataset is empty; expected header {HEADER!r}")
    if tuple(header) != COLUMNS:
        missing = [c for c in COLUMNS if c not in header]
        extra = [c for c in header if c not in COLUMNS]
        detail = []
        if missing:
            detail.append(f"missing columns {missing}")
        if extra:
            detail.append(f"unexpected columns {extra}")
        if not detail:
            detail.append("columns out of order")
        raise SchemaViolation(f"bad header: {'; '.join(detail)}; expected {HEADER!r}")

    manifest = DatasetManifest.empty(checksum)
    points: list[StatPoint] = []
    diagnostics: list[Diagnostic] = []
    cache: dict[str, SheetName] = {}
    for fields in reader:
        line = reader.line_num
        if not fields or fields == [""]:
            continue
        if len(fields) != len(COLUMNS):
            diagnostics.append(Diagnostic(line, f"expected {len(COLUMNS)} fields, got {len(fields)}"))
            continue
        sheet, point, problems = _parse_row(dict(zip(COLUMNS, fields)), line, cache)
        if problems:
            diagnostics.extend(Diagnostic(line, msg) for msg in problems)
            continue
        points.append(point)
        manifest.add(sheet)
    if strict and diagnostics:
        raise RowError(diagnostics)
    return IngestResult(points, manifest, diagnostics)


def ingest(path: Union[str, Path], strict: bool = True) -> IngestResult:
    """Read a dataset CSV into StatPoints.

    Strict mode raises :class:`RowError` on the first malformed row set;
    lenient mode skips bad rows and reports them in ``diagnostics``.
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read dataset {path}: {exc.strerror or exc}") from None
    return ingest_text(data, strict=strict)


def validate(points: Iterable[StatPoint]) -> list[Diagnostic]:
    """Plausibility warnings; never raises."""
    out = []
    seen: dict[tuple, StatPoint] = {}
    for p in points:
        tup = (p.source, p.scenario, p.condition, p.parameter, p.statistic, p.f)
        first = seen.get(tup)
        if first is not None:
            lines = tuple(x for x in (first.line, p.line) if x is not None)
            where = " and ".join(str(x) for x in lines) or "unknown lines"
            out.append(
                Diagnostic(
                    p.line,
                    f"duplicate tuple {p.source}/{p.scenario}/{p.condition}/{p.parameter}/"
                    f"{p.statistic}/{p.f:g} GHz at lines {where}",
                    "warning",
                    lines,
                )
            )
        else:
            seen[tup] = p
        if p.statistic is StatisticKind.Std and p.value < 0:
            out.append(Diagnostic(p.line, f"negative std {p.value:g} for {p.parameter}", "warning"))
        if p.statistic is StatisticKind.Mean:
            band = None
            if p.parameter is ParameterKind.DS:
                band = DS_MEAN_BAND
            elif p.parameter in LG_ANGLES:
                band = ANGLE_MEAN_BAND
            if band and not band[0] <= p.value <= band[1]:
                out.append(
                    Diagnostic(
                        p.line,
                        f"mean lg{p.parameter} {p.value:g} outside plausible band [{band[0]:g}, {band[1]:g}]",
                        "warning",
                    )
                )
    return out
