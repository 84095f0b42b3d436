"""Registry of measurement and ray-tracing campaigns: who reported what, where."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Union

from .errors import DomainError, InputError, SchemaViolation
from .types import Parameter, Scenario, SourceType, parse_parameter

COLUMNS = ("source", "kind", "scenario", "freq_ghz", "bandwidth_mhz", "parameters", "references")

NA = "NA"
CW = "CW"


@dataclass(frozen=True)
class CampaignRecord:
    """One campaign row.

    ``freq_ghz`` is a (lo, hi) span: lo == hi for a single carrier, lo < hi for
    swept campaigns, None where no frequency was given.  ``bandwidth_mhz`` is a
    number or one of the markers "NA" and "CW".  ``scenario`` is None for
    material penetration-loss campaigns.
    """

    source: str
    kind: SourceType
    scenario: Optional[Scenario]
    freq_ghz: Optional[tuple[float, float]]
    bandwidth_mhz: Union[float, str]
    reported: frozenset
    references: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.reported:
            raise DomainError("parameters", "a campaign must report at least one parameter")
        if isinstance(self.bandwidth_mhz, str) and self.bandwidth_mhz not in (NA, CW):
            raise DomainError("bandwidth_mhz", f"unknown marker {self.bandwidth_mhz!r}")
        if self.bandwidth_mhz == CW and self.freq_ghz is None:
            raise DomainError("freq_ghz", "a CW campaign needs its carrier frequency")
        if self.freq_ghz is not None and not 0 < self.freq_ghz[0] <= self.freq_ghz[1]:
            raise DomainError("freq_ghz", f"invalid span {self.freq_ghz}")

    @property
    def is_cw(self) -> bool:
        return self.bandwidth_mhz == CW

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(s.strip() for s in self.source.split(","))

    def overlaps(self, lo: float, hi: float) -> bool:
        if self.freq_ghz is None:
            return False
        return self.freq_ghz[0] <= hi and self.freq_ghz[1] >= lo

    def to_dict(self) -> dict:
        if self.freq_ghz is None:
            freq = None
        elif self.freq_ghz[0] == self.freq_ghz[1]:
            freq = self.freq_ghz[0]
        else:
            freq = list(self.freq_ghz)
        return {
            "source": self.source,
            "kind": self.kind.value,
            "scenario": None if self.scenario is None else self.scenario.value,
            "freq_ghz": freq,
            "bandwidth_mhz": self.bandwidth_mhz,
            "parameters": sorted(str(p) for p in self.reported),
            "references": list(self.references),
        }


def _parse_freq(text: str) -> Optional[tuple[float, float]]:
    if text == NA:
        return None
    lo, sep, hi = text.partition("-")
    span = (float(lo), float(hi)) if sep else (float(lo), float(lo))
    if not all(math.isfinite(v) for v in span):
        raise ValueError(text)
    return span


def _parse_bandwidth(text: str) -> Union[float, str]:
    if text in (NA, CW):
        return text
    return float(text)


def parse_record(row: dict) -> CampaignRecord:
    return CampaignRecord(
        source=row["source"],
        kind=SourceType.parse(row["kind"]),
        scenario=Scenario.parse(row["scenario"]) if row["scenario"] else None,
        freq_ghz=_parse_freq(row["freq_ghz"]),
        bandwidth_mhz=_parse_bandwidth(row["bandwidth_mhz"]),
        reported=frozenset(parse_parameter(t) for t in row["parameters"].split(";") if t),
        references=tuple(t for t in row["references"].split(";") if t),
    )


def registry_loads(text: str) -> list[CampaignRecord]:
    reader = csv.DictReader(io.StringIO(text, newline=""))
    if reader.fieldnames is None or tuple(reader.fieldnames) != COLUMNS:
        raise SchemaViolation(f"registry header must be {','.join(COLUMNS)!r}, got {reader.fieldnames}")
    records = []
    for row in reader:
        if None in row or any(v is None for v in row.values()):
            raise SchemaViolation(f"line {reader.line_num}: wrong number of fields")
        try:
            records.append(parse_record(row))
        except (DomainError, ValueError) as exc:
            raise SchemaViolation(f"line {reader.line_num}: {exc}") from None
    return records


def registry_load(path: Union[str, Path]) -> list[CampaignRecord]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read registry {path}: {exc.strerror or exc}") from None
    return registry_loads(text)


def registry_query(
    records: Iterable[CampaignRecord],
    scenario: Optional[Scenario] = None,
    parameter: Optional[Parameter] = None,
    kind: Optional[SourceType] = None,
    freq_range_ghz: Optional[tuple[float, float]] = None,
    source: Optional[str] = None,
) -> list[CampaignRecord]:
    """Records matching every supplied filter; no filters returns everything.

    ``source`` matches the whole source string or any of its comma-separated
    members, case-insensitively.  Swept campaigns match when their span
    overlaps ``freq_range_ghz``; records without a frequency never match a
    frequency filter.
    """
    needle = source.strip().casefold() if source else None
    out = []
    for r in records:
        if scenario is not None and r.scenario is not scenario:
            continue
        if parameter is not None and parameter not in r.reported:
            continue
        if kind is not None and r.kind is not kind:
            continue
        if freq_range_ghz is not None and not r.overlaps(*freq_range_ghz):
            continue
        if needle is not None:
            names = {r.source.casefold(), *(m.casefold() for m in r.members)}
            if needle not in names:
                continue
        out.append(r)
    return out
