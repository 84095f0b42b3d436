"""Domain vocabulary: scenarios, parameters, model forms and keys."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .errors import DomainError


class _TokenEnum(str, Enum):
    """Enum whose value is its canonical text token."""

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str):
        try:
            return cls(text)
        except ValueError:
            raise DomainError(cls.__name__, f"unknown token {text!r}") from None


class Scenario(_TokenEnum):
    UMi = "UMi"
    UMa = "UMa"
    SMa = "SMa"
    RMa = "RMa"
    InH = "InH"
    InF = "InF"


class Condition(_TokenEnum):
    LOS = "LOS"
    NLOS = "NLOS"


class StatisticKind(_TokenEnum):
    Mean = "Mean"
    Std = "Std"


class ParameterKind(_TokenEnum):
    DS = "DS"
    ASD = "ASD"
    ASA = "ASA"
    ZSA = "ZSA"
    ZSD = "ZSD"
    KFactor = "KFactor"
    SF = "SF"
    PathLoss = "PathLoss"
    ExcessPathLoss = "ExcessPathLoss"
    AbsToA = "AbsToA"
    NumClusters = "NumClusters"
    ClusterASD = "ClusterASD"


@dataclass(frozen=True)
class PenLoss:
    """Penetration loss through one building material."""

    material: str

    def __post_init__(self):
        if not re.fullmatch(r"[a-z][a-z0-9_]*", self.material):
            raise DomainError("material", f"invalid material name {self.material!r}")

    def __str__(self) -> str:
        return f"PenLoss({self.material})"


Parameter = Union[ParameterKind, PenLoss]

PLYWOOD = PenLoss("plywood")

_PENLOSS_RE = re.compile(r"PenLoss\(([^)]*)\)")


def parse_parameter(text: str) -> Parameter:
    m = _PENLOSS_RE.fullmatch(text)
    if m:
        return PenLoss(m.group(1))
    return ParameterKind.parse(text)


class SourceType(_TokenEnum):
    Meas = "Meas"
    RT = "RT"


class Release(_TokenEnum):
    Rel14 = "Rel14"
    Rel19 = "Rel19"


class Basis(_TokenEnum):
    Log10F = "log10_f"
    Log10OnePlusF = "log10_1plus_f"
    LinearF = "linear_f"
    Const = "const"

    def apply(self, f: float) -> float:
        if self is Basis.Log10F:
            return math.log10(f)
        if self is Basis.Log10OnePlusF:
            return math.log10(1.0 + f)
        if self is Basis.LinearF:
            return f
        return 0.0


class ModelSet(_TokenEnum):
    Legacy38901 = "legacy"
    Rel19Only = "rel19"
    CombinedWLS = "combined"


class Method(_TokenEnum):
    AM = "AM"
    WM = "WM"
    OLS = "OLS"
    WLS = "WLS"
    Encoded = "Encoded"


class Unit(_TokenEnum):
    Log10Seconds = "log10_s"
    Log10Degrees = "log10_deg"
    DB = "dB"
    Dimensionless = "dimensionless"


LG_ANGLES = frozenset(
    {ParameterKind.ASD, ParameterKind.ASA, ParameterKind.ZSA, ParameterKind.ZSD}
)


def unit_for(parameter: Parameter, statistic: StatisticKind) -> Unit:
    if isinstance(parameter, PenLoss):
        return Unit.DB
    if statistic is StatisticKind.Std:
        return Unit.Dimensionless
    if parameter is ParameterKind.DS:
        return Unit.Log10Seconds
    if parameter in LG_ANGLES:
        return Unit.Log10Degrees
    raise DomainError("parameter", f"no lg unit defined for {parameter}")


def check_freq(f: float, field: str = "f") -> float:
    f = float(f)
    if not math.isfinite(f) or f <= 0:
        raise DomainError(field, f"frequency must be finite and > 0 GHz, got {f!r}")
    return f


@dataclass(frozen=True)
class ModelForm:
    """``slope * basis(f) + intercept``."""

    basis: Basis
    slope: float
    intercept: float

    def __post_init__(self):
        if self.basis is Basis.Const and self.slope != 0:
            raise DomainError("slope", "a const model must have zero slope")

    @classmethod
    def const(cls, value: float) -> "ModelForm":
        return cls(Basis.Const, 0.0, value)

    def __call__(self, f: float) -> float:
        return self.slope * self.basis.apply(f) + self.intercept


@dataclass(frozen=True)
class ModelKey:
    scenario: Optional[Scenario]
    condition: Optional[Condition]
    parameter: Parameter
    statistic: StatisticKind
    set: ModelSet

    def with_set(self, model_set: ModelSet) -> "ModelKey":
        return ModelKey(self.scenario, self.condition, self.parameter, self.statistic, model_set)

    def with_statistic(self, statistic: StatisticKind) -> "ModelKey":
        return ModelKey(self.scenario, self.condition, self.parameter, statistic, self.set)

    def __str__(self) -> str:
        parts = [self.scenario, self.condition, self.parameter, self.statistic, self.set]
        return "/".join(str(p) for p in parts if p is not None)


@dataclass(frozen=True)
class ParamModel:
    key: ModelKey
    form: ModelForm
    fit_range_ghz: tuple[float, float]
    method: Method

    def __post_init__(self):
        lo, hi = self.fit_range_ghz
        if not lo < hi:
            raise DomainError("fit_range_ghz", f"need lo < hi, got {self.fit_range_ghz}")
        if self.key.set is ModelSet.Legacy38901 and self.method is not Method.Encoded:
            raise DomainError("method", "legacy models are encoded, not fitted")

    @property
    def unit(self) -> Unit:
        return unit_for(self.key.parameter, self.key.statistic)

    def in_range(self, f: float) -> bool:
        lo, hi = self.fit_range_ghz
        return lo <= f <= hi


@dataclass(frozen=True)
class LgValue:
    value: float
    unit: Unit
    extrapolated: bool = False

    def __float__(self) -> float:
        return self.value
