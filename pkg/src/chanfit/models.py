"""Encoded large-scale-parameter models and the operations over them.

UMi and UMa models exist per ModelSet: the legacy TR 38.901 formula plus
two refits (Rel-19 data over 6-24 GHz, combined Rel-14/Rel-19 data over
0.5-100 GHz).  SMa carries one set of arithmetic means over 0.5-24 GHz.
Plywood penetration loss is a single linear fit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, NotFound, OutOfDomain
from .types import (
    PLYWOOD,
    Basis,
    Condition,
    LgValue,
    Method,
    ModelForm,
    ModelKey,
    ModelSet,
    ParamModel,
    ParameterKind,
    PenLoss,
    Scenario,
    StatisticKind,
    check_freq,
    parse_parameter,
)

REL19_RANGE = (6.0, 24.0)
COMBINED_RANGE = (0.5, 100.0)
LEGACY_RANGE = (0.5, 100.0)
SMA_RANGE = (0.5, 24.0)
PLYWOOD_RANGE = (0.5, 30.0)
PLYWOOD_CEILING_GHZ = 100.0

_L, _N = Condition.LOS, Condition.NLOS
_MEAN, _STD = StatisticKind.Mean, StatisticKind.Std
_DS, _ASD, _ASA, _ZSA = ParameterKind.DS, ParameterKind.ASD, ParameterKind.ASA, ParameterKind.ZSA

# Coefficient rows: (condition, parameter, statistic, rel19, combined, legacy).
# Each model is (method, slope, intercept); a None slope means a constant.
_UMI_TABLE = [
    (_L, _DS, _MEAN, ("OLS", -0.15, -7.50), ("WLS", -0.18, -7.28), (-0.24, -7.14)),
    (_N, _DS, _MEAN, ("OLS", -0.84, -6.22), ("WLS", -0.22, -6.87), (-0.24, -6.83)),
    (_L, _DS, _STD, ("AM", None, 0.46), ("WM", None, 0.39), (None, 0.38)),
    (_N, _DS, _STD, ("OLS", -0.52, 0.90), ("WLS", 0.19, 0.22), (0.16, 0.28)),
    (_L, _ASD, _MEAN, ("OLS", -0.17, 1.32), ("WLS", -0.05, 1.21), (-0.05, 1.21)),
    (_N, _ASD, _MEAN, ("OLS", 0.46, 0.77), ("WLS", -0.24, 1.54), (-0.23, 1.53)),
    (_L, _ASD, _STD, ("OLS", -0.17, 0.40), ("WLS", 0.08, 0.29), (None, 0.41)),
    (_N, _ASD, _STD, ("OLS", -1.08, 1.48), ("WLS", 0.10, 0.33), (0.11, 0.33)),
    (_L, _ASA, _MEAN, ("OLS", -0.09, 1.44), ("WLS", -0.07, 1.66), (-0.08, 1.73)),
    (_N, _ASA, _MEAN, ("OLS", -0.27, 1.80), ("WLS", -0.07, 1.76), (-0.08, 1.81)),
    (_L, _ASA, _STD, ("OLS", 0.345, -0.15), ("WLS", 0.021, 0.26), (0.014, 0.28)),
    (_N, _ASA, _STD, ("OLS", -0.32, 0.55), ("WLS", 0.05, 0.27), (0.05, 0.3)),
    (_L, _ZSA, _MEAN, ("OLS", -0.88, 1.99), ("WLS", -0.11, 0.81), (-0.10, 0.73)),
    (_N, _ZSA, _MEAN, ("OLS", 0.14, 0.86), ("WLS", -0.03, 0.92), (-0.04, 0.92)),
    (_L, _ZSA, _STD, ("OLS", 0.15, -0.07), ("WLS", -0.03, 0.29), (-0.04, 0.34)),
    (_N, _ZSA, _STD, ("OLS", 0.07, 0.05), ("WLS", -0.05, 0.35), (-0.07, 0.41)),
]

_UMA_TABLE = [
    (_L, _DS, _MEAN, ("OLS", -0.8790, -6.569), ("WLS", -0.0794, -7.067), (-0.0963, -6.955)),
    (_N, _DS, _MEAN, ("OLS", -0.215, -6.69), ("WLS", -0.134, -6.47), (-0.204, -6.28)),
    (_L, _DS, _STD, ("OLS", 0.024, 0.33), ("WLS", 0.026, 0.57), (None, 0.66)),
    (_N, _DS, _STD, ("OLS", 0.136, 0.27), ("WM", None, 0.39), (None, 0.39)),
    (_L, _ASD, _MEAN, ("OLS", 0.6495, 0.26), ("WM", None, 0.92), (0.1114, 1.06)),
    (_N, _ASD, _MEAN, ("OLS", 0.5313, 0.5), ("WM", None, 1.09), (-0.1144, 1.5)),
    (_L, _ASD, _STD, ("OLS", -0.13, 0.38), ("WM", None, 0.31), (None, 0.28)),
    (_N, _ASD, _STD, ("OLS", -0.45, 0.86), ("WM", None, 0.44), (None, 0.28)),
    (_L, _ASA, _MEAN, ("OLS", -0.429, 2.02), ("WM", None, 1.76), (None, 1.81)),
    (_N, _ASA, _MEAN, ("OLS", -0.13, 1.84), ("WLS", -0.25, 2.04), (-0.27, 2.08)),
    (_L, _ASA, _STD, ("OLS", -0.03, 0.19), ("WM", None, 0.19), (None, 0.20)),
    (_N, _ASA, _STD, ("OLS", -0.25, 0.49), ("WLS", -0.03, 0.17), (None, 0.11)),
    (_L, _ZSA, _MEAN, ("OLS", -0.27, 1.30), ("WM", None, 0.96), (None, 0.95)),
    (_N, _ZSA, _MEAN, ("OLS", 0.2839, 0.79), ("WLS", -0.2856, 1.445), (-0.3236, 1.512)),
    (_L, _ZSA, _STD, ("OLS", -0.4319, 0.521), ("WM", None, 0.15), (None, 0.16)),
    (_N, _ZSA, _STD, ("OLS", -0.2665, 0.468), ("WM", None, 0.17), (None, 0.16)),
]

# (condition, parameter, statistic, arithmetic mean over 0.5-24 GHz)
_SMA_TABLE = [
    (_L, _DS, _MEAN, -7.42), (_L, _DS, _STD, 0.6),
    (_N, _DS, _MEAN, -7.20), (_N, _DS, _STD, 0.58),
    (_L, _ASD, _MEAN, 0.48), (_L, _ASD, _STD, 0.27),
    (_N, _ASD, _MEAN, 0.51), (_N, _ASD, _STD, 0.33),
    (_L, _ASA, _MEAN, 1.43), (_L, _ASA, _STD, 0.12),
    (_N, _ASA, _MEAN, 1.63), (_N, _ASA, _STD, 0.26),
    (_L, _ZSA, _MEAN, 1.18), (_L, _ZSA, _STD, 0.05),
    (_N, _ZSA, _MEAN, 1.16), (_N, _ZSA, _STD, 0.14),
]

PLYWOOD_KEY = ModelKey(None, None, PLYWOOD, StatisticKind.Mean, ModelSet.Rel19Only)


def _form(basis: Basis, slope, intercept) -> ModelForm:
    if slope is None:
        return ModelForm.const(intercept)
    return ModelForm(basis, slope, intercept)


def _build_models() -> list[ParamModel]:
    models = []
    for scenario, basis, table in (
        (Scenario.UMi, Basis.Log10OnePlusF, _UMI_TABLE),
        (Scenario.UMa, Basis.Log10F, _UMA_TABLE),
    ):
        for cond, param, stat, rel19, combined, legacy in table:
            key = ModelKey(scenario, cond, param, stat, ModelSet.Rel19Only)
            for model_set, (method, slope, icpt), span in (
                (ModelSet.Rel19Only, rel19, REL19_RANGE),
                (ModelSet.CombinedWLS, combined, COMBINED_RANGE),
                (ModelSet.Legacy38901, ("Encoded", *legacy), LEGACY_RANGE),
            ):
                models.append(
                    ParamModel(key.with_set(model_set), _form(basis, slope, icpt), span, Method(method))
                )
    for cond, param, stat, value in _SMA_TABLE:
        key = ModelKey(Scenario.SMa, cond, param, stat, ModelSet.Rel19Only)
        models.append(ParamModel(key, ModelForm.const(value), SMA_RANGE, Method.AM))
    models.append(
        ParamModel(PLYWOOD_KEY, ModelForm(Basis.LinearF, 0.17, 1.03), PLYWOOD_RANGE, Method.OLS)
    )
    return models


@dataclass(frozen=True)
class ModelDatabase:
    """Immutable, key-addressed collection of ParamModels."""

    _models: Mapping[ModelKey, ParamModel]

    @classmethod
    def from_models(cls, models: Iterable[ParamModel]) -> "ModelDatabase":
        table: dict[ModelKey, ParamModel] = {}
        for m in models:
            if m.key in table:
                raise ValueError(f"duplicate model key {m.key}")
            table[m.key] = m
        return cls(MappingProxyType(table))

    def __len__(self) -> int:
        return len(self._models)

    def __iter__(self) -> Iterator[ParamModel]:
        return iter(self._models.values())

    def keys(self) -> list[ModelKey]:
        return list(self._models)

    def canonical_key(self, key: ModelKey) -> ModelKey:
        # SMa holds one fit family; it answers for both non-legacy sets.
        if key.scenario is Scenario.SMa and key.set is ModelSet.CombinedWLS:
            return key.with_set(ModelSet.Rel19Only)
        return key

    def lookup(self, key: ModelKey) -> ParamModel:
        try:
            return self._models[self.canonical_key(key)]
        except KeyError:
            raise NotFound(key) from None

    def legacy_for(self, key: ModelKey) -> ParamModel | None:
        try:
            return self.lookup(key.with_set(ModelSet.Legacy38901))
        except NotFound:
            return None

    def to_json(self) -> str:
        return json.dumps([model_to_dict(m) for m in self], indent=1)

    @classmethod
    def from_json(cls, text: str) -> "ModelDatabase":
        return cls.from_models(model_from_dict(d) for d in json.loads(text))


DATABASE = ModelDatabase.from_models(_build_models())


def lookup(key: ModelKey) -> ParamModel:
    return DATABASE.lookup(key)


def enumerate_models() -> list[ParamModel]:
    return list(DATABASE)


def evaluate(model: ParamModel, f: float) -> LgValue:
    """Evaluate ``model`` at ``f`` GHz; out-of-range frequencies are flagged, not refused."""
    f = check_freq(f)
    if isinstance(model.key.parameter, PenLoss) and f > PLYWOOD_CEILING_GHZ:
        raise OutOfDomain("f", f"penetration loss is defined up to {PLYWOOD_CEILING_GHZ:g} GHz, got {f:g}")
    return LgValue(model.form(f), model.unit, not model.in_range(f))


def plywood_loss(f: float) -> LgValue:
    """Plywood penetration loss in dB, usable up to 100 GHz."""
    return evaluate(DATABASE.lookup(PLYWOOD_KEY), f)


@dataclass(frozen=True)
class CompareRow:
    f: float
    a: float
    b: float
    delta: float


def compare(key_a: ModelKey, key_b: ModelKey, grid: Sequence[float]) -> list[CompareRow]:
    if key_a.with_set(key_b.set) != key_b:
        raise DomainError("key_b", "compared keys may differ only in their model set")
    if key_a.set is key_b.set:
        raise DomainError("key_b", "compared keys must use different model sets")
    if len(grid) == 0:
        raise DomainError("grid", "frequency grid is empty")
    model_a, model_b = lookup(key_a), lookup(key_b)
    rows = []
    for f in grid:
        ya = evaluate(model_a, f).value
        yb = evaluate(model_b, f).value
        rows.append(CompareRow(float(f), ya, yb, ya - yb))
    return rows


def _opt(enum_cls, text):
    return None if text is None else enum_cls.parse(text)


def key_to_dict(key: ModelKey) -> dict:
    return {
        "scenario": None if key.scenario is None else key.scenario.value,
        "condition": None if key.condition is None else key.condition.value,
        "parameter": str(key.parameter),
        "statistic": key.statistic.value,
        "set": key.set.value,
    }


def key_from_dict(d: Mapping) -> ModelKey:
    return ModelKey(
        _opt(Scenario, d["scenario"]),
        _opt(Condition, d["condition"]),
        parse_parameter(d["parameter"]),
        StatisticKind.parse(d["statistic"]),
        ModelSet.parse(d["set"]),
    )


def model_to_dict(model: ParamModel) -> dict:
    d = key_to_dict(model.key)
    d.update(
        basis=model.form.basis.value,
        slope=model.form.slope,
        intercept=model.form.intercept,
        fit_lo_ghz=model.fit_range_ghz[0],
        fit_hi_ghz=model.fit_range_ghz[1],
        method=model.method.value,
    )
    return d


def model_from_dict(d: Mapping) -> ParamModel:
    form = ModelForm(Basis.parse(d["basis"]), float(d["slope"]), float(d["intercept"]))
    return ParamModel(
        key_from_dict(d),
        form,
        (float(d["fit_lo_ghz"]), float(d["fit_hi_ghz"])),
        Method.parse(d["method"]),
    )
