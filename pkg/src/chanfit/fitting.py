"""Arithmetic mean, weighted mean, OLS and WLS fits over a frequency basis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import DegenerateFit, DomainError, EmptyAfterFilter, FitError, ZeroTotalWeight
from .types import (
    Basis,
    Condition,
    Method,
    ModelForm,
    ModelKey,
    Parameter,
    Release,
    Scenario,
    SourceType,
    StatisticKind,
    check_freq,
)

ALL_RELEASES = frozenset({Release.Rel14, Release.Rel19})


@dataclass(frozen=True)
class StatPoint:
    """One statistic reported by one source at one frequency.

    ``scenario`` and ``condition`` are None for rows that are not tied to a
    deployment scenario (plywood penetration loss, cluster counts).
    ``line`` is the 1-based CSV line the point was read from, when known.
    """

    scenario: Optional[Scenario]
    condition: Optional[Condition]
    parameter: Parameter
    statistic: StatisticKind
    f: float
    value: float
    weight: float = 1.0
    source: str = ""
    source_type: SourceType = SourceType.Meas
    release: Release = Release.Rel19
    bandwidth_mhz: Union[float, str, None] = None
    line: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        check_freq(self.f)
        if not math.isfinite(self.value):
            raise DomainError("value", f"value must be finite, got {self.value!r}")
        if not (math.isfinite(self.weight) and self.weight >= 0):
            raise DomainError("weight", f"weight must be finite and >= 0, got {self.weight!r}")

    def matches(self, key: ModelKey) -> bool:
        return (
            self.scenario == key.scenario
            and self.condition == key.condition
            and self.parameter == key.parameter
            and self.statistic == key.statistic
        )


@dataclass(frozen=True)
class FitSpec:
    method: Method
    basis: Basis
    range_ghz: tuple[float, float]
    release_filter: frozenset = ALL_RELEASES

    def __post_init__(self):
        if self.method is Method.Encoded:
            raise DomainError("method", "Encoded is not a fitting method")
        if self.method in (Method.AM, Method.WM) and self.basis is not Basis.Const:
            raise DomainError("basis", f"{self.method} fits require the const basis")
        if self.method in (Method.OLS, Method.WLS) and self.basis is Basis.Const:
            raise DomainError("basis", f"{self.method} fits need a frequency-dependent basis")
        lo, hi = self.range_ghz
        if not lo < hi:
            raise DomainError("range_ghz", f"need lo < hi, got {self.range_ghz}")
        object.__setattr__(self, "release_filter", frozenset(self.release_filter))

    @property
    def weighted(self) -> bool:
        return self.method in (Method.WM, Method.WLS)

    def select(self, points: Iterable[StatPoint]) -> list[StatPoint]:
        lo, hi = self.range_ghz
        return [p for p in points if lo <= p.f <= hi and p.release in self.release_filter]


@dataclass(frozen=True)
class FitResult:
    form: ModelForm
    method: Method
    n_points: int
    n_distinct_x: int
    rmse: float
    range_used_ghz: tuple[float, float]


def weighted_line(x: Sequence[float], y: Sequence[float], w: Sequence[float]) -> tuple[float, float]:
    """Minimise sum w (y - a x - b)^2 and return (a, b).

    Works on mean-shifted data so that x near 2 with y near -7.5 loses no
    precision to cancellation.
    """
    sw = math.fsum(w)
    if sw <= 0:
        raise ZeroTotalWeight("total weight is zero")
    xm = math.fsum(wi * xi for wi, xi in zip(w, x)) / sw
    ym = math.fsum(wi * yi for wi, yi in zip(w, y)) / sw
    sxx = math.fsum(wi * (xi - xm) ** 2 for wi, xi in zip(w, x))
    sxy = math.fsum(wi * (xi - xm) * (yi - ym) for wi, xi, yi in zip(w, x, y))
    if sxx == 0:
        raise DegenerateFit("all weighted basis values are identical")
    slope = sxy / sxx
    return slope, ym - slope * xm


def fit(points: Iterable[StatPoint], spec: FitSpec) -> FitResult:
    selected = spec.select(points)
    if not selected:
        raise EmptyAfterFilter(
            f"no points within {spec.range_ghz[0]:g}-{spec.range_ghz[1]:g} GHz "
            f"for releases {sorted(r.value for r in spec.release_filter)}"
        )
    x = [spec.basis.apply(p.f) for p in selected]
    y = [p.value for p in selected]
    w = [p.weight for p in selected] if spec.weighted else [1.0] * len(selected)
    wmax = max(w)
    if wmax <= 0:
        raise ZeroTotalWeight("all selected points carry zero weight")
    # equal weights become exactly 1.0, so WM == AM and WLS == OLS bit for bit
    w = [wi / wmax for wi in w]
    sw = math.fsum(w)

    if spec.method in (Method.AM, Method.WM):
        form = ModelForm.const(math.fsum(wi * yi for wi, yi in zip(w, y)) / sw)
        n_distinct = len(set(x))
    else:
        n_distinct = len({xi for xi, wi in zip(x, w) if wi > 0})
        if n_distinct < 2:
            raise DegenerateFit(
                f"{spec.method} needs at least 2 distinct basis values, got {n_distinct}"
            )
        slope, intercept = weighted_line(x, y, w)
        form = ModelForm(spec.basis, slope, intercept)

    sq = math.fsum(wi * (yi - form(p.f)) ** 2 for wi, yi, p in zip(w, y, selected))
    fs = [p.f for p in selected]
    return FitResult(form, spec.method, len(selected), n_distinct, math.sqrt(sq / sw), (min(fs), max(fs)))


@dataclass(frozen=True)
class CatalogEntry:
    key: ModelKey
    spec: FitSpec
    result: Optional[FitResult] = None
    error: Optional[FitError] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def refit_catalog(points: Iterable[StatPoint], plan: Sequence[tuple[ModelKey, FitSpec]]) -> list[CatalogEntry]:
    """Fit every plan entry against the points bound to its key.

    Failures are returned as entries with ``error`` set, never dropped.
    """
    keys = [k for k, _ in plan]
    if len(set(keys)) != len(keys):
        raise DomainError("plan", "plan keys must be unique")
    points = list(points)
    out = []
    for key, spec in plan:
        bound = [p for p in points if p.matches(key)]
        try:
            out.append(CatalogEntry(key, spec, result=fit(bound, spec)))
        except FitError as exc:
            out.append(CatalogEntry(key, spec, error=exc))
    return out


@dataclass(frozen=True)
class Residual:
    source: str
    f: float
    y: float
    y_hat: float
    residual: float


def residual_report(points: Iterable[StatPoint], result: FitResult, basis: Basis) -> list[Residual]:
    if result.form.basis is not basis and result.form.basis is not Basis.Const:
        raise DomainError("basis", f"result was fitted on {result.form.basis}, not {basis}")
    rows = []
    for p in points:
        y_hat = result.form(p.f)
        rows.append(Residual(p.source, p.f, p.value, y_hat, p.value - y_hat))
    rows.sort(key=lambda r: abs(r.residual), reverse=True)
    return rows
