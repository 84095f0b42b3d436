"""Seeded lognormal draws of large-scale parameters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, KeyMismatch
from .models import evaluate
from .types import ParamModel, PenLoss, StatisticKind, Unit


@dataclass(frozen=True)
class LspSamples:
    """Linear-domain samples plus the lg-domain moments they were drawn from.

    ``sigma_clamped`` is set when the std model evaluated negative at the
    requested frequency and zero spread was used instead.
    """

    values: np.ndarray
    mu: float
    sigma: float
    sigma_raw: float
    unit: str

    @property
    def sigma_clamped(self) -> bool:
        return self.sigma_raw < 0


def sample_lsp(model_mean: ParamModel, model_std: ParamModel, f: float, n: int, seed: int) -> LspSamples:
    km, ks = model_mean.key, model_std.key
    if km.statistic is not StatisticKind.Mean:
        raise KeyMismatch(f"mean model has statistic {km.statistic}")
    if ks.statistic is not StatisticKind.Std:
        raise KeyMismatch(f"std model has statistic {ks.statistic}")
    if km.with_statistic(ks.statistic) != ks:
        raise KeyMismatch(f"{km} and {ks} describe different parameters")
    if isinstance(km.parameter, PenLoss):
        raise DomainError("parameter", "penetration loss is not a lognormal parameter")
    if int(n) != n or n < 1:
        raise DomainError("n", f"sample count must be a positive integer, got {n!r}")

    mu = evaluate(model_mean, f).value
    sigma_raw = evaluate(model_std, f).value
    sigma = max(sigma_raw, 0.0)
    rng = np.random.default_rng(seed)
    lg = rng.normal(mu, sigma, int(n))
    unit = "s" if model_mean.unit is Unit.Log10Seconds else "deg"
    return LspSamples(np.power(10.0, lg), mu, sigma, sigma_raw, unit)
