"""Large-scale channel parameter models for 0.5-100 GHz, with the tooling to refit them."""

from .errors import (
    ChanfitError,
    DegenerateFit,
    DomainError,
    EmptyAfterFilter,
    KeyMismatch,
    NotFound,
    OutOfDomain,
    RowError,
    SchemaViolation,
    ZeroTotalWeight,
)
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
    Release,
    Scenario,
    SourceType,
    StatisticKind,
)
from .models import DATABASE, compare, enumerate_models, evaluate, lookup, plywood_loss
from .sampling import sample_lsp
from .fitting import FitResult, FitSpec, StatPoint, fit, refit_catalog, residual_report
from .dataset import ingest, parse_sheet_name, validate
from .registry import CampaignRecord, registry_load, registry_query

__version__ = "0.1.0"

__all__ = [
    "ChanfitError",
    "DegenerateFit",
    "DomainError",
    "EmptyAfterFilter",
    "KeyMismatch",
    "NotFound",
    "OutOfDomain",
    "RowError",
    "SchemaViolation",
    "ZeroTotalWeight",
    "PLYWOOD",
    "Basis",
    "Condition",
    "LgValue",
    "Method",
    "ModelForm",
    "ModelKey",
    "ModelSet",
    "ParamModel",
    "ParameterKind",
    "PenLoss",
    "Release",
    "Scenario",
    "SourceType",
    "StatisticKind",
    "DATABASE",
    "compare",
    "enumerate_models",
    "evaluate",
    "lookup",
    "plywood_loss",
    "sample_lsp",
    "FitResult",
    "FitSpec",
    "StatPoint",
    "fit",
    "refit_catalog",
    "residual_report",
    "ingest",
    "parse_sheet_name",
    "validate",
    "CampaignRecord",
    "registry_load",
    "registry_query",
]
