"""Exception hierarchy shared by every chanfit module."""

from __future__ import annotations


class ChanfitError(Exception):
    """Base class for all errors raised by chanfit."""


class DomainError(ChanfitError, ValueError):
    """An argument lies outside the domain of an operation."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class OutOfDomain(DomainError):
    pass


class NotFound(ChanfitError, LookupError):
    def __init__(self, key):
        super().__init__(f"no encoded model for {key}")
        self.key = key


class KeyMismatch(ChanfitError, ValueError):
    pass


class FitError(ChanfitError, ValueError):
    pass


class DegenerateFit(FitError):
    pass


class ZeroTotalWeight(FitError):
    pass


class EmptyAfterFilter(FitError):
    pass


class SheetNameError(ChanfitError, ValueError):
    def __init__(self, raw: str, token: str, message: str):
        super().__init__(f"{raw!r}: {message} ({token!r})")
        self.raw = raw
        self.token = token


class UnknownScenario(SheetNameError):
    pass


class UnknownStatistic(SheetNameError):
    pass


class UnknownParameter(SheetNameError):
    pass


class Malformed(SheetNameError):
    pass


class InputError(ChanfitError):
    """Problems with an input file (I/O or schema)."""


class SchemaViolation(InputError, ValueError):
    pass


class RowError(InputError, ValueError):
    """Raised by strict-mode ingestion when any row is malformed."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0]
        more = len(self.diagnostics) - 1
        suffix = f" (+{more} more)" if more else ""
        where = f"line {first.line}: " if first.line is not None else ""
        super().__init__(f"{where}{first.message}{suffix}")
