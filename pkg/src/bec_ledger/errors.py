"""Exception hierarchy for the ledger engine.

Two broad families matter to callers: ``InputError`` (malformed or
inconsistent input, CLI exit 2) and ``MissingDataError`` (structurally valid
input that lacks data a computation needs, CLI exit 3).
"""
from __future__ import annotations


class LedgerError(Exception):
    """Base class for every error raised by this package."""


class InputError(LedgerError):
    """Input is malformed, inconsistent, or violates a domain invariant."""


class MissingDataError(LedgerError):
    """Input is well-formed but lacks data required by the requested computation."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: str | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column})" if column else ")")
        super().__init__(f"{message}{loc}")
        self.line = line
        self.column = column


class UnknownSector(ParseError):
    def __init__(self, label: str, line: int | None = None):
        super().__init__(f"unknown sector label {label!r}", line=line)
        self.label = label


class UnknownFuel(ParseError):
    def __init__(self, label: str, line: int | None = None):
        super().__init__(f"unknown fuel label {label!r}", line=line)
        self.label = label


class UnknownUnit(InputError):
    def __init__(self, unit: str, line: int | None = None):
        loc = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown unit {unit!r}{loc}")
        self.unit = unit


class DuplicateCell(InputError):
    pass


class DuplicateYear(InputError):
    pass


class NegativeQuantity(InputError):
    pass


class ReconciliationError(InputError):
    """Sector cells do not sum to the declared total within tolerance."""


class PolicyError(InputError):
    """Bad policy file: unknown key, out-of-range fraction, or unparseable value."""


class DeductionExceedsTotal(InputError):
    """A deduction is larger than the pool it is deducted from."""


class InvalidDenominator(InputError):
    pass


class EmptyLedger(InputError):
    pass


class EmptyReport(InputError):
    pass


class UnknownReportKind(InputError):
    pass


class MissingSector(MissingDataError):
    def __init__(self, sector: str, year: int | None = None):
        at = f" in year {year}" if year is not None else ""
        super().__init__(f"no cells for sector {sector!r}{at}")
        self.sector = sector


class MissingCell(MissingDataError):
    pass


class MissingHeatData(MissingDataError):
    pass


class YearMismatch(MissingDataError):
    def __init__(self, year: int, detail: str = ""):
        extra = f": {detail}" if detail else ""
        super().__init__(f"year {year} not covered by companion data{extra}")
        self.year = year
