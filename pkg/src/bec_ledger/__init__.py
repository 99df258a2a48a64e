"""Accounting engine for building operational energy from energy balance sheets."""
from .accounting import (
    AccountingPolicy,
    BuildingEnergyLedger,
    LedgerItem,
    PRESETS,
    composition_shares,
    ledger_series,
    noncommercial_energy,
    parse_policy_file,
    public_energy,
    resolve_policy,
    residential_energy,
    share_of_final,
    total_building_energy,
)
from .audit import (
    AuditCheck,
    AuditReport,
    AuditWarning,
    double_count_detector,
    heat_balance_check,
)
from .errors import InputError, LedgerError, MissingDataError
from .ingest import (
    ConversionTable,
    DEFAULT_CONVERSIONS,
    parse_balance_csv,
    parse_conversion_csv,
    parse_noncommercial_csv,
    serialize_balance_csv,
)
from .model import (
    BalanceSheet,
    FuelKind,
    NonCommercialRecord,
    SectorKind,
    TransformationEntry,
    YearSeries,
    mtce,
)

__version__ = "0.1.0"

__all__ = [
    "AccountingPolicy",
    "AuditCheck",
    "AuditReport",
    "AuditWarning",
    "BalanceSheet",
    "BuildingEnergyLedger",
    "ConversionTable",
    "DEFAULT_CONVERSIONS",
    "FuelKind",
    "InputError",
    "LedgerError",
    "LedgerItem",
    "MissingDataError",
    "NonCommercialRecord",
    "PRESETS",
    "SectorKind",
    "TransformationEntry",
    "YearSeries",
    "composition_shares",
    "double_count_detector",
    "heat_balance_check",
    "ledger_series",
    "mtce",
    "noncommercial_energy",
    "parse_balance_csv",
    "parse_conversion_csv",
    "parse_noncommercial_csv",
    "parse_policy_file",
    "public_energy",
    "resolve_policy",
    "residential_energy",
    "serialize_balance_csv",
    "share_of_final",
    "total_building_energy",
]
