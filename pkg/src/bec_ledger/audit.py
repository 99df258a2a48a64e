"""Heat-column balance checks and the central-heating double-count detector.

District heat already appears in final-consumption heat cells; its
transformation-side production must therefore never be added to a building
total again. The detector quantifies that overlap whenever a ledger's policy
re-added the heating supply.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from .accounting import BuildingEnergyLedger
from .errors import MissingHeatData
from .model import (
    BUILDING_HEAT_SECTORS,
    ZERO,
    BalanceSheet,
    FuelKind,
)

DEFAULT_AUDIT_TOLERANCE = Decimal("0.01")

SEVERITY_INFO = "info"
SEVERITY_ERROR = "error"


@dataclass(frozen=True)
class AuditCheck:
    """One identity check: |actual - expected| must stay within tolerance."""

    name: str
    expected: Decimal
    actual: Decimal
    tolerance: Decimal

    @property
    def passed(self) -> bool:
        return abs(self.actual - self.expected) <= self.tolerance


@dataclass(frozen=True)
class AuditWarning:
    severity: str
    message: str


@dataclass(frozen=True)
class AuditReport:
    year: int
    checks: tuple[AuditCheck, ...]
    warnings: tuple[AuditWarning, ...] = ()

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks) and not any(
            w.severity == SEVERITY_ERROR for w in self.warnings
        )


def heat_balance_check(
    sheet: BalanceSheet, tolerance: Decimal = DEFAULT_AUDIT_TOLERANCE
) -> AuditReport:
    """Verify the heat column's internal identities on one sheet.

    Checks that transformation rows sum to the declared transformation total,
    that the total minus losses matches declared final heat, and that sector
    heat cells sum to declared final heat. Requires the heating-supply and
    total-transformation rows plus a declared final heat total; the other
    transformation rows default to zero.
    """
    heating = sheet.transformation_value("heating-supply", FuelKind.HEAT)
    total_xform = sheet.transformation_value("total-transformation", FuelKind.HEAT)
    declared_final = sheet.total_final.get(FuelKind.HEAT)
    missing = [
        label
        for label, value in (
            ("heating-supply transformation row", heating),
            ("total-transformation row", total_xform),
            ("total-final heat row", declared_final),
        )
        if value is None
    ]
    if missing:
        raise MissingHeatData(f"year {sheet.year}: sheet lacks {', '.join(missing)}")

    thermal = sheet.transformation_value("thermal-power", FuelKind.HEAT) or ZERO
    recovery = sheet.transformation_value("recovery", FuelKind.HEAT) or ZERO
    loss = sheet.transformation_value("loss", FuelKind.HEAT) or ZERO
    sector_sum = sum(
        (v for (_, f), v in sheet.cells.items() if f is FuelKind.HEAT), ZERO
    )

    checks = (
        AuditCheck(
            "transformation-row-sum",
            expected=total_xform,
            actual=thermal + heating + recovery,
            tolerance=tolerance,
        ),
        AuditCheck(
            "transformation-minus-loss",
            expected=declared_final,
            actual=total_xform - loss,
            tolerance=tolerance,
        ),
        AuditCheck(
            "sector-heat-sum",
            expected=declared_final,
            actual=sector_sum,
            tolerance=tolerance,
        ),
    )

    warnings = []
    heat_cells = {s: v for (s, f), v in sheet.cells.items() if f is FuelKind.HEAT and v > 0}
    if heat_cells:
        top = max(heat_cells, key=lambda s: heat_cells[s])
        warnings.append(
            AuditWarning(
                SEVERITY_INFO,
                f"largest heat consumer is {top.value} "
                f"({heat_cells[top]} of {declared_final} Mtce final heat)",
            )
        )
    return AuditReport(year=sheet.year, checks=checks, warnings=tuple(warnings))


def double_count_detector(
    ledger: BuildingEnergyLedger, sheet: BalanceSheet
) -> AuditReport:
    """Flag ledgers whose policy re-added central heating on top of heat cells.

    Fires exactly when the ledger's policy has add_central_heating set; the
    warning quantifies the amount added and the building-sector heat already
    counted inside the components.
    """
    if not ledger.policy.add_central_heating:
        return AuditReport(
            year=ledger.year,
            checks=(
                AuditCheck(
                    "central-heating-added", expected=ZERO, actual=ZERO, tolerance=ZERO
                ),
            ),
        )

    added = ledger.central_heating_added
    overlap_cells = [
        (sector, sheet.cell(sector, FuelKind.HEAT))
        for sector in BUILDING_HEAT_SECTORS
        if sheet.cell(sector, FuelKind.HEAT) > 0
    ]
    overlap = sum((v for _, v in overlap_cells), ZERO)
    detail = ", ".join(f"{s.value} {v}" for s, v in overlap_cells) or "none"
    warning = AuditWarning(
        SEVERITY_ERROR,
        f"double count: {added} Mtce of central heating supply added again on "
        f"top of building-sector final heat cells ({detail}; overlap {overlap} Mtce)",
    )
    return AuditReport(
        year=ledger.year,
        checks=(
            AuditCheck(
                "central-heating-added", expected=ZERO, actual=added, tolerance=ZERO
            ),
        ),
        warnings=(warning,),
    )


def report_text(report: AuditReport) -> str:
    """Human-readable rendering of one audit report."""
    lines = [f"audit  year {report.year}  {'PASS' if report.overall_pass else 'FAIL'}"]
    for check in report.checks:
        verdict = "ok" if check.passed else "FAIL"
        lines.append(
            f"  [{verdict}] {check.name}: expected {check.expected}, "
            f"actual {check.actual} (tolerance {check.tolerance})"
        )
    for warning in report.warnings:
        lines.append(f"  [{warning.severity}] {warning.message}")
    return "\n".join(lines)


def report_csv_rows(report: AuditReport) -> list[list[str]]:
    """Machine-readable rows: check,expected,actual,tolerance,pass."""
    return [
        [
            check.name,
            f"{check.expected}",
            f"{check.actual}",
            f"{check.tolerance}",
            "true" if check.passed else "false",
        ]
        for check in report.checks
    ]
