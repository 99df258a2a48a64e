"""Render ledgers, shares, and audits as text tables, CSV, and plot data.

Every renderer is a pure function from values to strings; writing files is
the caller's job. CSV output is bit-exact at 2 decimals, so re-parsing and
re-summing a rendered ledger reproduces its totals. Plot data is emitted as
space-separated columns with a `#`-prefixed header, consumable by any
plotting tool.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP
from typing import Iterable, Sequence

from .accounting import (
    AccountingPolicy,
    BuildingEnergyLedger,
    composition_shares,
    public_energy,
    share_of_final,
)
from .errors import EmptyReport, InputError, UnknownReportKind, YearMismatch
from .model import BalanceSheet, FuelKind, NonCommercialRecord, SectorKind, YearSeries

PLOT_KINDS = (
    "residential",
    "public",
    "noncommercial",
    "total",
    "shares",
    "share-of-final",
)

OUTPUTS = (
    "ledger-table",
    "public-detail",
    "noncommercial-detail",
    "composition",
    "share-of-final",
    "audit",
)

_SHARE_STEP = Decimal("0.000001")
_PERCENT_STEP = Decimal("0.01")


@dataclass(frozen=True)
class ReportSpec:
    """Which outputs to produce, for which years, where, and how precisely."""

    outputs: tuple[str, ...] = OUTPUTS[:-1]
    first_year: int | None = None
    last_year: int | None = None
    out_dir: str = "out"
    precision: int = 2

    def __post_init__(self) -> None:
        if not self.outputs:
            raise EmptyReport("no outputs requested")
        unknown = [o for o in self.outputs if o not in OUTPUTS]
        if unknown:
            raise UnknownReportKind(
                f"unknown outputs {unknown}; known: {', '.join(OUTPUTS)}"
            )
        if (
            self.first_year is not None
            and self.last_year is not None
            and self.first_year > self.last_year
        ):
            raise InputError(
                f"empty year range {self.first_year}..{self.last_year}"
            )
        if self.precision < 0:
            raise InputError(f"precision must be >= 0, got {self.precision}")


def render_ledger_table(
    series: YearSeries[BuildingEnergyLedger],
) -> tuple[str, str]:
    """(text table, CSV) of per-year components and totals."""
    _require_rows(series)
    header = ["year", "residential", "public", "noncommercial", "commercial_total", "total"]
    rows = [
        [
            str(year),
            f"{ledger.residential}",
            f"{ledger.public}",
            f"{ledger.noncommercial}",
            f"{ledger.commercial_total}",
            f"{ledger.total}",
        ]
        for year, ledger in series
    ]
    return _text_table(header, rows), _csv(header, rows)


def render_public_detail(
    sheets: Iterable[BalanceSheet], policy: AccountingPolicy
) -> tuple[str, str]:
    """(text, CSV) of the public-building extraction, one row per year.

    Columns mirror the source layout: raw sector totals, the raw combined
    gasoline and diesel cells, then the computed building consumption.
    """
    ordered = sorted(sheets, key=lambda s: s.year)
    if not ordered:
        raise EmptyReport("no balance sheets to report")
    header = ["year", "wrhr", "others", "gasoline", "diesel", "building_consumption"]
    public_sectors = (SectorKind.WRHR, SectorKind.OTHERS)
    rows = []
    for sheet in ordered:
        rows.append(
            [
                str(sheet.year),
                f"{sheet.sector_total(SectorKind.WRHR)}",
                f"{sheet.sector_total(SectorKind.OTHERS)}",
                f"{sheet.fuel_total(FuelKind.GASOLINE, public_sectors)}",
                f"{sheet.fuel_total(FuelKind.DIESEL, public_sectors)}",
                f"{public_energy(sheet, policy)}",
            ]
        )
    return _text_table(header, rows), _csv(header, rows)


def render_noncommercial_detail(
    records: YearSeries[NonCommercialRecord],
) -> tuple[str, str]:
    """(text, CSV) of per-year non-commercial components and totals."""
    _require_rows(records)
    header = ["year", "fuelwood_straw", "methane", "total"]
    rows = [
        [str(year), f"{r.fuelwood_straw}", f"{r.methane}", f"{r.total}"]
        for year, r in records
    ]
    return _text_table(header, rows), _csv(header, rows)


def render_shares_table(
    series: YearSeries[BuildingEnergyLedger], precision: int = 2
) -> tuple[str, str]:
    """(text, CSV) of composition shares as percentages.

    Each component is rounded independently, so a row sums to 100 only
    within one rounding step per column.
    """
    _require_rows(series)
    step = Decimal(1).scaleb(-precision)
    header = ["year", "residential_pct", "public_pct", "noncommercial_pct"]
    rows = []
    for year, ledger in series:
        shares = composition_shares(ledger)
        rows.append(
            [str(year)]
            + [f"{(s * 100).quantize(step, rounding=ROUND_HALF_UP)}" for s in shares]
        )
    return _text_table(header, rows), _csv(header, rows)


def render_plot_series(
    series: YearSeries[BuildingEnergyLedger],
    kind: str,
    final_energy: YearSeries[Decimal] | None = None,
) -> str:
    """Plot-data text for one kind: `#` header line, then x y(-y2...) rows.

    `share-of-final` needs a per-year final-energy series; shares are written
    as fractions at 6 decimals, quantities at 2.
    """
    if kind not in PLOT_KINDS:
        raise UnknownReportKind(f"unknown plot kind {kind!r}; known: {', '.join(PLOT_KINDS)}")
    _require_rows(series)

    if kind == "shares":
        lines = ["# year residential_share public_share noncommercial_share"]
        for year, ledger in series:
            shares = composition_shares(ledger)
            lines.append(f"{year} " + " ".join(_fraction(s) for s in shares))
    elif kind == "share-of-final":
        if final_energy is None:
            raise InputError("share-of-final requires a final-energy series")
        lines = ["# year share_of_final share_incl_noncommercial"]
        for year, ledger in series:
            final = final_energy.get(year)
            if final is None:
                raise YearMismatch(year, "no final-energy value")
            commercial = share_of_final(ledger, final, False)
            with_nce = share_of_final(ledger, final, True)
            lines.append(f"{year} {_fraction(commercial)} {_fraction(with_nce)}")
    else:
        column = {"residential": "residential_mtce", "public": "public_mtce",
                  "noncommercial": "noncommercial_mtce", "total": "total_mtce"}[kind]
        lines = [f"# year {column}"]
        for year, ledger in series:
            value = {
                "residential": ledger.residential,
                "public": ledger.public,
                "noncommercial": ledger.noncommercial,
                "total": ledger.total,
            }[kind]
            lines.append(f"{year} {value}")
    return "\n".join(lines) + "\n"


def _fraction(value: Decimal) -> str:
    return f"{value.quantize(_SHARE_STEP, rounding=ROUND_HALF_UP)}"


def _require_rows(series: YearSeries) -> None:
    if len(series) == 0:
        raise EmptyReport("no rows to report")


def _csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return out.getvalue()


def _text_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [
        max(len(header[i]), *(len(row[i]) for row in rows)) if rows else len(header[i])
        for i in range(len(header))
    ]
    def fmt(cells: Sequence[str]) -> str:
        return "  ".join(cell.rjust(widths[i]) for i, cell in enumerate(cells))
    ruler = "  ".join("-" * w for w in widths)
    return "\n".join([fmt(header), ruler] + [fmt(row) for row in rows]) + "\n"
