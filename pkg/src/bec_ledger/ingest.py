"""Parsers for balance-sheet, non-commercial, and unit-conversion CSV files.

Balance CSV schema (header required, comma-separated, UTF-8):
    year,sector,fuel,quantity,unit
Transformation rows use sector values ``xform:<item>`` with signed quantities;
declared per-fuel totals use sector ``total-final``. Non-commercial schema:
``year,fuelwood_straw_mtce,methane_mtce``. Conversion-table schema:
``unit,factor_to_mtce``.

Parsers are pure functions of their input stream. Quantities are normalized
to the 0.01 Mtce grid at parse time, so a parsed sheet always satisfies the
core-model invariants.
"""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import IO, Iterable, Mapping

from .errors import (
    DuplicateCell,
    InputError,
    NegativeQuantity,
    ParseError,
    UnknownFuel,
    UnknownSector,
    UnknownUnit,
)
from .model import (
    CENT,
    DEFAULT_RECONCILIATION_TOLERANCE,
    TRANSFORMATION_ITEMS,
    BalanceSheet,
    FuelKind,
    NonCommercialRecord,
    SectorKind,
    TransformationEntry,
    YearSeries,
    mtce,
    signed_mtce,
)

BALANCE_HEADER = ("year", "sector", "fuel", "quantity", "unit")
NONCOMMERCIAL_HEADER = ("year", "fuelwood_straw_mtce", "methane_mtce")
CONVERSION_HEADER = ("unit", "factor_to_mtce")

XFORM_PREFIX = "xform:"
TOTAL_FINAL_LABEL = "total-final"

# Canonical tokens plus common yearbook spellings. Unknown labels fail loudly;
# in particular, agriculture is never folded into the others sector.
SECTOR_ALIASES: Mapping[str, SectorKind] = {
    "agriculture": SectorKind.AGRICULTURE,
    "farming, forestry, animal husbandry, fishery & water conservancy": SectorKind.AGRICULTURE,
    "farming, forestry, animal husbandry and fishery": SectorKind.AGRICULTURE,
    "industry": SectorKind.INDUSTRY,
    "construction": SectorKind.CONSTRUCTION,
    "transport-storage-post": SectorKind.TRANSPORT_STORAGE_POST,
    "transport, storage and post": SectorKind.TRANSPORT_STORAGE_POST,
    "transportation, storage and postal services": SectorKind.TRANSPORT_STORAGE_POST,
    "wrhr": SectorKind.WRHR,
    "wholesale, retail trade and hotel, restaurants": SectorKind.WRHR,
    "wholesale and retail trade, hotels and catering services": SectorKind.WRHR,
    "others": SectorKind.OTHERS,
    "other sectors": SectorKind.OTHERS,
    "residential-urban": SectorKind.RESIDENTIAL_URBAN,
    "residential urban": SectorKind.RESIDENTIAL_URBAN,
    "urban residential": SectorKind.RESIDENTIAL_URBAN,
    "residential-rural": SectorKind.RESIDENTIAL_RURAL,
    "residential rural": SectorKind.RESIDENTIAL_RURAL,
    "rural residential": SectorKind.RESIDENTIAL_RURAL,
}

FUEL_ALIASES: Mapping[str, FuelKind] = {
    "coal-family": FuelKind.COAL_FAMILY,
    "coal": FuelKind.COAL_FAMILY,
    "coal and coal products": FuelKind.COAL_FAMILY,
    "gasoline": FuelKind.GASOLINE,
    "petrol": FuelKind.GASOLINE,
    "diesel": FuelKind.DIESEL,
    "diesel oil": FuelKind.DIESEL,
    "other-petroleum": FuelKind.OTHER_PETROLEUM,
    "other petroleum products": FuelKind.OTHER_PETROLEUM,
    "natural-gas": FuelKind.NATURAL_GAS,
    "natural gas": FuelKind.NATURAL_GAS,
    "heat": FuelKind.HEAT,
    "heating power": FuelKind.HEAT,
    "electricity": FuelKind.ELECTRICITY,
    "electric power": FuelKind.ELECTRICITY,
    "fuelwood-straw": FuelKind.FUELWOOD_STRAW,
    "fuelwood and straw": FuelKind.FUELWOOD_STRAW,
    "fuel wood and straw": FuelKind.FUELWOOD_STRAW,
    "methane": FuelKind.METHANE,
    "biogas": FuelKind.METHANE,
    "other": FuelKind.OTHER,
}


@dataclass(frozen=True)
class RawCell:
    """One parsed balance row before unit normalization."""

    year: int
    sector: str
    fuel: FuelKind
    quantity: Decimal
    unit: str
    line: int | None = None


class ConversionTable:
    """Unit-to-Mtce factors; lookups are case-insensitive, factors positive."""

    def __init__(self, factors: Mapping[str, Decimal | str]):
        table: dict[str, Decimal] = {}
        for unit, factor in factors.items():
            try:
                value = Decimal(str(factor))
            except InvalidOperation as exc:
                raise InputError(f"bad conversion factor for {unit!r}: {factor!r}") from exc
            if value <= 0:
                raise InputError(f"conversion factor for {unit!r} must be > 0, got {factor}")
            table[unit.strip().lower()] = value
        self._factors = table

    def factor(self, unit: str) -> Decimal:
        try:
            return self._factors[unit.strip().lower()]
        except KeyError:
            raise UnknownUnit(unit) from None

    def __contains__(self, unit: str) -> bool:
        return unit.strip().lower() in self._factors


DEFAULT_CONVERSIONS = ConversionTable(
    {"Mtce": "1", "ktce": "0.001", "tce": "0.000001"}
)


def normalize(raw: RawCell, table: ConversionTable) -> Decimal:
    """Convert a raw quantity to Mtce on the 0.01 grid (ties away from zero)."""
    return signed_mtce(raw.quantity * table.factor(raw.unit))


def parse_balance_csv(
    source: str | os.PathLike[str] | IO,
    units: ConversionTable | None = None,
    tolerance: Decimal | None = DEFAULT_RECONCILIATION_TOLERANCE,
) -> list[BalanceSheet]:
    """Parse balance rows into per-year sheets, ascending by year.

    An empty stream yields an empty list. Declared total-final rows, when
    present, are reconciled against cell sums within `tolerance` (pass None
    to skip reconciliation).
    """
    table = units if units is not None else DEFAULT_CONVERSIONS
    rows = _read_rows(source, BALANCE_HEADER)

    cells: dict[int, dict[tuple[SectorKind, FuelKind], Decimal]] = {}
    xform: dict[int, dict[tuple[str, FuelKind], Decimal]] = {}
    totals: dict[int, dict[FuelKind, Decimal]] = {}

    for line, row in rows:
        year = _parse_int(row[0], line, "year")
        sector_label = row[1].strip()
        fuel = _parse_fuel(row[2], line)
        quantity = _parse_decimal(row[3], line, "quantity")
        value = normalize(RawCell(year, sector_label, fuel, quantity, row[4], line), table)

        key_label = sector_label.lower()
        if key_label.startswith(XFORM_PREFIX):
            item = key_label[len(XFORM_PREFIX):]
            if item not in TRANSFORMATION_ITEMS:
                raise UnknownSector(sector_label, line=line)
            bucket = xform.setdefault(year, {})
            if (item, fuel) in bucket:
                raise DuplicateCell(
                    f"year {year}, {sector_label}, fuel {fuel.value} defined twice (line {line})"
                )
            bucket[(item, fuel)] = value
        elif key_label == TOTAL_FINAL_LABEL:
            _require_non_negative(value, line)
            bucket = totals.setdefault(year, {})
            if fuel in bucket:
                raise DuplicateCell(
                    f"year {year}, total-final, fuel {fuel.value} defined twice (line {line})"
                )
            bucket[fuel] = value
        else:
            sector = _parse_sector(sector_label, line)
            _require_non_negative(value, line)
            bucket = cells.setdefault(year, {})
            if (sector, fuel) in bucket:
                raise DuplicateCell(
                    f"year {year}, sector {sector.value}, fuel {fuel.value} "
                    f"defined twice (line {line})"
                )
            bucket[(sector, fuel)] = value

    sheets = []
    for year in sorted(set(cells) | set(xform) | set(totals)):
        entries = tuple(
            TransformationEntry(item, fuel, value)
            for (item, fuel), value in xform.get(year, {}).items()
        )
        sheet = BalanceSheet(
            year=year,
            cells=cells.get(year, {}),
            transformation=entries,
            total_final=totals.get(year, {}),
        )
        if tolerance is not None:
            sheet.validate_reconciliation(tolerance)
        sheets.append(sheet)
    return sheets


def parse_noncommercial_csv(
    source: str | os.PathLike[str] | IO,
) -> YearSeries[NonCommercialRecord]:
    """Parse per-year non-commercial records (fuelwood/straw and methane, Mtce)."""
    records = []
    for line, row in _read_rows(source, NONCOMMERCIAL_HEADER):
        year = _parse_int(row[0], line, "year")
        fuelwood = _parse_decimal(row[1], line, "fuelwood_straw_mtce")
        methane = _parse_decimal(row[2], line, "methane_mtce")
        _require_non_negative(fuelwood, line)
        _require_non_negative(methane, line)
        records.append((year, NonCommercialRecord(year, fuelwood, methane)))
    return YearSeries(records)


def parse_conversion_csv(source: str | os.PathLike[str] | IO) -> ConversionTable:
    """Parse a unit,factor_to_mtce table (factors must be positive)."""
    factors: dict[str, Decimal] = {}
    for line, row in _read_rows(source, CONVERSION_HEADER):
        unit = row[0].strip()
        if not unit:
            raise ParseError("empty unit name", line=line, column="unit")
        if unit.lower() in {u.lower() for u in factors}:
            raise DuplicateCell(f"unit {unit!r} defined twice (line {line})")
        factors[unit] = _parse_decimal(row[1], line, "factor_to_mtce")
    return ConversionTable(factors)


def serialize_balance_csv(sheets: Iterable[BalanceSheet]) -> str:
    """Render sheets to the canonical balance CSV (sorted rows, Mtce, 2 decimals).

    Canonical means parse(serialize(sheets)) reproduces the sheets bit-exact.
    """
    sector_order = {s: i for i, s in enumerate(SectorKind)}
    fuel_order = {f: i for i, f in enumerate(FuelKind)}
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BALANCE_HEADER)
    for sheet in sorted(sheets, key=lambda s: s.year):
        for (sector, fuel) in sorted(
            sheet.cells, key=lambda k: (sector_order[k[0]], fuel_order[k[1]])
        ):
            writer.writerow(
                [sheet.year, sector.value, fuel.value, f"{sheet.cells[(sector, fuel)]}", "Mtce"]
            )
        for entry in sheet.transformation:
            writer.writerow(
                [sheet.year, f"{XFORM_PREFIX}{entry.item}", entry.fuel.value, f"{entry.value}", "Mtce"]
            )
        for fuel in sorted(sheet.total_final, key=lambda f: fuel_order[f]):
            writer.writerow(
                [sheet.year, TOTAL_FINAL_LABEL, fuel.value, f"{sheet.total_final[fuel]}", "Mtce"]
            )
    return out.getvalue()


def _read_rows(
    source: str | os.PathLike[str] | IO, header: tuple[str, ...]
) -> list[tuple[int, list[str]]]:
    """Read CSV rows, validate the header, return (line number, fields) pairs."""
    text = _read_text(source)
    if not text.strip():
        return []
    reader = csv.reader(io.StringIO(text))
    rows: list[tuple[int, list[str]]] = []
    first = True
    for row in reader:
        line = reader.line_num
        if not row or all(not field.strip() for field in row):
            continue
        if first:
            got = tuple(field.strip().lower() for field in row)
            if got != header:
                raise ParseError(
                    f"expected header {','.join(header)!r}, got {','.join(row)!r}",
                    line=line,
                )
            first = False
            continue
        if len(row) != len(header):
            raise ParseError(
                f"expected {len(header)} fields, got {len(row)}", line=line
            )
        rows.append((line, row))
    return rows


def _read_text(source: str | os.PathLike[str] | IO) -> str:
    if hasattr(source, "read"):
        data = source.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    with open(source, "r", encoding="utf-8") as handle:
        return handle.read()


def _parse_int(field: str, line: int, column: str) -> int:
    try:
        return int(field.strip())
    except ValueError:
        raise ParseError(f"not an integer: {field!r}", line=line, column=column) from None


def _parse_decimal(field: str, line: int, column: str) -> Decimal:
    try:
        return Decimal(field.strip())
    except InvalidOperation:
        raise ParseError(f"not a decimal: {field!r}", line=line, column=column) from None


def _parse_sector(label: str, line: int) -> SectorKind:
    try:
        return SECTOR_ALIASES[label.strip().lower()]
    except KeyError:
        raise UnknownSector(label, line=line) from None


def _parse_fuel(label: str, line: int) -> FuelKind:
    try:
        return FUEL_ALIASES[label.strip().lower()]
    except KeyError:
        raise UnknownFuel(label, line=line) from None


def _require_non_negative(value: Decimal, line: int) -> None:
    if value < 0:
        raise NegativeQuantity(
            f"consumption quantity must be >= 0, got {value} (line {line})"
        )
