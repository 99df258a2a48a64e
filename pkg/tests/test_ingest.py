"""Parsers: schemas, aliasing, unit normalization, canonical serialization."""
from __future__ import annotations

import io
from decimal import Decimal

import pytest

from bec_ledger.errors import (
    DuplicateCell,
    DuplicateYear,
    InputError,
    NegativeQuantity,
    ParseError,
    ReconciliationError,
    UnknownFuel,
    UnknownSector,
    UnknownUnit,
)
from bec_ledger.ingest import (
    ConversionTable,
    DEFAULT_CONVERSIONS,
    RawCell,
    normalize,
    parse_balance_csv,
    parse_conversion_csv,
    parse_noncommercial_csv,
    serialize_balance_csv,
)
from bec_ledger.model import FuelKind, SectorKind

BALANCE_HEADER = "year,sector,fuel,quantity,unit\n"


def balance(*rows: str):
    return parse_balance_csv(io.StringIO(BALANCE_HEADER + "\n".join(rows)))


class TestParseBalance:
    def test_fixture_parses_fourteen_years(self, sheets):
        assert len(sheets) == 14
        assert [s.year for s in sheets] == list(range(2000, 2014))

    def test_empty_stream_yields_empty_list(self):
        assert parse_balance_csv(io.StringIO("")) == []

    def test_header_only_yields_empty_list(self):
        assert parse_balance_csv(io.StringIO(BALANCE_HEADER)) == []

    def test_wrong_header_rejected(self):
        with pytest.raises(ParseError):
            parse_balance_csv(io.StringIO("y,s,f,q,u\n2000,wrhr,heat,1,Mtce"))

    def test_simple_cell(self):
        (sheet,) = balance("2000,wrhr,heat,1.73,Mtce")
        assert sheet.cell(SectorKind.WRHR, FuelKind.HEAT) == Decimal("1.73")

    def test_unknown_sector(self):
        with pytest.raises(UnknownSector):
            balance("2000,mining,heat,1,Mtce")

    def test_unknown_fuel(self):
        with pytest.raises(UnknownFuel):
            balance("2000,wrhr,plutonium,1,Mtce")

    def test_unknown_unit(self):
        with pytest.raises(UnknownUnit):
            balance("2000,wrhr,heat,1,furlongs")

    def test_duplicate_cell(self):
        with pytest.raises(DuplicateCell):
            balance("2000,wrhr,heat,1,Mtce", "2000,wrhr,heat,2,Mtce")

    def test_negative_consumption_reports_line(self):
        with pytest.raises(NegativeQuantity) as excinfo:
            balance("2000,wrhr,heat,1,Mtce", "2001,wrhr,heat,-1,Mtce")
        assert "line 3" in str(excinfo.value)

    def test_bad_quantity_reports_line_and_column(self):
        with pytest.raises(ParseError) as excinfo:
            balance("2000,wrhr,heat,much,Mtce")
        assert "line 2" in str(excinfo.value)
        assert "quantity" in str(excinfo.value)

    def test_field_count_mismatch(self):
        with pytest.raises(ParseError):
            balance("2000,wrhr,heat,1")

    def test_transformation_rows_signed(self):
        (sheet,) = balance(
            "2013,xform:thermal-power,heat,-16.54,Mtce",
            "2013,wrhr,heat,1.00,Mtce",
        )
        assert sheet.transformation_value("thermal-power", FuelKind.HEAT) == Decimal(
            "-16.54"
        )

    def test_unknown_transformation_item(self):
        with pytest.raises(UnknownSector):
            balance("2013,xform:refinery,heat,1,Mtce")

    def test_total_final_rows_collected(self):
        (sheet,) = balance(
            "2013,wrhr,heat,1.00,Mtce",
            "2013,total-final,heat,1.00,Mtce",
        )
        assert sheet.total_final[FuelKind.HEAT] == Decimal("1.00")

    def test_reconciliation_enforced(self):
        with pytest.raises(ReconciliationError):
            balance(
                "2013,wrhr,heat,1.00,Mtce",
                "2013,total-final,heat,9.00,Mtce",
            )

    def test_reconciliation_skippable(self):
        text = BALANCE_HEADER + "2013,wrhr,heat,1.00,Mtce\n2013,total-final,heat,9.00,Mtce"
        sheets = parse_balance_csv(io.StringIO(text), tolerance=None)
        assert len(sheets) == 1

    def test_yearbook_aliases(self):
        (sheet,) = balance(
            '2000,"Wholesale, Retail Trade and Hotel, Restaurants",Natural Gas,1.00,Mtce',
            '2000,"Transport, Storage and Post",Electric Power,3.46,Mtce',
            "2000,Urban Residential,Fuelwood and Straw,2.00,Mtce",
        )
        assert sheet.cell(SectorKind.WRHR, FuelKind.NATURAL_GAS) == Decimal("1.00")
        assert sheet.cell(
            SectorKind.TRANSPORT_STORAGE_POST, FuelKind.ELECTRICITY
        ) == Decimal("3.46")
        assert sheet.cell(
            SectorKind.RESIDENTIAL_URBAN, FuelKind.FUELWOOD_STRAW
        ) == Decimal("2.00")

    def test_custom_units_applied(self):
        table = ConversionTable({"Mtce": "1", "ktce": "0.001"})
        text = BALANCE_HEADER + "2000,wrhr,heat,1500,ktce"
        (sheet,) = parse_balance_csv(io.StringIO(text), units=table)
        assert sheet.cell(SectorKind.WRHR, FuelKind.HEAT) == Decimal("1.50")


class TestNormalize:
    def test_identity_factor(self):
        raw = RawCell(2000, "wrhr", FuelKind.HEAT, Decimal("10"), "Mtce")
        assert normalize(raw, DEFAULT_CONVERSIONS) == Decimal("10.00")

    def test_ktce_factor(self):
        raw = RawCell(2000, "wrhr", FuelKind.HEAT, Decimal("10"), "ktce")
        assert normalize(raw, DEFAULT_CONVERSIONS) == Decimal("0.01")

    def test_unknown_unit(self):
        raw = RawCell(2000, "wrhr", FuelKind.HEAT, Decimal("10"), "furlongs")
        with pytest.raises(UnknownUnit):
            normalize(raw, DEFAULT_CONVERSIONS)


class TestConversionTable:
    def test_lookup_is_case_insensitive(self):
        assert DEFAULT_CONVERSIONS.factor("MTCE") == Decimal("1")
        assert "mtce" in DEFAULT_CONVERSIONS

    def test_non_positive_factor_rejected(self):
        with pytest.raises(InputError):
            ConversionTable({"Mtce": "0"})
        with pytest.raises(InputError):
            ConversionTable({"Mtce": "-1"})

    def test_bad_factor_rejected(self):
        with pytest.raises(InputError):
            ConversionTable({"Mtce": "plenty"})


class TestParseNoncommercial:
    HEADER = "year,fuelwood_straw_mtce,methane_mtce\n"

    def test_published_rows(self):
        series = parse_noncommercial_csv(
            io.StringIO(self.HEADER + "2000,204.12,1.62\n2013,64.26,12.77")
        )
        assert series[2000].total == Decimal("205.74")
        assert series[2013].total == Decimal("77.03")

    def test_duplicate_year(self):
        with pytest.raises(DuplicateYear):
            parse_noncommercial_csv(
                io.StringIO(self.HEADER + "2000,1,1\n2000,2,2")
            )

    def test_negative_value(self):
        with pytest.raises(NegativeQuantity):
            parse_noncommercial_csv(io.StringIO(self.HEADER + "2013,-1,0"))

    def test_fixture_has_every_year(self, records):
        assert records.years() == tuple(range(2000, 2014))


class TestParseConversion:
    def test_parses_demo_table(self, units_path):
        table = parse_conversion_csv(units_path)
        assert table.factor("ktce") == Decimal("0.001")

    def test_duplicate_unit(self):
        text = "unit,factor_to_mtce\nktce,0.001\nKTCE,0.002"
        with pytest.raises(DuplicateCell):
            parse_conversion_csv(io.StringIO(text))

    def test_non_positive_factor(self):
        with pytest.raises(InputError):
            parse_conversion_csv(io.StringIO("unit,factor_to_mtce\nMtce,0"))


class TestSerialize:
    def test_round_trip_single_sheet(self):
        (sheet,) = balance(
            "2013,wrhr,heat,1.73,Mtce",
            "2013,xform:heating-supply,heat,123.48,Mtce",
            "2013,total-final,heat,1.73,Mtce",
        )
        text = serialize_balance_csv([sheet])
        (reparsed,) = parse_balance_csv(io.StringIO(text))
        assert reparsed == sheet

    def test_round_trip_full_fixture(self, sheets):
        text = serialize_balance_csv(sheets)
        assert parse_balance_csv(io.StringIO(text)) == sheets

    def test_header_first_line(self, sheets):
        first_line = serialize_balance_csv(sheets).splitlines()[0]
        assert first_line == "year,sector,fuel,quantity,unit"
