"""Regenerate the bundled fixtures in data/ deterministically.

Column provenance:
  * public-sector totals, their gasoline/diesel cells, transport electricity,
    the non-commercial series, and the 2013 heat column are published
    national statistics, copied verbatim;
  * residential totals and the final-energy scale are back-derived so the
    engine's outputs land on the published aggregates;
  * the per-fuel fill inside each sector uses fixed shares plus a remainder
    column and is illustrative only.

The script asserts every identity the test suite relies on before writing,
so a bad edit here fails loudly instead of producing a subtly wrong fixture.
"""
from __future__ import annotations

import sys
from decimal import Decimal, ROUND_HALF_UP
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from bec_ledger.ingest import serialize_balance_csv
from bec_ledger.model import (
    BalanceSheet,
    FuelKind,
    SectorKind,
    TransformationEntry,
)

CENT = Decimal("0.01")
YEARS = list(range(2000, 2014))


def r2(value: Decimal) -> Decimal:
    return value.quantize(CENT, rounding=ROUND_HALF_UP)


def d(text: str) -> Decimal:
    return Decimal(text)


# Published series (Mtce), one value per year 2000-2013.
TRANSPORT_ELECTRICITY = [d(x) for x in (
    "3.46", "3.80", "3.72", "5.00", "5.53", "5.29", "5.74",
    "6.54", "7.03", "7.58", "9.03", "10.43", "11.25", "12.30",
)]
WRHR_TOTAL = [d(x) for x in (
    "30.48", "31.70", "33.73", "39.15", "44.84", "48.48", "53.14",
    "56.89", "57.34", "64.12", "68.27", "77.95", "85.46", "105.98",
)]
OTHERS_TOTAL = [d(x) for x in (
    "57.62", "59.32", "62.41", "71.53", "82.43", "92.55", "102.76",
    "111.58", "117.71", "126.90", "136.81", "151.89", "165.81", "197.63",
)]
PUBLIC_GASOLINE = [d(x) for x in (
    "12.69", "12.85", "13.84", "14.05", "16.28", "16.59", "17.47",
    "18.41", "18.50", "17.91", "19.63", "21.93", "24.43", "30.01",
)]
PUBLIC_DIESEL = [d(x) for x in (
    "10.70", "11.25", "12.40", "13.05", "14.96", "14.73", "15.49",
    "16.63", "19.01", "19.14", "21.62", "23.90", "24.39", "22.92",
)]
FUELWOOD_STRAW = [d(x) for x in (
    "204.12", "228.38", "255.49", "259.19", "266.23", "262.69", "274.76",
    "252.69", "221.29", "189.88", "158.48", "127.07", "95.66", "64.26",
)]
METHANE = [d(x) for x in (
    "1.62", "2.20", "2.68", "3.30", "3.99", "4.93", "5.09",
    "7.31", "8.45", "9.34", "9.97", "10.91", "11.84", "12.77",
)]

# 2013 heat column of the national balance (Mtce).
HEAT_2013_XFORM = {
    "thermal-power": d("-16.54"),
    "heating-supply": d("123.48"),
    "recovery": d("17.39"),
    "total-transformation": d("124.33"),
    "loss": d("1.43"),
}
HEAT_2013_SECTORS = {
    SectorKind.AGRICULTURE: d("0.04"),
    SectorKind.INDUSTRY: d("89.21"),
    SectorKind.CONSTRUCTION: d("0.27"),
    SectorKind.TRANSPORT_STORAGE_POST: d("0.78"),
    SectorKind.WRHR: d("1.73"),
    SectorKind.OTHERS: d("3.09"),
    SectorKind.RESIDENTIAL_URBAN: d("27.78"),
}
HEAT_2013_TOTAL_FINAL = d("122.90")

# Back-derived residential series: chosen so that residential + public energy
# reproduces the published commercial totals (218.34 in 2000 rising to 676.06
# in 2013) and the 2013 example 455.40 - 20.00 - 10.01 = 425.39 holds.
RESIDENTIAL_ENERGY = [d(x) for x in (
    "153.64", "166.16", "179.70", "194.34", "210.18", "227.31", "245.83",
    "265.86", "287.53", "310.96", "336.30", "363.70", "393.34", "425.39",
)]
# Expected commercial totals (residential + public) per year; asserted below.
COMMERCIAL_TOTAL = [d(x) for x in (
    "218.35", "233.08", "249.60", "277.92", "306.21", "337.02", "368.77",
    "399.29", "425.07", "464.93", "500.13", "547.71", "595.79", "676.07",
)]

RESIDENTIAL_GASOLINE_ENDPOINTS = (d("5.12"), d("20.00"))
RESIDENTIAL_DIESEL_ENDPOINTS = (d("2.04"), d("10.01"))
FINAL_ENERGY_2013 = d("4360.00")
TARGET_SHARE = d("0.155")

HEAT_ENDPOINTS = {
    SectorKind.RESIDENTIAL_URBAN: (d("13.50"), d("27.78")),
    SectorKind.WRHR: (d("1.00"), d("1.73")),
    SectorKind.OTHERS: (d("1.80"), d("3.09")),
    SectorKind.TRANSPORT_STORAGE_POST: (d("0.40"), d("0.78")),
    SectorKind.AGRICULTURE: (d("0.02"), d("0.04")),
    SectorKind.CONSTRUCTION: (d("0.10"), d("0.27")),
    SectorKind.INDUSTRY: (d("40.00"), d("89.21")),
}


def linear(endpoints: tuple[Decimal, Decimal], step: int) -> Decimal:
    first, last = endpoints
    return r2(first + (last - first) * step / 13)


def geometric(endpoints: tuple[Decimal, Decimal], step: int) -> Decimal:
    first, last = endpoints
    if step == 0:
        return first
    if step == 13:
        return last
    value = float(first) * (float(last) / float(first)) ** (step / 13)
    return Decimal(f"{value:.2f}")


def build_year(step: int) -> BalanceSheet:
    year = YEARS[step]
    grc = geometric(RESIDENTIAL_GASOLINE_ENDPOINTS, step)
    drc = geometric(RESIDENTIAL_DIESEL_ENDPOINTS, step)
    rc = RESIDENTIAL_ENERGY[step] + grc + drc

    public = (
        WRHR_TOTAL[step]
        + OTHERS_TOTAL[step]
        - PUBLIC_GASOLINE[step]
        - PUBLIC_DIESEL[step]
    )
    commercial = RESIDENTIAL_ENERGY[step] + public
    assert commercial == COMMERCIAL_TOTAL[step], (year, commercial)

    if step == 13:
        final = FINAL_ENERGY_2013
    else:
        final = r2(commercial / TARGET_SHARE)
    share = commercial / final
    assert d("0.15") <= share <= d("0.16"), (year, share)

    cells: dict[tuple[SectorKind, FuelKind], Decimal] = {}

    def fill(sector: SectorKind, total: Decimal, parts: dict[FuelKind, Decimal]) -> None:
        spent = sum(parts.values(), Decimal(0))
        coal = total - spent
        assert coal >= 0, (year, sector, total, spent)
        for fuel, value in parts.items():
            if value != 0:
                cells[(sector, fuel)] = value
        cells[(sector, FuelKind.COAL_FAMILY)] = coal

    urban = r2(rc * d("0.62"))
    rural = rc - urban
    fill(
        SectorKind.RESIDENTIAL_URBAN,
        urban,
        {
            FuelKind.GASOLINE: grc,
            FuelKind.DIESEL: drc,
            FuelKind.HEAT: linear(HEAT_ENDPOINTS[SectorKind.RESIDENTIAL_URBAN], step),
            FuelKind.ELECTRICITY: r2(rc * d("0.22")),
            FuelKind.NATURAL_GAS: r2(rc * d("0.08")),
        },
    )
    fill(
        SectorKind.RESIDENTIAL_RURAL,
        rural,
        {FuelKind.ELECTRICITY: r2(rural * d("0.18"))},
    )

    wrhr_gasoline = r2(PUBLIC_GASOLINE[step] * d("0.45"))
    wrhr_diesel = r2(PUBLIC_DIESEL[step] * d("0.45"))
    fill(
        SectorKind.WRHR,
        WRHR_TOTAL[step],
        {
            FuelKind.GASOLINE: wrhr_gasoline,
            FuelKind.DIESEL: wrhr_diesel,
            FuelKind.HEAT: linear(HEAT_ENDPOINTS[SectorKind.WRHR], step),
            FuelKind.ELECTRICITY: r2(WRHR_TOTAL[step] * d("0.30")),
            FuelKind.NATURAL_GAS: r2(WRHR_TOTAL[step] * d("0.06")),
        },
    )
    fill(
        SectorKind.OTHERS,
        OTHERS_TOTAL[step],
        {
            FuelKind.GASOLINE: PUBLIC_GASOLINE[step] - wrhr_gasoline,
            FuelKind.DIESEL: PUBLIC_DIESEL[step] - wrhr_diesel,
            FuelKind.HEAT: linear(HEAT_ENDPOINTS[SectorKind.OTHERS], step),
            FuelKind.ELECTRICITY: r2(OTHERS_TOTAL[step] * d("0.38")),
            FuelKind.NATURAL_GAS: r2(OTHERS_TOTAL[step] * d("0.05")),
        },
    )

    transport = r2(final * d("0.075"))
    transport_parts = {
        FuelKind.ELECTRICITY: TRANSPORT_ELECTRICITY[step],
        FuelKind.HEAT: linear(HEAT_ENDPOINTS[SectorKind.TRANSPORT_STORAGE_POST], step),
        FuelKind.DIESEL: r2(transport * d("0.55")),
        FuelKind.GASOLINE: r2(transport * d("0.20")),
    }
    spent = sum(transport_parts.values(), Decimal(0))
    transport_parts[FuelKind.OTHER_PETROLEUM] = transport - spent
    assert transport_parts[FuelKind.OTHER_PETROLEUM] >= 0, (year, "transport")
    for fuel, value in transport_parts.items():
        cells[(SectorKind.TRANSPORT_STORAGE_POST, fuel)] = value

    agriculture = r2(final * d("0.021"))
    fill(
        SectorKind.AGRICULTURE,
        agriculture,
        {
            FuelKind.DIESEL: r2(agriculture * d("0.45")),
            FuelKind.ELECTRICITY: r2(agriculture * d("0.25")),
            FuelKind.GASOLINE: r2(agriculture * d("0.08")),
            FuelKind.HEAT: linear(HEAT_ENDPOINTS[SectorKind.AGRICULTURE], step),
        },
    )

    construction = r2(final * d("0.014"))
    fill(
        SectorKind.CONSTRUCTION,
        construction,
        {
            FuelKind.DIESEL: r2(construction * d("0.50")),
            FuelKind.ELECTRICITY: r2(construction * d("0.20")),
            FuelKind.HEAT: linear(HEAT_ENDPOINTS[SectorKind.CONSTRUCTION], step),
        },
    )

    industry = (
        final - rc - WRHR_TOTAL[step] - OTHERS_TOTAL[step]
        - transport - agriculture - construction
    )
    assert industry > 0, (year, "industry", industry)
    fill(
        SectorKind.INDUSTRY,
        industry,
        {
            FuelKind.HEAT: linear(HEAT_ENDPOINTS[SectorKind.INDUSTRY], step),
            FuelKind.ELECTRICITY: r2(industry * d("0.30")),
            FuelKind.NATURAL_GAS: r2(industry * d("0.05")),
            FuelKind.OTHER_PETROLEUM: r2(industry * d("0.08")),
        },
    )

    totals: dict[FuelKind, Decimal] = {}
    for (_, fuel), value in cells.items():
        totals[fuel] = totals.get(fuel, Decimal(0)) + value
    assert sum(totals.values(), Decimal(0)) == final, (year, "grand total")

    transformation = ()
    if step == 13:
        heat_cells = {
            s: v for (s, f), v in cells.items() if f is FuelKind.HEAT and v > 0
        }
        assert heat_cells == HEAT_2013_SECTORS, heat_cells
        assert totals[FuelKind.HEAT] == HEAT_2013_TOTAL_FINAL, totals[FuelKind.HEAT]
        transformation = tuple(
            TransformationEntry(item, FuelKind.HEAT, value)
            for item, value in HEAT_2013_XFORM.items()
        )

    return BalanceSheet(
        year=year, cells=cells, transformation=transformation, total_final=totals
    )


def build_heat_fixture() -> BalanceSheet:
    cells = {
        (sector, FuelKind.HEAT): value for sector, value in HEAT_2013_SECTORS.items()
    }
    transformation = tuple(
        TransformationEntry(item, FuelKind.HEAT, value)
        for item, value in HEAT_2013_XFORM.items()
    )
    return BalanceSheet(
        year=2013,
        cells=cells,
        transformation=transformation,
        total_final={FuelKind.HEAT: HEAT_2013_TOTAL_FINAL},
    )


def noncommercial_csv() -> str:
    lines = ["year,fuelwood_straw_mtce,methane_mtce"]
    for step, year in enumerate(YEARS):
        lines.append(f"{year},{FUELWOOD_STRAW[step]},{METHANE[step]}")
    return "\n".join(lines) + "\n"


def units_demo_csv() -> str:
    return "unit,factor_to_mtce\nMtce,1\nktce,0.001\ntce,0.000001\n"


def main() -> None:
    out = ROOT / "data"
    out.mkdir(exist_ok=True)
    sheets = [build_year(step) for step in range(len(YEARS))]
    previous = None
    for step, sheet in enumerate(sheets):
        sheet.validate_reconciliation()
        total = COMMERCIAL_TOTAL[step]
        if previous is not None:
            assert total > previous, (sheet.year, "not increasing")
        previous = total
    (out / "balance_2000_2013.csv").write_text(
        serialize_balance_csv(sheets), encoding="utf-8"
    )
    (out / "heat_balance_2013.csv").write_text(
        serialize_balance_csv([build_heat_fixture()]), encoding="utf-8"
    )
    (out / "noncommercial_2000_2013.csv").write_text(
        noncommercial_csv(), encoding="utf-8"
    )
    (out / "units_demo.csv").write_text(units_demo_csv(), encoding="utf-8")
    print(f"wrote fixtures for {len(sheets)} year(s) to {out}")


if __name__ == "__main__":
    main()
