"""Shared helpers for the property suite: random inputs and a brute-force oracle."""
from __future__ import annotations

import random
from decimal import Decimal, ROUND_HALF_UP

from bec_ledger.accounting import AccountingPolicy
from bec_ledger.model import (
    BalanceSheet,
    FuelKind,
    NonCommercialRecord,
    SectorKind,
    TransformationEntry,
)

CENT = Decimal("0.01")

RESIDENTIAL = (SectorKind.RESIDENTIAL_URBAN, SectorKind.RESIDENTIAL_RURAL)
PUBLIC = (SectorKind.WRHR, SectorKind.OTHERS)
NONCOMMERCIAL_FUELS = (FuelKind.FUELWOOD_STRAW, FuelKind.METHANE)


def cents(rng: random.Random, low: int = 0, high: int = 10000) -> Decimal:
    """Random quantity on the 0.01 grid."""
    return Decimal(rng.randint(low, high)) / 100


def random_case(
    rng: random.Random,
) -> tuple[BalanceSheet, NonCommercialRecord, AccountingPolicy]:
    """One random small sheet (at most 4 sectors x 5 fuels), record, and policy.

    The three sectors every ledger needs are always present; deductions can
    never exceed their pool because the deducted cells are part of it.
    """
    sectors = [SectorKind.RESIDENTIAL_URBAN, SectorKind.WRHR, SectorKind.OTHERS]
    extra = rng.choice(
        [
            None,
            SectorKind.RESIDENTIAL_RURAL,
            SectorKind.TRANSPORT_STORAGE_POST,
            SectorKind.INDUSTRY,
        ]
    )
    if extra is not None:
        sectors.append(extra)
    fuel_pool = [
        FuelKind.COAL_FAMILY,
        FuelKind.GASOLINE,
        FuelKind.DIESEL,
        FuelKind.ELECTRICITY,
        FuelKind.HEAT,
    ]
    cells: dict[tuple[SectorKind, FuelKind], Decimal] = {}
    for sector in sectors:
        for fuel in rng.sample(fuel_pool, rng.randint(1, len(fuel_pool))):
            cells[(sector, fuel)] = cents(rng)

    include_elec = rng.random() < 0.3
    if include_elec:
        cells[(SectorKind.TRANSPORT_STORAGE_POST, FuelKind.ELECTRICITY)] = cents(rng)

    add_heating = rng.random() < 0.2
    transformation = ()
    if add_heating:
        transformation = (
            TransformationEntry("heating-supply", FuelKind.HEAT, cents(rng)),
        )

    # Non-commercial cells must never leak into commercial sector totals.
    if rng.random() < 0.3:
        cells[(SectorKind.RESIDENTIAL_URBAN, FuelKind.FUELWOOD_STRAW)] = cents(rng)

    sheet = BalanceSheet(year=2013, cells=cells, transformation=transformation)
    record = NonCommercialRecord(2013, cents(rng), cents(rng))
    policy = AccountingPolicy(
        residential_gasoline_deduction=cents(rng, 0, 100),
        residential_diesel_deduction=cents(rng, 0, 100),
        public_gasoline_deduction=cents(rng, 0, 100),
        public_diesel_deduction=cents(rng, 0, 100),
        include_transport_electricity=include_elec,
        include_noncommercial=rng.random() < 0.8,
        add_central_heating=add_heating,
    )
    return sheet, record, policy


def oracle_components(
    sheet: BalanceSheet, record: NonCommercialRecord, policy: AccountingPolicy
) -> tuple[Decimal, Decimal, Decimal, Decimal]:
    """Naive re-computation enumerating cells directly.

    Returns (residential, public, noncommercial, heating added), written from
    the accounting contract without reusing the engine's code paths.
    """

    def rounded(value: Decimal) -> Decimal:
        return value.quantize(CENT, rounding=ROUND_HALF_UP)

    def commercial_sum(sectors) -> Decimal:
        return sum(
            (
                v
                for (s, f), v in sheet.cells.items()
                if s in sectors and f not in NONCOMMERCIAL_FUELS
            ),
            Decimal(0),
        )

    def fuel_sum(sectors, kind) -> Decimal:
        return sum(
            (v for (s, f), v in sheet.cells.items() if s in sectors and f is kind),
            Decimal(0),
        )

    residential = (
        commercial_sum(RESIDENTIAL)
        - rounded(
            policy.residential_gasoline_deduction
            * fuel_sum(RESIDENTIAL, FuelKind.GASOLINE)
        )
        - rounded(
            policy.residential_diesel_deduction
            * fuel_sum(RESIDENTIAL, FuelKind.DIESEL)
        )
    )
    public = (
        commercial_sum(PUBLIC)
        - rounded(
            policy.public_gasoline_deduction * fuel_sum(PUBLIC, FuelKind.GASOLINE)
        )
        - rounded(policy.public_diesel_deduction * fuel_sum(PUBLIC, FuelKind.DIESEL))
    )
    if policy.include_transport_electricity:
        public += sheet.cells[
            (SectorKind.TRANSPORT_STORAGE_POST, FuelKind.ELECTRICITY)
        ]
    noncommercial = (
        record.fuelwood_straw + record.methane
        if policy.include_noncommercial
        else Decimal(0)
    )
    heating = Decimal(0)
    if policy.add_central_heating:
        heating = next(
            e.value
            for e in sheet.transformation
            if e.item == "heating-supply" and e.fuel is FuelKind.HEAT
        )
    return residential, public, noncommercial, heating
