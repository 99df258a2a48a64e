"""Policy-parameterized accounting of building operational energy.

Residential energy is the residential sectors' commercial consumption minus
policy-weighted gasoline and diesel deductions (private vehicle fuel is not
building energy). Public energy is the wholesale/retail/hotel/restaurant and
others sectors' consumption minus their vehicle-fuel deductions, optionally
plus transport-sector electricity. Non-commercial energy (rural fuelwood,
straw, methane) enters as its own term. The three terms are disjoint:
residential totals cover commercial fuels only.

Deduction fractions are applied per item and rounded to the 0.01 Mtce grid
before subtraction, so a ledger's itemization always reconstructs its inputs
exactly.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from decimal import Decimal, InvalidOperation, ROUND_HALF_UP
from typing import IO, Iterable, Mapping

from .errors import (
    InputError,
    EmptyLedger,
    InvalidDenominator,
    MissingCell,
    MissingHeatData,
    MissingSector,
    PolicyError,
    YearMismatch,
)
from .model import (
    CENT,
    RESIDENTIAL_SECTORS,
    ZERO,
    BalanceSheet,
    FuelKind,
    NonCommercialRecord,
    SectorKind,
    YearSeries,
    quantity_sub_checked,
)

ONE = Decimal("1")

DEDUCTION_RESIDENTIAL_GASOLINE = "residential-gasoline"
DEDUCTION_RESIDENTIAL_DIESEL = "residential-diesel"
DEDUCTION_PUBLIC_GASOLINE = "public-gasoline"
DEDUCTION_PUBLIC_DIESEL = "public-diesel"
ADDITION_TRANSPORT_ELECTRICITY = "transport-electricity-added"
ADDITION_CENTRAL_HEATING = "central-heating-added"

CENTRAL_HEATING_WARNING = (
    "central heating supply added on top of final-consumption heat cells; "
    "the total double-counts district heat"
)


@dataclass(frozen=True)
class AccountingPolicy:
    """Knobs selecting an accounting variant.

    Deduction fields are fractions in [0, 1] of the matching fuel cell to
    remove. The full-deduction defaults treat all residential and
    service-sector vehicle fuel as transport, not building, energy.
    `add_central_heating` re-adds the heating-supply transformation output on
    top of final consumption; it exists only so the audit can demonstrate
    that double count and is never part of a correct accounting.
    """

    residential_gasoline_deduction: Decimal = ONE
    residential_diesel_deduction: Decimal = ONE
    public_gasoline_deduction: Decimal = ONE
    public_diesel_deduction: Decimal = ONE
    include_transport_electricity: bool = False
    include_noncommercial: bool = True
    add_central_heating: bool = False
    name: str = field(default="custom", compare=False)

    def __post_init__(self) -> None:
        for f in fields(self):
            if not f.name.endswith("_deduction"):
                continue
            raw = getattr(self, f.name)
            try:
                value = Decimal(str(raw))
            except InvalidOperation as exc:
                raise PolicyError(f"{f.name}: not a number: {raw!r}") from exc
            if not (0 <= value <= 1):
                raise PolicyError(f"{f.name} must be within [0, 1], got {raw}")
            object.__setattr__(self, f.name, value)


PRESETS: Mapping[str, AccountingPolicy] = {
    # Full deduction of residential and service-sector vehicle fuel.
    "eq3-default": AccountingPolicy(name="eq3-default"),
    # Older variant deducting only 95% of residential diesel.
    "eq2-legacy": AccountingPolicy(
        residential_diesel_deduction=Decimal("0.95"), name="eq2-legacy"
    ),
    # Survey-based coefficients: 95% of residential diesel is vehicle fuel,
    # and 95% of service gasoline / 35% of service diesel.
    "wang2007": AccountingPolicy(
        residential_diesel_deduction=Decimal("0.95"),
        public_gasoline_deduction=Decimal("0.95"),
        public_diesel_deduction=Decimal("0.35"),
        name="wang2007",
    ),
    # Deliberately wrong method kept for the double-count audit demo.
    "naive-heating-added": AccountingPolicy(
        add_central_heating=True, name="naive-heating-added"
    ),
}

_POLICY_KEYS = {
    f.name.replace("_", ""): f.name
    for f in fields(AccountingPolicy)
    if f.name != "name"
}

_BOOL_VALUES = {
    "true": True, "yes": True, "1": True,
    "false": False, "no": False, "0": False,
}


def parse_policy_file(source: str | os.PathLike[str] | IO) -> AccountingPolicy:
    """Parse a key=value policy file; keys mirror AccountingPolicy fields.

    `#` starts a comment; blank lines are skipped; camelCase and snake_case
    spellings are both accepted. Unknown keys are errors, not warnings.
    """
    if hasattr(source, "read"):
        text, origin = source.read(), "<stream>"
    else:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
        origin = os.fspath(source)
    overrides: dict[str, object] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise PolicyError(f"{origin}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        canonical = _POLICY_KEYS.get(key.replace("_", "").lower())
        if canonical is None:
            raise PolicyError(f"{origin}:{lineno}: unknown policy key {key!r}")
        if canonical in overrides:
            raise PolicyError(f"{origin}:{lineno}: duplicate policy key {key!r}")
        if canonical.endswith("_deduction"):
            overrides[canonical] = value
        else:
            flag = _BOOL_VALUES.get(value.lower())
            if flag is None:
                raise PolicyError(
                    f"{origin}:{lineno}: expected a boolean for {key!r}, got {value!r}"
                )
            overrides[canonical] = flag
    name = os.path.splitext(os.path.basename(origin))[0] or "custom"
    return AccountingPolicy(name=name, **overrides)


def resolve_policy(spec: str) -> AccountingPolicy:
    """Resolve a preset name or policy-file path to a policy."""
    preset = PRESETS.get(spec)
    if preset is not None:
        return preset
    if os.path.exists(spec):
        return parse_policy_file(spec)
    known = ", ".join(sorted(PRESETS))
    raise PolicyError(f"{spec!r} is neither a preset ({known}) nor an existing file")


def without_noncommercial(policy: AccountingPolicy) -> AccountingPolicy:
    """Copy of `policy` with the non-commercial term switched off."""
    return replace(policy, include_noncommercial=False)


@dataclass(frozen=True)
class LedgerItem:
    """One itemized deduction or addition applied while building a ledger."""

    label: str
    amount: Decimal


@dataclass(frozen=True)
class BuildingEnergyLedger:
    """One year's building energy, itemized by component (Mtce).

    `total` is residential + public + noncommercial + central_heating_added;
    the last term is zero except under the deliberately wrong
    `add_central_heating` policy, so for every correct policy the total is
    exactly the sum of the three real components.
    """

    year: int
    residential: Decimal
    public: Decimal
    noncommercial: Decimal
    policy: AccountingPolicy
    central_heating_added: Decimal = ZERO
    deductions: tuple[LedgerItem, ...] = ()
    warnings: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for label in ("residential", "public", "noncommercial", "central_heating_added"):
            if getattr(self, label) < 0:
                raise InputError(f"{label} component must be >= 0")

    @property
    def commercial_total(self) -> Decimal:
        return self.residential + self.public

    @property
    def total(self) -> Decimal:
        return (
            self.residential
            + self.public
            + self.noncommercial
            + self.central_heating_added
        )

    def deduction(self, label: str) -> Decimal:
        return sum((i.amount for i in self.deductions if i.label == label), ZERO)


def _scaled(fraction: Decimal, amount: Decimal) -> Decimal:
    """Policy fraction of an amount, on the 0.01 grid (ties away from zero)."""
    return (fraction * amount).quantize(CENT, rounding=ROUND_HALF_UP)


def _residential_parts(
    sheet: BalanceSheet, policy: AccountingPolicy
) -> tuple[Decimal, tuple[LedgerItem, ...]]:
    if not any(sheet.has_sector(s) for s in RESIDENTIAL_SECTORS):
        raise MissingSector("residential", year=sheet.year)
    consumption = sum((sheet.sector_total(s) for s in RESIDENTIAL_SECTORS), ZERO)
    gasoline = _scaled(
        policy.residential_gasoline_deduction,
        sheet.fuel_total(FuelKind.GASOLINE, RESIDENTIAL_SECTORS),
    )
    diesel = _scaled(
        policy.residential_diesel_deduction,
        sheet.fuel_total(FuelKind.DIESEL, RESIDENTIAL_SECTORS),
    )
    value = quantity_sub_checked(quantity_sub_checked(consumption, gasoline), diesel)
    items = (
        LedgerItem(DEDUCTION_RESIDENTIAL_GASOLINE, gasoline),
        LedgerItem(DEDUCTION_RESIDENTIAL_DIESEL, diesel),
    )
    return value, items


PUBLIC_SECTORS = (SectorKind.WRHR, SectorKind.OTHERS)


def _public_parts(
    sheet: BalanceSheet, policy: AccountingPolicy
) -> tuple[Decimal, tuple[LedgerItem, ...]]:
    for sector in PUBLIC_SECTORS:
        if not sheet.has_sector(sector):
            raise MissingSector(sector.value, year=sheet.year)
    consumption = sum((sheet.sector_total(s) for s in PUBLIC_SECTORS), ZERO)
    gasoline = _scaled(
        policy.public_gasoline_deduction,
        sheet.fuel_total(FuelKind.GASOLINE, PUBLIC_SECTORS),
    )
    diesel = _scaled(
        policy.public_diesel_deduction,
        sheet.fuel_total(FuelKind.DIESEL, PUBLIC_SECTORS),
    )
    value = quantity_sub_checked(quantity_sub_checked(consumption, gasoline), diesel)
    items = [
        LedgerItem(DEDUCTION_PUBLIC_GASOLINE, gasoline),
        LedgerItem(DEDUCTION_PUBLIC_DIESEL, diesel),
    ]
    if policy.include_transport_electricity:
        key = (SectorKind.TRANSPORT_STORAGE_POST, FuelKind.ELECTRICITY)
        if key not in sheet.cells:
            raise MissingCell(
                f"year {sheet.year}: policy includes transport electricity "
                "but the sheet has no transport-storage-post electricity cell"
            )
        added = sheet.cells[key]
        value += added
        items.append(LedgerItem(ADDITION_TRANSPORT_ELECTRICITY, added))
    return value, tuple(items)


def residential_energy(sheet: BalanceSheet, policy: AccountingPolicy) -> Decimal:
    """Residential building energy: commercial consumption minus vehicle fuel."""
    return _residential_parts(sheet, policy)[0]


def public_energy(sheet: BalanceSheet, policy: AccountingPolicy) -> Decimal:
    """Public building energy from the two service sectors, per policy."""
    return _public_parts(sheet, policy)[0]


def noncommercial_energy(record: NonCommercialRecord) -> Decimal:
    """Non-commercial building energy: fuelwood/straw plus methane, exactly."""
    return record.total


def total_building_energy(
    sheet: BalanceSheet,
    record: NonCommercialRecord | None,
    policy: AccountingPolicy,
) -> BuildingEnergyLedger:
    """Compute one year's full ledger under `policy`.

    `record` is required exactly when the policy includes non-commercial
    energy. The deliberately wrong `add_central_heating` flag pulls the
    heating-supply transformation value on top and records a warning, never
    silently.
    """
    residential, res_items = _residential_parts(sheet, policy)
    public, pub_items = _public_parts(sheet, policy)

    if policy.include_noncommercial:
        if record is None:
            raise YearMismatch(sheet.year, "non-commercial record required by policy")
        noncommercial = noncommercial_energy(record)
    else:
        noncommercial = ZERO

    heating = ZERO
    extra_items: tuple[LedgerItem, ...] = ()
    warnings: tuple[str, ...] = ()
    if policy.add_central_heating:
        supply = sheet.transformation_value("heating-supply", FuelKind.HEAT)
        if supply is None:
            raise MissingHeatData(
                f"year {sheet.year}: policy adds central heating but the sheet "
                "has no heating-supply transformation row"
            )
        if supply < 0:
            raise InputError(
                f"year {sheet.year}: heating-supply output must be >= 0, got {supply}"
            )
        heating = supply
        extra_items = (LedgerItem(ADDITION_CENTRAL_HEATING, heating),)
        warnings = (CENTRAL_HEATING_WARNING,)

    return BuildingEnergyLedger(
        year=sheet.year,
        residential=residential,
        public=public,
        noncommercial=noncommercial,
        policy=policy,
        central_heating_added=heating,
        deductions=res_items + pub_items + extra_items,
        warnings=warnings,
    )


def ledger_series(
    sheets: Iterable[BalanceSheet],
    records: YearSeries[NonCommercialRecord] | None,
    policy: AccountingPolicy,
) -> YearSeries[BuildingEnergyLedger]:
    """Per-year ledgers in ascending year order.

    A year without a non-commercial record fails loudly when the policy
    needs one; it is never treated as zero.
    """
    ledgers = []
    for sheet in sorted(sheets, key=lambda s: s.year):
        record = records.get(sheet.year) if records is not None else None
        ledgers.append((sheet.year, total_building_energy(sheet, record, policy)))
    return YearSeries(ledgers)


def share_of_final(
    ledger: BuildingEnergyLedger,
    final_energy: Decimal,
    include_noncommercial_in_denominator: bool = False,
) -> Decimal:
    """Building share of final energy consumption, as an undisplayed fraction.

    With the flag off the share is commercial building energy over commercial
    final energy; with it on, both sides gain the non-commercial term.
    Display rounding belongs to the report layer.
    """
    if final_energy <= 0:
        raise InvalidDenominator(f"final energy must be > 0, got {final_energy}")
    if include_noncommercial_in_denominator:
        return ledger.total / (final_energy + ledger.noncommercial)
    return ledger.commercial_total / final_energy


def composition_shares(
    ledger: BuildingEnergyLedger,
) -> tuple[Decimal, Decimal, Decimal]:
    """(residential, public, noncommercial) shares of their own sum.

    The basis excludes any centrally-heating-added amount so the three
    shares always sum to 1.
    """
    basis = ledger.residential + ledger.public + ledger.noncommercial
    if basis == 0:
        raise EmptyLedger(f"year {ledger.year}: all ledger components are zero")
    return (
        ledger.residential / basis,
        ledger.public / basis,
        ledger.noncommercial / basis,
    )
