"""Core domain model: Mtce quantities, fuel and sector taxonomies, balance sheets.

All ledger arithmetic is fixed-point decimal on a 0.01 Mtce grid (million
tonnes of coal equivalent, two fractional digits). Values are quantized at
construction, so addition and subtraction are exact and order-independent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation, ROUND_HALF_UP
from enum import Enum
from typing import Generic, Iterable, Iterator, Mapping, TypeVar

from .errors import (
    DeductionExceedsTotal,
    DuplicateYear,
    InputError,
    NegativeQuantity,
    ReconciliationError,
)

T = TypeVar("T")

CENT = Decimal("0.01")
ZERO = Decimal("0.00")

DEFAULT_RECONCILIATION_TOLERANCE = Decimal("0.01")


def mtce(value: int | str | float | Decimal) -> Decimal:
    """Build a non-negative Mtce quantity on the 0.01 grid (ties round away from zero)."""
    q = signed_mtce(value)
    if q < 0:
        raise NegativeQuantity(f"consumption quantity must be >= 0, got {value}")
    return q


def signed_mtce(value: int | str | float | Decimal) -> Decimal:
    """Build a signed Mtce quantity (transformation rows carry signs)."""
    try:
        d = Decimal(str(value)) if isinstance(value, float) else Decimal(value)
    except InvalidOperation as exc:
        raise InputError(f"not a decimal quantity: {value!r}") from exc
    if not d.is_finite():
        raise InputError(f"quantity must be finite, got {value!r}")
    return d.quantize(CENT, rounding=ROUND_HALF_UP)


def quantity_add(a: Decimal, b: Decimal) -> Decimal:
    """Exact sum of two Mtce quantities."""
    return a + b


def quantity_sub_checked(a: Decimal, b: Decimal) -> Decimal:
    """a - b, refusing to go negative.

    Raises DeductionExceedsTotal when b > a; silent clamping would mask
    data problems.
    """
    if b > a:
        raise DeductionExceedsTotal(f"deduction {b} exceeds available total {a}")
    return a - b


class FuelKind(Enum):
    COAL_FAMILY = "coal-family"
    GASOLINE = "gasoline"
    DIESEL = "diesel"
    OTHER_PETROLEUM = "other-petroleum"
    NATURAL_GAS = "natural-gas"
    HEAT = "heat"
    ELECTRICITY = "electricity"
    FUELWOOD_STRAW = "fuelwood-straw"
    METHANE = "methane"
    OTHER = "other"

    @property
    def commercial(self) -> bool:
        """Self-produced, self-consumed rural fuels are non-commercial; all else commercial."""
        return self not in _NON_COMMERCIAL


_NON_COMMERCIAL = frozenset({FuelKind.FUELWOOD_STRAW, FuelKind.METHANE})


class SectorKind(Enum):
    AGRICULTURE = "agriculture"
    INDUSTRY = "industry"
    CONSTRUCTION = "construction"
    TRANSPORT_STORAGE_POST = "transport-storage-post"
    WRHR = "wrhr"
    OTHERS = "others"
    RESIDENTIAL_URBAN = "residential-urban"
    RESIDENTIAL_RURAL = "residential-rural"

    @property
    def is_residential(self) -> bool:
        return self in RESIDENTIAL_SECTORS


RESIDENTIAL_SECTORS = (SectorKind.RESIDENTIAL_URBAN, SectorKind.RESIDENTIAL_RURAL)

# Sectors whose final heat consumption belongs to building operation; used by
# the double-count audit (transport contributes electricity only, never heat).
BUILDING_HEAT_SECTORS = (
    SectorKind.RESIDENTIAL_URBAN,
    SectorKind.RESIDENTIAL_RURAL,
    SectorKind.WRHR,
    SectorKind.OTHERS,
)

TRANSFORMATION_ITEMS = (
    "thermal-power",
    "heating-supply",
    "recovery",
    "loss",
    "total-transformation",
)


@dataclass(frozen=True)
class TransformationEntry:
    """One transformation row: inputs negative, outputs positive."""

    item: str
    fuel: FuelKind
    value: Decimal

    def __post_init__(self) -> None:
        if self.item not in TRANSFORMATION_ITEMS:
            raise InputError(f"unknown transformation item {self.item!r}")
        object.__setattr__(self, "value", signed_mtce(self.value))


@dataclass(frozen=True)
class BalanceSheet:
    """One year's sector-by-fuel final consumption plus transformation rows.

    `cells` holds final consumption (non-negative); `transformation` holds
    signed transformation rows; `total_final` holds declared per-fuel totals
    used for reconciliation. Instances are immutable after construction.
    """

    year: int
    cells: Mapping[tuple[SectorKind, FuelKind], Decimal]
    transformation: tuple[TransformationEntry, ...] = ()
    total_final: Mapping[FuelKind, Decimal] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cells = {}
        for (sector, fuel), value in dict(self.cells).items():
            cells[(sector, fuel)] = mtce(value)
        object.__setattr__(self, "cells", cells)
        order = {item: i for i, item in enumerate(TRANSFORMATION_ITEMS)}
        entries = tuple(
            sorted(self.transformation, key=lambda e: (order[e.item], e.fuel.value))
        )
        object.__setattr__(self, "transformation", entries)
        object.__setattr__(
            self, "total_final", {f: mtce(v) for f, v in dict(self.total_final).items()}
        )

    def cell(self, sector: SectorKind, fuel: FuelKind) -> Decimal:
        return self.cells.get((sector, fuel), ZERO)

    def has_sector(self, sector: SectorKind) -> bool:
        return any(s is sector for s, _ in self.cells)

    def sector_total(self, sector: SectorKind, commercial_only: bool = True) -> Decimal:
        total = ZERO
        for (s, f), v in self.cells.items():
            if s is sector and (f.commercial or not commercial_only):
                total += v
        return total

    def fuel_total(self, fuel: FuelKind, sectors: Iterable[SectorKind]) -> Decimal:
        wanted = tuple(sectors)
        return sum(
            (v for (s, f), v in self.cells.items() if f is fuel and s in wanted),
            ZERO,
        )

    def transformation_value(self, item: str, fuel: FuelKind) -> Decimal | None:
        for entry in self.transformation:
            if entry.item == item and entry.fuel is fuel:
                return entry.value
        return None

    def final_energy(self) -> Decimal:
        """Total commercial final consumption (declared totals, else cell sums)."""
        if self.total_final:
            return sum((v for f, v in self.total_final.items() if f.commercial), ZERO)
        return sum((v for (_, f), v in self.cells.items() if f.commercial), ZERO)

    def validate_reconciliation(
        self, tolerance: Decimal = DEFAULT_RECONCILIATION_TOLERANCE
    ) -> None:
        """Check each declared per-fuel total against its sector cell sum."""
        for fuel, declared in self.total_final.items():
            summed = sum((v for (_, f), v in self.cells.items() if f is fuel), ZERO)
            if abs(summed - declared) > tolerance:
                raise ReconciliationError(
                    f"year {self.year}, fuel {fuel.value}: cells sum to {summed}, "
                    f"declared total is {declared} (tolerance {tolerance})"
                )


@dataclass(frozen=True)
class NonCommercialRecord:
    """Per-year rural fuelwood/straw and methane consumption in Mtce."""

    year: int
    fuelwood_straw: Decimal
    methane: Decimal

    def __post_init__(self) -> None:
        object.__setattr__(self, "fuelwood_straw", mtce(self.fuelwood_straw))
        object.__setattr__(self, "methane", mtce(self.methane))

    @property
    def total(self) -> Decimal:
        return self.fuelwood_straw + self.methane


class YearSeries(Generic[T]):
    """Immutable mapping from year to value, iterated in ascending year order."""

    __slots__ = ("_items",)

    def __init__(self, items: Mapping[int, T] | Iterable[tuple[int, T]]):
        pairs = items.items() if isinstance(items, Mapping) else items
        data: dict[int, T] = {}
        for year, value in pairs:
            if year in data:
                raise DuplicateYear(f"duplicate year {year}")
            data[int(year)] = value
        self._items = dict(sorted(data.items()))

    def years(self) -> tuple[int, ...]:
        return tuple(self._items)

    def get(self, year: int, default: T | None = None) -> T | None:
        return self._items.get(year, default)

    def filtered(self, first: int | None = None, last: int | None = None) -> "YearSeries[T]":
        return YearSeries(
            (y, v)
            for y, v in self._items.items()
            if (first is None or y >= first) and (last is None or y <= last)
        )

    def items(self) -> Iterator[tuple[int, T]]:
        return iter(self._items.items())

    def values(self) -> Iterator[T]:
        return iter(self._items.values())

    def __getitem__(self, year: int) -> T:
        return self._items[year]

    def __contains__(self, year: int) -> bool:
        return year in self._items

    def __iter__(self) -> Iterator[tuple[int, T]]:
        return iter(self._items.items())

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, YearSeries) and self._items == other._items

    def __repr__(self) -> str:
        return f"YearSeries({self._items!r})"
