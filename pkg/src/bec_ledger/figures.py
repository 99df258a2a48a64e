"""Render report figures to PNG files alongside the plot-data output.

Uses the non-interactive Agg backend; one figure per plot kind, written as
`fig_<kind>.png` in the output directory.
"""
from __future__ import annotations

from decimal import Decimal
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .accounting import BuildingEnergyLedger, composition_shares, share_of_final
from .errors import InputError, YearMismatch
from .model import YearSeries
from .report import PLOT_KINDS, _require_rows

_QUANTITY_KINDS = {
    "residential": ("residential", "Residential"),
    "public": ("public", "Public"),
    "noncommercial": ("noncommercial", "Non-commercial"),
    "total": ("total", "Total"),
}


def render_figures(
    series: YearSeries[BuildingEnergyLedger],
    out_dir: str | Path,
    kinds: Sequence[str] = PLOT_KINDS,
    final_energy: YearSeries[Decimal] | None = None,
) -> list[Path]:
    """Write one PNG per requested kind; returns the written paths."""
    _require_rows(series)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for kind in kinds:
        if kind not in PLOT_KINDS:
            continue
        path = out / f"fig_{kind}.png"
        if kind in _QUANTITY_KINDS:
            _quantity_figure(series, kind, path)
        elif kind == "shares":
            _shares_figure(series, path)
        else:
            if final_energy is None:
                raise InputError("share-of-final figure requires a final-energy series")
            _share_of_final_figure(series, final_energy, path)
        paths.append(path)
    return paths


def _years_and(values: Iterable[float]) -> tuple[list, list]:
    pairs = list(values)
    return [p[0] for p in pairs], [p[1] for p in pairs]


def _quantity_figure(
    series: YearSeries[BuildingEnergyLedger], kind: str, path: Path
) -> None:
    attr, label = _QUANTITY_KINDS[kind]
    years, values = _years_and(
        (year, float(getattr(ledger, attr))) for year, ledger in series
    )
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(years, values, marker="o", color="tab:blue")
    ax.set_xlabel("Year")
    ax.set_ylabel(f"{label} building energy (Mtce)")
    ax.set_title(f"{label} building energy consumption")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _shares_figure(series: YearSeries[BuildingEnergyLedger], path: Path) -> None:
    years = []
    stacks: list[list[float]] = [[], [], []]
    for year, ledger in series:
        shares = composition_shares(ledger)
        years.append(year)
        for i, share in enumerate(shares):
            stacks[i].append(float(share) * 100)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.stackplot(
        years,
        stacks,
        labels=["Residential", "Public", "Non-commercial"],
        colors=["tab:blue", "tab:orange", "tab:green"],
        alpha=0.85,
    )
    ax.set_xlabel("Year")
    ax.set_ylabel("Share of building energy (%)")
    ax.set_ylim(0, 100)
    ax.set_title("Composition of building energy consumption")
    ax.legend(loc="upper right", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _share_of_final_figure(
    series: YearSeries[BuildingEnergyLedger],
    final_energy: YearSeries[Decimal],
    path: Path,
) -> None:
    years, commercial, with_nce = [], [], []
    for year, ledger in series:
        final = final_energy.get(year)
        if final is None:
            raise YearMismatch(year, "no final-energy value")
        years.append(year)
        commercial.append(float(share_of_final(ledger, final, False)) * 100)
        with_nce.append(float(share_of_final(ledger, final, True)) * 100)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(years, commercial, marker="o", label="Share of final energy")
    ax.plot(years, with_nce, marker="s", label="Share incl. non-commercial")
    ax.set_xlabel("Year")
    ax.set_ylabel("Building share (%)")
    ax.set_title("Building energy as a share of final consumption")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
