"""Shared fixtures: bundled data files, parsed inputs, computed series."""
from __future__ import annotations

from pathlib import Path

import pytest

from bec_ledger import (
    ledger_series,
    parse_balance_csv,
    parse_noncommercial_csv,
    resolve_policy,
)

DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(scope="session")
def balance_path() -> Path:
    return DATA / "balance_2000_2013.csv"


@pytest.fixture(scope="session")
def noncommercial_path() -> Path:
    return DATA / "noncommercial_2000_2013.csv"


@pytest.fixture(scope="session")
def heat_path() -> Path:
    return DATA / "heat_balance_2013.csv"


@pytest.fixture(scope="session")
def units_path() -> Path:
    return DATA / "units_demo.csv"


@pytest.fixture(scope="session")
def sheets(balance_path):
    return parse_balance_csv(balance_path)


@pytest.fixture(scope="session")
def records(noncommercial_path):
    return parse_noncommercial_csv(noncommercial_path)


@pytest.fixture(scope="session")
def heat_sheet(heat_path):
    return parse_balance_csv(heat_path)[0]


@pytest.fixture(scope="session")
def default_policy():
    return resolve_policy("eq3-default")


@pytest.fixture(scope="session")
def default_series(sheets, records, default_policy):
    return ledger_series(sheets, records, default_policy)
