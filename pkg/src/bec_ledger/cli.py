"""Command-line pipeline: ingest, accounting, audit, report.

The CLI is a thin shell over the library; every behavior here is reachable
through library calls alone. Exit codes: 0 success, 1 audit failure,
2 input error, 3 missing data, 4 internal error.
"""
from __future__ import annotations

import csv
import functools
import io
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

import click

from . import accounting, ingest, report
from . import audit as audit_lib
from . import figures as figures_lib
from .errors import InputError, LedgerError, MissingDataError
from .model import DEFAULT_RECONCILIATION_TOLERANCE, BalanceSheet, YearSeries

EXIT_AUDIT_FAIL = 1
EXIT_INPUT = 2
EXIT_MISSING = 3
EXIT_INTERNAL = 4

_BALANCE = click.option(
    "--balance",
    "balance_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Balance-sheet CSV (year,sector,fuel,quantity,unit).",
)
_NONCOMMERCIAL = click.option(
    "--noncommercial",
    "noncommercial_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Non-commercial CSV (year,fuelwood_straw_mtce,methane_mtce).",
)
_UNITS = click.option(
    "--units",
    "units_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Unit conversion CSV (unit,factor_to_mtce); Mtce/ktce/tce built in.",
)
_POLICY = click.option(
    "--policy",
    "policy_spec",
    default="eq3-default",
    show_default=True,
    help="Accounting preset name or policy file path.",
)
_YEARS = click.option(
    "--years",
    "years_text",
    default=None,
    help="Year filter: a single year or a..b.",
)
_OUT = click.option(
    "--out",
    "out_dir",
    envvar="BEC_LEDGER_OUT",
    default="out",
    show_default=True,
    help="Output directory (defaults to $BEC_LEDGER_OUT when set).",
)
_TOLERANCE = click.option(
    "--tolerance",
    "tolerance_text",
    default=str(DEFAULT_RECONCILIATION_TOLERANCE),
    show_default=True,
    help="Reconciliation and audit tolerance in Mtce.",
)


def _pipeline(fn):
    """Map library errors to the exit-code scheme on the way out."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except click.ClickException:
            raise
        except MissingDataError as exc:
            _abort(exc, EXIT_MISSING)
        except LedgerError as exc:
            _abort(exc, EXIT_INPUT)
        except Exception as exc:
            _abort(exc, EXIT_INTERNAL)

    return wrapper


def _abort(exc: BaseException, code: int) -> None:
    click.echo(f"error [{type(exc).__name__}]: {exc}", err=True)
    sys.exit(code)


def _parse_tolerance(text: str) -> Decimal:
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise InputError(f"cannot parse tolerance {text!r}") from None
    if value < 0:
        raise InputError(f"tolerance must be >= 0, got {text}")
    return value


def _parse_years(text: str | None) -> tuple[int | None, int | None]:
    if text is None:
        return None, None
    parts = text.split("..")
    try:
        if len(parts) == 1:
            year = int(parts[0])
            return year, year
        if len(parts) == 2:
            first, last = int(parts[0]), int(parts[1])
            if first > last:
                raise InputError(f"empty year range {text!r}")
            return first, last
    except ValueError:
        pass
    raise InputError(f"cannot parse year range {text!r} (expected a..b or a single year)")


def _load_inputs(balance_path, noncommercial_path, units_path, tolerance):
    units = ingest.parse_conversion_csv(units_path) if units_path else None
    sheets = ingest.parse_balance_csv(balance_path, units=units, tolerance=tolerance)
    records = (
        ingest.parse_noncommercial_csv(noncommercial_path)
        if noncommercial_path
        else None
    )
    return sheets, records


def _filter_sheets(sheets, years_text) -> list[BalanceSheet]:
    first, last = _parse_years(years_text)
    kept = [
        s
        for s in sheets
        if (first is None or s.year >= first) and (last is None or s.year <= last)
    ]
    if not kept:
        raise InputError(
            f"no balance years within range {years_text!r} "
            f"(available: {', '.join(str(s.year) for s in sheets) or 'none'})"
        )
    return kept


def _effective_policy(policy_spec, records, quiet=False):
    """Resolve the policy; without non-commercial data the term is dropped."""
    policy = accounting.resolve_policy(policy_spec)
    if policy.include_noncommercial and records is None:
        if not quiet:
            click.echo(
                "note: no non-commercial data supplied; totals cover commercial energy only",
                err=True,
            )
        policy = accounting.without_noncommercial(policy)
    return policy


def _echo_ledger_warnings(series) -> None:
    for year, ledger in series:
        for message in ledger.warnings:
            click.echo(f"warning [year {year}]: {message}", err=True)


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")
    click.echo(f"wrote {path}")


@click.group()
def main() -> None:
    """Building operational energy accounting from energy balance sheets."""


@main.command("ingest-check")
@_BALANCE
@_NONCOMMERCIAL
@_UNITS
@_TOLERANCE
@_pipeline
def cmd_ingest_check(balance_path, noncommercial_path, units_path, tolerance_text):
    """Parse and reconcile the inputs without computing anything."""
    tolerance = _parse_tolerance(tolerance_text)
    sheets, records = _load_inputs(balance_path, noncommercial_path, units_path, tolerance)
    for sheet in sheets:
        click.echo(
            f"year {sheet.year}: {len(sheet.cells)} cells, "
            f"{len(sheet.transformation)} transformation rows, "
            f"{len(sheet.total_final)} declared totals"
        )
    if records is not None:
        click.echo(f"non-commercial records: {len(records)} year(s)")
    click.echo(
        f"ok: {len(sheets)} balance year(s) parsed, reconciled within {tolerance} Mtce"
    )


@main.command("compute")
@_BALANCE
@_NONCOMMERCIAL
@_UNITS
@_POLICY
@_YEARS
@_OUT
@_TOLERANCE
@_pipeline
def cmd_compute(
    balance_path, noncommercial_path, units_path, policy_spec, years_text, out_dir, tolerance_text
):
    """Compute per-year ledgers and write the delimited report files."""
    tolerance = _parse_tolerance(tolerance_text)
    sheets, records = _load_inputs(balance_path, noncommercial_path, units_path, tolerance)
    sheets = _filter_sheets(sheets, years_text)
    policy = _effective_policy(policy_spec, records)
    series = accounting.ledger_series(sheets, records, policy)
    _echo_ledger_warnings(series)

    text, ledger_csv = report.render_ledger_table(series)
    click.echo(text, nl=False)
    out = Path(out_dir)
    _write(out / "ledger.csv", ledger_csv)
    _write(out / "public_detail.csv", report.render_public_detail(sheets, policy)[1])
    first, last = _parse_years(years_text)
    if records is not None:
        kept = records.filtered(first, last)
        if len(kept):
            _write(out / "noncommercial.csv", report.render_noncommercial_detail(kept)[1])
    _write(out / "shares.csv", report.render_shares_table(series)[1])


@main.command("audit")
@_BALANCE
@_NONCOMMERCIAL
@_UNITS
@_POLICY
@_YEARS
@_OUT
@_TOLERANCE
@_pipeline
def cmd_audit(
    balance_path, noncommercial_path, units_path, policy_spec, years_text, out_dir, tolerance_text
):
    """Check heat-column identities and detect central-heating double counts."""
    tolerance = _parse_tolerance(tolerance_text)
    sheets, records = _load_inputs(balance_path, noncommercial_path, units_path, tolerance)
    sheets = _filter_sheets(sheets, years_text)
    policy = _effective_policy(policy_spec, records)

    reports = []
    for sheet in sheets:
        reports.append(audit_lib.heat_balance_check(sheet, tolerance))
        record = records.get(sheet.year) if records is not None else None
        ledger = accounting.total_building_energy(sheet, record, policy)
        reports.append(audit_lib.double_count_detector(ledger, sheet))

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["check", "expected", "actual", "tolerance", "pass"])
    for audit_report in reports:
        writer.writerows(audit_lib.report_csv_rows(audit_report))
    _write(Path(out_dir) / "audit.csv", buffer.getvalue())

    for audit_report in reports:
        click.echo(audit_lib.report_text(audit_report))
    if not all(r.overall_pass for r in reports):
        sys.exit(EXIT_AUDIT_FAIL)


@main.command("compare")
@click.argument("policy_a")
@click.argument("policy_b")
@_BALANCE
@_NONCOMMERCIAL
@_UNITS
@_YEARS
@_OUT
@_TOLERANCE
@_pipeline
def cmd_compare(
    policy_a, policy_b, balance_path, noncommercial_path, units_path, years_text, out_dir, tolerance_text
):
    """Diff two accounting policies year by year (deltas are B minus A)."""
    tolerance = _parse_tolerance(tolerance_text)
    sheets, records = _load_inputs(balance_path, noncommercial_path, units_path, tolerance)
    sheets = _filter_sheets(sheets, years_text)
    pol_a = _effective_policy(policy_a, records)
    pol_b = _effective_policy(policy_b, records, quiet=True)
    series_a = accounting.ledger_series(sheets, records, pol_a)
    series_b = accounting.ledger_series(sheets, records, pol_b)
    _echo_ledger_warnings(series_a)
    _echo_ledger_warnings(series_b)

    labels = (
        accounting.DEDUCTION_RESIDENTIAL_GASOLINE,
        accounting.DEDUCTION_RESIDENTIAL_DIESEL,
        accounting.DEDUCTION_PUBLIC_GASOLINE,
        accounting.DEDUCTION_PUBLIC_DIESEL,
        accounting.ADDITION_TRANSPORT_ELECTRICITY,
        accounting.ADDITION_CENTRAL_HEATING,
    )
    header = ["year", f"total_{pol_a.name}", f"total_{pol_b.name}", "delta"] + [
        f"delta_{label.replace('-', '_')}" for label in labels
    ]
    rows = []
    for year, ledger_a in series_a:
        ledger_b = series_b[year]
        rows.append(
            [
                str(year),
                f"{ledger_a.total}",
                f"{ledger_b.total}",
                f"{ledger_b.total - ledger_a.total}",
            ]
            + [f"{ledger_b.deduction(l) - ledger_a.deduction(l)}" for l in labels]
        )

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write(Path(out_dir) / "compare.csv", buffer.getvalue())

    compact = [row[:4] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in compact)) for i, h in enumerate(header[:4])]
    click.echo("  ".join(h.rjust(w) for h, w in zip(header[:4], widths)))
    for row in compact:
        click.echo("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))


@main.command("report")
@_BALANCE
@_NONCOMMERCIAL
@_UNITS
@_POLICY
@_YEARS
@_OUT
@_TOLERANCE
@click.option(
    "--figures/--no-figures",
    "with_figures",
    default=True,
    show_default=True,
    help="Also render PNG figures next to the plot-data files.",
)
@click.option(
    "--kind",
    "kinds",
    multiple=True,
    type=click.Choice(report.PLOT_KINDS),
    help="Plot kinds to emit (default: all).",
)
@_pipeline
def cmd_report(
    balance_path,
    noncommercial_path,
    units_path,
    policy_spec,
    years_text,
    out_dir,
    tolerance_text,
    with_figures,
    kinds,
):
    """Write tables, plot-data files, and figures for the computed ledgers."""
    tolerance = _parse_tolerance(tolerance_text)
    first, last = _parse_years(years_text)
    spec = report.ReportSpec(first_year=first, last_year=last, out_dir=out_dir)
    sheets, records = _load_inputs(balance_path, noncommercial_path, units_path, tolerance)
    sheets = _filter_sheets(sheets, years_text)
    policy = _effective_policy(policy_spec, records)
    series = accounting.ledger_series(sheets, records, policy)
    _echo_ledger_warnings(series)
    final = YearSeries((s.year, s.final_energy()) for s in sheets)

    out = Path(spec.out_dir)
    _write(out / "ledger.csv", report.render_ledger_table(series)[1])
    _write(out / "public_detail.csv", report.render_public_detail(sheets, policy)[1])
    if records is not None:
        kept = records.filtered(first, last)
        if len(kept):
            _write(out / "noncommercial.csv", report.render_noncommercial_detail(kept)[1])
    _write(out / "shares.csv", report.render_shares_table(series, spec.precision)[1])

    wanted = tuple(kinds) if kinds else report.PLOT_KINDS
    for kind in wanted:
        content = report.render_plot_series(series, kind, final_energy=final)
        _write(out / f"plot_{kind}.dat", content)
    if with_figures:
        for path in figures_lib.render_figures(series, out, wanted, final_energy=final):
            click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
