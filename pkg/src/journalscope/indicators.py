"""Country-level research output indicators from yearly count tables.

Growth is compounded over the number of yearly observations N, i.e.
CAGR = 100 * ((last / first)^(1/N) - 1), not the interval convention
1/(N-1); pass `intervals=True` for the latter. Shares are against a
per-database world total supplied as configuration.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ConfigError, DataConsistencyError
from .fileio import atomic_write_text
from .ingest import SourceDb
from .rounding import round_half_up

logger = logging.getLogger(__name__)

DB_ORDER = (SourceDb.WOS, SourceDb.SCOPUS, SourceDb.DIMENSIONS)


@dataclass
class CountrySeries:
    """Yearly publication counts for one country in one database."""

    country: str
    db: SourceDb
    counts: dict[int, int]

    def __post_init__(self) -> None:
        if len(self.counts) < 2:
            raise ConfigError(
                f"{self.country}/{self.db.value}: a series needs at least two years"
            )
        years = self.years()
        if years != list(range(years[0], years[-1] + 1)):
            raise ConfigError(f"{self.country}/{self.db.value}: years are not contiguous")
        for year, value in self.counts.items():
            if value < 0:
                raise ConfigError(f"{self.country}/{self.db.value}: negative count in {year}")

    def years(self) -> list[int]:
        return sorted(self.counts)

    def values(self) -> list[int]:
        return [self.counts[y] for y in self.years()]

    def output(self) -> int:
        return sum(self.counts.values())


@dataclass
class IndicatorRow:
    country: str
    db: SourceDb
    output: int
    rank: int
    global_share_pct: float
    cagr_pct: float

    def as_dict(self) -> dict:
        return {
            "country": self.country,
            "db": self.db.value,
            "output": self.output,
            "rank": self.rank,
            "global_share_pct": self.global_share_pct,
            "cagr_pct": self.cagr_pct,
        }


def compute_cagr(series: CountrySeries, intervals: bool = False) -> float:
    """Compound annual growth rate in percent, two decimals, half-up.

    The first/last ratio is reduced exactly before exponentiation so a
    uniformly scaled series yields the identical result.
    """
    values = series.values()
    first, last = values[0], values[-1]
    if first <= 0:
        raise DataConsistencyError(
            f"{series.country}/{series.db.value}: CAGR undefined, first year count is {first}"
        )
    n = len(values) - 1 if intervals else len(values)
    ratio = Fraction(last, first)
    growth = 100.0 * (float(ratio) ** (1.0 / n) - 1.0)
    return round_half_up(growth, 2)


def compute_global_share(output: int, world: int) -> float:
    """Country output over world output, in percent, two decimals, half-up."""
    if world <= 0:
        raise DataConsistencyError(f"world total must be positive, got {world}")
    return round_half_up(Fraction(100 * output, world), 2)


def rank_countries(rows: list[tuple[str, int]]) -> list[tuple[str, int]]:
    """Competition ranking by descending output; ties share the smaller
    rank and skip the following ones. Tied countries are listed
    alphabetically."""
    ordered = sorted(rows, key=lambda item: (-item[1], item[0]))
    ranked: list[tuple[str, int]] = []
    for position, (country, output) in enumerate(ordered):
        if position > 0 and output == ordered[position - 1][1]:
            rank = ranked[-1][1]
        else:
            rank = position + 1
        ranked.append((country, rank))
    return ranked


def build_indicator_table(
    series_set: list[CountrySeries],
    world: dict[SourceDb, int],
    cagr_intervals: bool = False,
) -> list[IndicatorRow]:
    """Output, within-set rank, global share and CAGR per (country, db).

    Ranks are computed against the supplied countries only; a country's
    true worldwide rank needs data this table does not have. Rows come
    out grouped by database and ordered by rank.
    """
    if not series_set:
        return []
    span = (series_set[0].years()[0], series_set[0].years()[-1])
    seen: set[tuple[str, SourceDb]] = set()
    for series in series_set:
        if (series.years()[0], series.years()[-1]) != span:
            raise ConfigError(
                f"{series.country}/{series.db.value}: year span differs from {span}"
            )
        key = (series.country, series.db)
        if key in seen:
            raise ConfigError(f"duplicate series for {series.country}/{series.db.value}")
        seen.add(key)
    rows: list[IndicatorRow] = []
    for db in DB_ORDER:
        in_db = [s for s in series_set if s.db == db]
        if not in_db:
            continue
        if db not in world:
            raise ConfigError(f"world totals are missing {db.value}")
        ranks = dict(rank_countries([(s.country, s.output()) for s in in_db]))
        for series in in_db:
            rows.append(
                IndicatorRow(
                    country=series.country,
                    db=db,
                    output=series.output(),
                    rank=ranks[series.country],
                    global_share_pct=compute_global_share(series.output(), world[db]),
                    cagr_pct=compute_cagr(series, intervals=cagr_intervals),
                )
            )
    rows.sort(key=lambda row: (DB_ORDER.index(row.db), row.rank, row.country))
    return rows


def load_country_series(path: str | Path) -> list[CountrySeries]:
    """Read a long-form CSV with columns country, db, year, count."""
    path = Path(path)
    accumulator: dict[tuple[str, SourceDb], dict[int, int]] = {}
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        required = {"country", "db", "year", "count"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise ConfigError(f"{path} must have columns country, db, year, count")
        for line, row in enumerate(reader, start=2):
            try:
                db = SourceDb(row["db"].strip())
            except ValueError as exc:
                raise ConfigError(f"{path}:{line}: unknown db {row['db']!r}") from exc
            try:
                year = int(row["year"])
                count = int(row["count"])
            except ValueError as exc:
                raise ConfigError(f"{path}:{line}: year and count must be integers") from exc
            key = (row["country"].strip(), db)
            years = accumulator.setdefault(key, {})
            if year in years:
                raise ConfigError(f"{path}:{line}: duplicate year {year} for {key[0]}")
            years[year] = count
    return [
        CountrySeries(country=country, db=db, counts=counts)
        for (country, db), counts in accumulator.items()
    ]


def load_world_totals(path: str | Path) -> dict[SourceDb, int]:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"world totals file {path} is not valid JSON: {exc}") from exc
    totals: dict[SourceDb, int] = {}
    for key, value in payload.items():
        try:
            db = SourceDb(key)
        except ValueError as exc:
            raise ConfigError(f"world totals file {path}: unknown db {key!r}") from exc
        if not isinstance(value, int) or value < 0:
            raise ConfigError(f"world totals file {path}: {key} must be a non-negative integer")
        totals[db] = value
    return totals


def write_indicator_csv(rows: list[IndicatorRow], path: str | Path) -> None:
    """Wide table: one row per country, rank/output/share per database."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["country"]
    for db in DB_ORDER:
        header += [f"{db.value}_rank", f"{db.value}_output", f"{db.value}_global_share_pct"]
    writer.writerow(header)
    by_country: dict[str, dict[SourceDb, IndicatorRow]] = {}
    for row in rows:
        by_country.setdefault(row.country, {})[row.db] = row

    def sort_key(country: str):
        wos = by_country[country].get(SourceDb.WOS)
        return (wos.rank if wos else 10**9, country)

    for country in sorted(by_country, key=sort_key):
        line: list[str] = [country]
        for db in DB_ORDER:
            row = by_country[country].get(db)
            if row is None:
                line += ["", "", ""]
            else:
                line += [str(row.rank), str(row.output), f"{row.global_share_pct:.2f}"]
        writer.writerow(line)
    atomic_write_text(path, buffer.getvalue())


def write_series_csv(
    series_set: list[CountrySeries],
    rows: list[IndicatorRow],
    path: str | Path,
) -> None:
    """Yearly counts plus the CAGR column, one row per (country, db)."""
    if not series_set:
        atomic_write_text(path, "country,db,cagr_pct\n")
        return
    years = series_set[0].years()
    cagr = {(r.country, r.db): r.cagr_pct for r in rows}
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["country", "db"] + [str(y) for y in years] + ["cagr_pct"])
    ordered = sorted(series_set, key=lambda s: (s.country.lower(), DB_ORDER.index(s.db)))
    for series in ordered:
        writer.writerow(
            [series.country, series.db.value]
            + [str(series.counts[y]) for y in years]
            + [f"{cagr[(series.country, series.db)]:.2f}"]
        )
    atomic_write_text(path, buffer.getvalue())
