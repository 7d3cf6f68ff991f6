"""Mapping of source-native subject categories onto five major areas.

Scopus macro categories and Dimensions FOR divisions are folded into
the five Web of Science major areas via a data file so the mapping can
be edited without touching code. Category text is compared after title
normalization, which absorbs case, punctuation and spacing drift.
Categories absent from the mapping land in UNMAPPED and are excluded
from percentage bases unless explicitly included.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path

from .errors import ConfigError, DataConsistencyError
from .fileio import atomic_write_text
from .ingest import SourceDb, normalize_title
from .rounding import round_half_up

logger = logging.getLogger(__name__)


class MajorArea(str, Enum):
    ARTS_HUMANITIES = "ARTS_HUMANITIES"
    LIFE_SCIENCES = "LIFE_SCIENCES"
    PHYSICAL_SCIENCES = "PHYSICAL_SCIENCES"
    SOCIAL_SCIENCES = "SOCIAL_SCIENCES"
    TECHNOLOGY = "TECHNOLOGY"
    UNMAPPED = "UNMAPPED"


MAPPED_AREAS = tuple(area for area in MajorArea if area is not MajorArea.UNMAPPED)


@dataclass
class SubjectMap:
    """Lookup table (db, normalized category) -> major area."""

    entries: dict[tuple[SourceDb, str], MajorArea]

    @classmethod
    def from_rows(cls, rows: list[tuple[str, str, str]], origin: str) -> "SubjectMap":
        entries: dict[tuple[SourceDb, str], MajorArea] = {}
        for line, (db_raw, category, area_raw) in enumerate(rows, start=2):
            try:
                db = SourceDb(db_raw.strip())
            except ValueError as exc:
                raise ConfigError(f"{origin}:{line}: unknown db {db_raw!r}") from exc
            try:
                area = MajorArea(area_raw.strip())
            except ValueError as exc:
                raise ConfigError(f"{origin}:{line}: unknown major_area {area_raw!r}") from exc
            if area is MajorArea.UNMAPPED:
                raise ConfigError(f"{origin}:{line}: UNMAPPED cannot be assigned explicitly")
            key = (db, normalize_title(category))
            if key in entries:
                raise ConfigError(
                    f"{origin}:{line}: duplicate category {category!r} for {db.value}"
                )
            entries[key] = area
        return cls(entries=entries)

    @classmethod
    def load(cls, path: str | Path) -> "SubjectMap":
        path = Path(path)
        with open(path, encoding="utf-8", newline="") as handle:
            return cls._from_csv(handle.read(), str(path))

    @classmethod
    def default(cls) -> "SubjectMap":
        text = resources.files("journalscope.data").joinpath("subject_map.csv").read_text("utf-8")
        return cls._from_csv(text, "subject_map.csv")

    @classmethod
    def _from_csv(cls, text: str, origin: str) -> "SubjectMap":
        reader = csv.DictReader(io.StringIO(text))
        required = {"db", "category", "major_area"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise ConfigError(f"{origin} must have columns db, category, major_area")
        rows = [(row["db"], row["category"], row["major_area"]) for row in reader]
        return cls.from_rows(rows, origin)

    def lookup(self, db: SourceDb, category: str) -> MajorArea:
        return self.entries.get((db, normalize_title(category)), MajorArea.UNMAPPED)


_default_map: SubjectMap | None = None


def default_subject_map() -> SubjectMap:
    global _default_map
    if _default_map is None:
        _default_map = SubjectMap.default()
    return _default_map


def map_category(db: SourceDb, category: str, subject_map: SubjectMap | None = None) -> MajorArea:
    """Major area for a source-native category, UNMAPPED when unknown."""
    return (subject_map or default_subject_map()).lookup(db, category)


@dataclass
class SubjectDistribution:
    """Percentage split of one database's output across major areas."""

    db: SourceDb
    percents: dict[MajorArea, float]
    total_records: int
    unmapped_records: int

    def as_dict(self) -> dict:
        return {
            "db": self.db.value,
            "percents": {area.value: share for area, share in self.percents.items()},
            "total_records": self.total_records,
            "unmapped_records": self.unmapped_records,
        }


def subject_distribution(
    db: SourceDb,
    counts: dict[str, int],
    subject_map: SubjectMap | None = None,
    include_unmapped: bool = False,
) -> SubjectDistribution:
    """Aggregate per-category counts into a major-area distribution.

    Percentages carry one decimal. The unmapped bucket is reported but
    excluded from the base unless `include_unmapped` is set.
    """
    subject_map = subject_map or default_subject_map()
    area_counts: dict[MajorArea, int] = {area: 0 for area in MajorArea}
    for category, count in counts.items():
        if count < 0:
            raise ConfigError(f"negative count for category {category!r}")
        area_counts[subject_map.lookup(db, category)] += count
    unmapped = area_counts[MajorArea.UNMAPPED]
    areas = list(MajorArea) if include_unmapped else list(MAPPED_AREAS)
    base = sum(area_counts[a] for a in areas)
    if base == 0:
        raise DataConsistencyError(
            f"{db.value}: no records in any counted area, distribution is empty"
        )
    percents = {
        area: round_half_up(100.0 * area_counts[area] / base, 1) for area in areas
    }
    return SubjectDistribution(
        db=db, percents=percents, total_records=base, unmapped_records=unmapped
    )


def load_subject_counts(path: str | Path) -> dict[SourceDb, dict[str, int]]:
    """Read a CSV with columns db, category, count (extra columns ignored)."""
    path = Path(path)
    result: dict[SourceDb, dict[str, int]] = {}
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        required = {"db", "category", "count"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise ConfigError(f"{path} must have columns db, category, count")
        for line, row in enumerate(reader, start=2):
            try:
                db = SourceDb(row["db"].strip())
            except ValueError as exc:
                raise ConfigError(f"{path}:{line}: unknown db {row['db']!r}") from exc
            try:
                count = int(row["count"])
            except ValueError as exc:
                raise ConfigError(f"{path}:{line}: count must be an integer") from exc
            per_db = result.setdefault(db, {})
            category = row["category"].strip()
            per_db[category] = per_db.get(category, 0) + count
    return result


def write_distribution_csv(
    distributions: list[SubjectDistribution], path: str | Path
) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["db", "major_area", "percent", "records_base", "unmapped_records"])
    for dist in distributions:
        for area, share in dist.percents.items():
            writer.writerow([
                dist.db.value, area.value, f"{share:.1f}",
                str(dist.total_records), str(dist.unmapped_records),
            ])
    atomic_write_text(path, buffer.getvalue())
