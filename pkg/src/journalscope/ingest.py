"""Parse vendor master journal lists into a uniform record model.

Each database exports its journal roster with different column names and
formatting conventions, so parsing is driven by a per-source schema file
that maps logical fields (title, issn, eissn, publisher, ...) onto the
actual CSV columns. Identifiers, titles and publishers are normalized on
the way in; everything unmapped is kept verbatim in `extra`.
"""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import ConfigError
from .fileio import atomic_write_text

logger = logging.getLogger(__name__)


class SourceDb(str, Enum):
    """The three scholarly databases whose journal lists are compared."""

    WOS = "WOS"
    SCOPUS = "SCOPUS"
    DIMENSIONS = "DIMENSIONS"


_ISSN_PATTERN = re.compile(r"^[0-9]{7}[0-9X]$")
_NON_ALNUM = re.compile(r"[^0-9a-z]+")
# Cells holding several category labels use ';' or '|' as separators.
_CATEGORY_SEP = re.compile(r"[;|]")

SCHEMA_REQUIRED_FIELDS = ("title", "issn", "eissn", "publisher")
SCHEMA_OPTIONAL_FIELDS = ("record_id", "categories")


@dataclass(frozen=True)
class NormalizedIssn:
    """An 8-character serial identifier plus its mod-11 checksum verdict.

    `valid_check` is diagnostic only: vendor lists do contain identifiers
    that fail the checksum, and those records are kept.
    """

    digits: str
    valid_check: bool

    def __str__(self) -> str:
        return self.digits


def issn_check_digit(first_seven: str) -> str:
    """Mod-11 check digit over seven digits, weights 8 down to 2."""
    weighted = sum(int(ch) * w for ch, w in zip(first_seven, range(8, 1, -1)))
    check = (11 - weighted % 11) % 11
    return "X" if check == 10 else str(check)


def normalize_issn(raw: str | None) -> NormalizedIssn | None:
    """Normalize an ISSN-like string, or return None if it cannot be one.

    Hyphens and whitespace are dropped and letters uppercased. Anything
    that does not then consist of 7 digits plus a final digit or 'X' is
    rejected (the caller decides whether that counts as malformed or was
    simply blank).
    """
    if raw is None:
        return None
    cleaned = re.sub(r"[\s-]+", "", raw).upper()
    if not cleaned or not _ISSN_PATTERN.match(cleaned):
        return None
    return NormalizedIssn(cleaned, issn_check_digit(cleaned[:7]) == cleaned[7])


def normalize_title(raw: str) -> str:
    """Lowercase, rewrite '&' as 'and', strip punctuation, collapse spaces.

    The result contains only [0-9a-z] runs separated by single spaces,
    which makes 'Science & Technology' and 'science and technology'
    compare equal across vendor lists.
    """
    lowered = raw.lower().replace("&", " and ")
    return _NON_ALNUM.sub(" ", lowered).strip()


def normalize_publisher(raw: str | None) -> str | None:
    """Title normalization applied to publisher names; None stays None."""
    if raw is None:
        return None
    return normalize_title(raw)


@dataclass
class JournalRecord:
    """One normalized journal entry from one database's master list."""

    source_db: SourceDb
    record_id: str
    title_raw: str
    title_norm: str
    issn: NormalizedIssn | None
    eissn: NormalizedIssn | None
    publisher_raw: str | None
    publisher_norm: str | None
    categories: list[str] = field(default_factory=list)
    extra: dict[str, str] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        source_db: SourceDb,
        record_id: str,
        title: str = "",
        issn: str | None = None,
        eissn: str | None = None,
        publisher: str | None = None,
        categories: list[str] | None = None,
        extra: dict[str, str] | None = None,
    ) -> "JournalRecord":
        """Construct a record from raw field values, normalizing as we go."""
        return cls(
            source_db=source_db,
            record_id=record_id,
            title_raw=title,
            title_norm=normalize_title(title),
            issn=normalize_issn(issn),
            eissn=normalize_issn(eissn),
            publisher_raw=publisher,
            publisher_norm=normalize_publisher(publisher),
            categories=list(categories or []),
            extra=dict(extra or {}),
        )

    def id_pair(self) -> tuple[str | None, str | None]:
        """(issn digits, eissn digits) with None for absent identifiers."""
        return (
            self.issn.digits if self.issn else None,
            self.eissn.digits if self.eissn else None,
        )

    def as_dict(self) -> dict:
        return {
            "source_db": self.source_db.value,
            "record_id": self.record_id,
            "title_raw": self.title_raw,
            "title_norm": self.title_norm,
            "issn": {"digits": self.issn.digits, "valid_check": self.issn.valid_check}
            if self.issn
            else None,
            "eissn": {"digits": self.eissn.digits, "valid_check": self.eissn.valid_check}
            if self.eissn
            else None,
            "publisher_raw": self.publisher_raw,
            "publisher_norm": self.publisher_norm,
            "categories": self.categories,
            "extra": self.extra,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "JournalRecord":
        def _issn(payload: dict | None) -> NormalizedIssn | None:
            if payload is None:
                return None
            return NormalizedIssn(payload["digits"], payload["valid_check"])

        return cls(
            source_db=SourceDb(data["source_db"]),
            record_id=data["record_id"],
            title_raw=data["title_raw"],
            title_norm=data["title_norm"],
            issn=_issn(data["issn"]),
            eissn=_issn(data["eissn"]),
            publisher_raw=data["publisher_raw"],
            publisher_norm=data["publisher_norm"],
            categories=list(data["categories"]),
            extra=dict(data["extra"]),
        )


@dataclass
class Provenance:
    """Where a source list came from and how much of it survived parsing."""

    paths: list[str] = field(default_factory=list)
    updated: str | None = None
    raw_rows: int = 0
    skipped_rows: int = 0
    malformed_issns: int = 0

    def as_dict(self) -> dict:
        return {
            "paths": self.paths,
            "updated": self.updated,
            "raw_rows": self.raw_rows,
            "skipped_rows": self.skipped_rows,
            "malformed_issns": self.malformed_issns,
        }


@dataclass
class SourceList:
    """An ordered list of records from one database."""

    db: SourceDb
    records: list[JournalRecord]
    provenance: Provenance = field(default_factory=Provenance)

    def __len__(self) -> int:
        return len(self.records)

    def validate_ids(self) -> None:
        seen: set[str] = set()
        for record in self.records:
            if record.record_id in seen:
                raise ConfigError(
                    f"duplicate record_id {record.record_id!r} in {self.db.value} list"
                )
            seen.add(record.record_id)


@dataclass
class SchemaConfig:
    """Mapping from logical record fields to the columns of one vendor CSV."""

    db: SourceDb
    columns: dict[str, str]
    updated: str | None = None

    def __post_init__(self) -> None:
        for logical in SCHEMA_REQUIRED_FIELDS:
            if logical not in self.columns:
                raise ConfigError(f"schema is missing required column mapping {logical!r}")
        known = set(SCHEMA_REQUIRED_FIELDS) | set(SCHEMA_OPTIONAL_FIELDS)
        for logical in self.columns:
            if logical not in known:
                raise ConfigError(f"schema maps unknown logical field {logical!r}")

    @classmethod
    def load(cls, path: str | Path) -> "SchemaConfig":
        path = Path(path)
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"schema file {path} is not valid JSON: {exc}") from exc
        if "db" not in payload or "columns" not in payload:
            raise ConfigError(f"schema file {path} must define 'db' and 'columns'")
        try:
            db = SourceDb(payload["db"])
        except ValueError as exc:
            raise ConfigError(f"schema file {path}: unknown db {payload['db']!r}") from exc
        return cls(db=db, columns=dict(payload["columns"]), updated=payload.get("updated"))


def _split_categories(cell: str) -> list[str]:
    return [part.strip() for part in _CATEGORY_SEP.split(cell) if part.strip()]


def load_source_list(
    paths: list[str | Path], schema: SchemaConfig, db: SourceDb
) -> SourceList:
    """Parse one or more CSV files into a single SourceList.

    Files are decoded as UTF-8 with invalid bytes replaced. Rows whose
    field count disagrees with the header are skipped and counted. When
    no record_id column is mapped, ids are synthesized as '<stem>:<row>'.
    """
    if schema.db != db:
        raise ConfigError(f"schema is for {schema.db.value}, not {db.value}")
    records: list[JournalRecord] = []
    provenance = Provenance(paths=[str(p) for p in paths], updated=schema.updated)
    for path in paths:
        path = Path(path)
        with open(path, encoding="utf-8", errors="replace", newline="") as handle:
            reader = csv.reader(handle)
            try:
                header = next(reader)
            except StopIteration as exc:
                raise ConfigError(f"{path} has no header row") from exc
            index: dict[str, int] = {}
            for logical, column in schema.columns.items():
                if column not in header:
                    raise ConfigError(f"{path} has no column {column!r} (mapped to {logical!r})")
                index[logical] = header.index(column)
            mapped_positions = set(index.values())
            for row_number, row in enumerate(reader, start=1):
                provenance.raw_rows += 1
                if len(row) != len(header):
                    provenance.skipped_rows += 1
                    logger.debug("%s row %d: %d fields, expected %d; skipped",
                                 path, row_number, len(row), len(header))
                    continue

                def cell(logical: str) -> str:
                    return row[index[logical]].strip() if logical in index else ""

                issn_raw = cell("issn")
                eissn_raw = cell("eissn")
                issn = normalize_issn(issn_raw)
                eissn = normalize_issn(eissn_raw)
                if issn_raw and issn is None:
                    provenance.malformed_issns += 1
                if eissn_raw and eissn is None:
                    provenance.malformed_issns += 1
                record_id = cell("record_id") or f"{path.stem}:{row_number}"
                publisher = cell("publisher") or None
                extra = {
                    header[pos]: row[pos]
                    for pos in range(len(header))
                    if pos not in mapped_positions
                }
                records.append(
                    JournalRecord(
                        source_db=db,
                        record_id=record_id,
                        title_raw=cell("title"),
                        title_norm=normalize_title(cell("title")),
                        issn=issn,
                        eissn=eissn,
                        publisher_raw=publisher,
                        publisher_norm=normalize_publisher(publisher),
                        categories=_split_categories(cell("categories")),
                        extra=extra,
                    )
                )
    result = SourceList(db=db, records=records, provenance=provenance)
    result.validate_ids()
    logger.info("%s: parsed %d records from %d file(s)", db.value, len(records), len(paths))
    return result


def merge_wos_indices(lists: list[SourceList]) -> SourceList:
    """Concatenate the per-index WoS lists into one master list.

    A journal indexed in several citation indices appears once per index
    with the same (issn, eissn) pair; such rows collapse into the first
    occurrence with their category labels unioned.
    """
    if not lists:
        raise ConfigError("merge_wos_indices needs at least one list")
    for source in lists:
        if source.db != SourceDb.WOS:
            raise ConfigError(f"merge_wos_indices got a {source.db.value} list")
    merged: list[JournalRecord] = []
    by_pair: dict[tuple[str | None, str | None], JournalRecord] = {}
    raw_rows = 0
    paths: list[str] = []
    updated = None
    for source in lists:
        raw_rows += source.provenance.raw_rows
        paths.extend(source.provenance.paths)
        updated = updated or source.provenance.updated
        for record in source.records:
            pair = record.id_pair()
            kept = by_pair.get(pair)
            if kept is None:
                by_pair[pair] = record
                merged.append(record)
            else:
                for category in record.categories:
                    if category not in kept.categories:
                        kept.categories.append(category)
    provenance = Provenance(paths=paths, updated=updated, raw_rows=raw_rows)
    result = SourceList(db=SourceDb.WOS, records=merged, provenance=provenance)
    result.validate_ids()
    return result


def write_records_jsonl(source: SourceList, path: str | Path) -> None:
    """Canonical record file: one JournalRecord as JSON per line."""
    lines = [json.dumps(r.as_dict(), sort_keys=True, ensure_ascii=False) for r in source.records]
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def read_records_jsonl(path: str | Path, db: SourceDb | None = None) -> SourceList:
    records = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                records.append(JournalRecord.from_dict(json.loads(line)))
    if db is None:
        if not records:
            raise ConfigError(f"{path} is empty; pass the database explicitly")
        db = records[0].source_db
    return SourceList(db=db, records=records)
