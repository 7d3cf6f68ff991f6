"""Three-stage cleaning of a source list before any cross-list matching.

Stage 1 drops records with no identifier at all, then duplicate
(issn, eissn) pairs. Stage 2 removes records whose ISSN or e-ISSN value
collides with another record's. Stage 3 drops entries that are preprint
servers or conference series rather than journals, found by keyword.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .ingest import JournalRecord, SourceList, normalize_title

logger = logging.getLogger(__name__)

DEFAULT_NON_JOURNAL_WORDS = (
    "preprint",
    "preprints",
    "preprint-server",
    "symposium",
    "conference",
    "congress",
)


@dataclass
class NonJournalKeywords:
    """Lowercase keywords marking non-journal entries, split in two buckets.

    Keywords containing 'preprint' count toward the preprint bucket,
    everything else toward the conference bucket. Multi-word keywords
    (e.g. 'preprint-server', which normalizes to two tokens) are matched
    as contiguous token runs, single words as whole tokens, so a title
    like 'journal of conferencing studies' is never caught by
    'conference'.
    """

    words: list[str] = field(default_factory=lambda: list(DEFAULT_NON_JOURNAL_WORDS))

    def __post_init__(self) -> None:
        if not self.words:
            raise ConfigError("non-journal keyword list must not be empty")
        self.words = [w.lower() for w in self.words]

    @classmethod
    def from_file(cls, path: str | Path) -> "NonJournalKeywords":
        words = []
        with open(path, encoding="utf-8") as handle:
            for line in handle:
                word = line.strip().lower()
                if word:
                    words.append(word)
        if not words:
            raise ConfigError(f"keyword file {path} contains no words")
        return cls(words=words)

    def bucket_of(self, word: str) -> str:
        return "preprint" if "preprint" in word else "conference"

    def match_bucket(self, title_norm: str) -> str | None:
        """Bucket for a non-journal title, or None; preprint hits win."""
        tokens = title_norm.split()
        hit_buckets = set()
        for word in self.words:
            needle = normalize_title(word).split()
            if not needle:
                continue
            size = len(needle)
            for start in range(len(tokens) - size + 1):
                if tokens[start : start + size] == needle:
                    hit_buckets.add(self.bucket_of(word))
                    break
        if "preprint" in hit_buckets:
            return "preprint"
        if "conference" in hit_buckets:
            return "conference"
        return None


@dataclass
class PreprocessReport:
    """Per-stage removal accounting; output = input - all removals."""

    input_count: int = 0
    removed_null_ids: int = 0
    removed_duplicate_pairs: int = 0
    removed_inconsistent_ids: int = 0
    removed_non_journal: dict[str, int] = field(
        default_factory=lambda: {"preprint": 0, "conference": 0}
    )
    output_count: int = 0

    def removed_total(self) -> int:
        return (
            self.removed_null_ids
            + self.removed_duplicate_pairs
            + self.removed_inconsistent_ids
            + sum(self.removed_non_journal.values())
        )

    def as_dict(self) -> dict:
        return {
            "input_count": self.input_count,
            "removed_null_ids": self.removed_null_ids,
            "removed_duplicate_pairs": self.removed_duplicate_pairs,
            "removed_inconsistent_ids": self.removed_inconsistent_ids,
            "removed_non_journal": dict(self.removed_non_journal),
            "output_count": self.output_count,
        }


def _replaced(source: SourceList, records: list[JournalRecord]) -> SourceList:
    return SourceList(db=source.db, records=records, provenance=source.provenance)


def drop_null_and_duplicate_ids(source: SourceList) -> tuple[SourceList, dict[str, int]]:
    """Stage 1: no-identifier records first, then repeated (issn, eissn) pairs."""
    kept: list[JournalRecord] = []
    counts = {"removed_null_ids": 0, "removed_duplicate_pairs": 0}
    seen_pairs: set[tuple[str | None, str | None]] = set()
    for record in source.records:
        pair = record.id_pair()
        if pair == (None, None):
            counts["removed_null_ids"] += 1
            continue
        if pair in seen_pairs:
            counts["removed_duplicate_pairs"] += 1
            continue
        seen_pairs.add(pair)
        kept.append(record)
    return _replaced(source, kept), counts


def drop_inconsistent_ids(
    source: SourceList, keep_first: bool = False
) -> tuple[SourceList, dict[str, int]]:
    """Stage 2: remove records sharing an ISSN or e-ISSN value.

    Every record participating in a collision goes, because the lists
    give no basis for electing a survivor. With `keep_first` the first
    occurrence of each colliding value is retained instead.
    """
    issn_counts: Counter[str] = Counter()
    eissn_counts: Counter[str] = Counter()
    for record in source.records:
        if record.issn:
            issn_counts[record.issn.digits] += 1
        if record.eissn:
            eissn_counts[record.eissn.digits] += 1
    kept: list[JournalRecord] = []
    removed = 0
    first_issn: set[str] = set()
    first_eissn: set[str] = set()
    for record in source.records:
        issn_shared = record.issn is not None and issn_counts[record.issn.digits] > 1
        eissn_shared = record.eissn is not None and eissn_counts[record.eissn.digits] > 1
        if keep_first:
            # Drop a record only when it repeats an already-seen shared value.
            drop = False
            if issn_shared:
                if record.issn.digits in first_issn:
                    drop = True
                else:
                    first_issn.add(record.issn.digits)
            if eissn_shared:
                if record.eissn.digits in first_eissn:
                    drop = True
                else:
                    first_eissn.add(record.eissn.digits)
        else:
            drop = issn_shared or eissn_shared
        if drop:
            removed += 1
        else:
            kept.append(record)
    return _replaced(source, kept), {"removed_inconsistent_ids": removed}


def drop_non_journal(
    source: SourceList, keywords: NonJournalKeywords | None = None
) -> tuple[SourceList, dict[str, int]]:
    """Stage 3: drop preprint-server and conference entries by title keyword."""
    keywords = keywords or NonJournalKeywords()
    kept: list[JournalRecord] = []
    buckets = {"preprint": 0, "conference": 0}
    for record in source.records:
        bucket = keywords.match_bucket(record.title_norm)
        if bucket is None:
            kept.append(record)
        else:
            buckets[bucket] += 1
    return _replaced(source, kept), {"removed_non_journal": buckets}


def preprocess(
    source: SourceList,
    keywords: NonJournalKeywords | None = None,
    keep_first_on_collision: bool = False,
) -> tuple[SourceList, PreprocessReport]:
    """Run the three cleaning stages in order and assemble the report."""
    report = PreprocessReport(input_count=len(source.records))
    after1, counts1 = drop_null_and_duplicate_ids(source)
    report.removed_null_ids = counts1["removed_null_ids"]
    report.removed_duplicate_pairs = counts1["removed_duplicate_pairs"]
    after2, counts2 = drop_inconsistent_ids(after1, keep_first=keep_first_on_collision)
    report.removed_inconsistent_ids = counts2["removed_inconsistent_ids"]
    after3, counts3 = drop_non_journal(after2, keywords)
    report.removed_non_journal = counts3["removed_non_journal"]
    report.output_count = len(after3.records)
    if report.output_count != report.input_count - report.removed_total():
        raise AssertionError("preprocess accounting drifted from the record count")
    logger.info(
        "%s: %d -> %d records after cleaning",
        source.db.value, report.input_count, report.output_count,
    )
    return after3, report
