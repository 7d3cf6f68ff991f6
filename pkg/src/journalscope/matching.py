"""Staged cross-database matching of two cleaned journal lists.

The pipeline runs eight stages in a fixed order. Identifier stages come
first because they are cheap and precise; title stages run last on
whatever is left. A record that matches in one stage is excluded from
every later stage, and within a stage matching is strictly one-to-one:
when a key value (or an exact title) is held by several records on
either side, nobody gets matched and the group is reported as ambiguous
rather than paired arbitrarily.

Stage order and semantics:

  S1A  ISSN set x ISSN set, on ISSN
  S1B  modified e-ISSN set x modified e-ISSN set, on e-ISSN
  S1C  ISSN set x opposite modified e-ISSN set, on e-ISSN (both directions)
  S1D  ISSN set x ISSN set, on e-ISSN
  S1E  modified e-ISSN set x opposite ISSN set, on e-ISSN (re-check after
       S1D has thinned the ISSN sets; normally adds nothing new)
  S1F  all remaining records, ISSN against e-ISSN and vice versa
       (identifiers interchanged between vendors)
  S2A  exact normalized-title match, publishers must agree
  S2B  cosine title similarity at or above the threshold, publishers must
       agree; each record goes to its highest-similarity partner

The modified e-ISSN set holds records that have an e-ISSN but no ISSN,
so the two partitions never overlap.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import ConfigError
from .fileio import atomic_write_text
from .ingest import JournalRecord, SourceDb, SourceList

logger = logging.getLogger(__name__)


class StageId(str, Enum):
    S1A_ISSN = "S1A_ISSN"
    S1B_EISSN = "S1B_EISSN"
    S1C_ISSNSET_VS_EISSNSET = "S1C_ISSNSET_VS_EISSNSET"
    S1D_ISSNSETS_BY_EISSN = "S1D_ISSNSETS_BY_EISSN"
    S1E_EISSNSET_VS_ISSNSET = "S1E_EISSNSET_VS_ISSNSET"
    S1F_INTERCHANGED = "S1F_INTERCHANGED"
    S2A_EXACT_TITLE = "S2A_EXACT_TITLE"
    S2B_FUZZY_TITLE = "S2B_FUZZY_TITLE"


class KeyKind(str, Enum):
    ISSN = "ISSN"
    EISSN = "EISSN"
    ISSN_X_EISSN = "ISSN_X_EISSN"


@dataclass(frozen=True)
class MatchPair:
    """One matched record pair with the evidence that produced it."""

    a_id: str
    b_id: str
    stage: StageId
    key_kind: KeyKind | None = None
    key_value: str | None = None
    similarity: float | None = None
    publisher_equal: bool | None = None

    def as_dict(self) -> dict:
        return {
            "a_id": self.a_id,
            "b_id": self.b_id,
            "stage": self.stage.value,
            "key_kind": self.key_kind.value if self.key_kind else None,
            "key_value": self.key_value,
            "similarity": self.similarity,
            "publisher_equal": self.publisher_equal,
        }


@dataclass
class MatchLedger:
    """Ordered, stage-attributed match pairs for one database pair."""

    pair: tuple[SourceDb, SourceDb]
    pairs: list[MatchPair] = field(default_factory=list)
    per_stage_counts: dict[StageId, int] = field(
        default_factory=lambda: {stage: 0 for stage in StageId}
    )
    ambiguous_keys: dict[StageId, int] = field(
        default_factory=lambda: {stage: 0 for stage in StageId}
    )
    discarded_title_matches: dict[StageId, int] = field(
        default_factory=lambda: {stage: 0 for stage in StageId}
    )

    def validate(self) -> None:
        a_seen: set[str] = set()
        b_seen: set[str] = set()
        for match in self.pairs:
            if match.a_id in a_seen or match.b_id in b_seen:
                raise AssertionError(f"record matched twice: {match.a_id}/{match.b_id}")
            a_seen.add(match.a_id)
            b_seen.add(match.b_id)
        if sum(self.per_stage_counts.values()) != len(self.pairs):
            raise AssertionError("stage counts do not sum to the ledger size")

    def counts_dict(self) -> dict:
        return {
            "pair": [self.pair[0].value, self.pair[1].value],
            "total": len(self.pairs),
            "per_stage_counts": {s.value: self.per_stage_counts[s] for s in StageId},
            "ambiguous_keys": {s.value: self.ambiguous_keys[s] for s in StageId},
            "discarded_title_matches": {
                s.value: self.discarded_title_matches[s] for s in StageId
            },
        }


@dataclass
class PartitionedList:
    """ISSN holders vs records that only carry an e-ISSN."""

    issn_set: list[JournalRecord]
    modified_eissn_set: list[JournalRecord]


def partition(source: SourceList) -> PartitionedList:
    """Split a list by identifier availability; records with neither are unusable here."""
    issn_set = [r for r in source.records if r.issn is not None]
    modified = [r for r in source.records if r.issn is None and r.eissn is not None]
    return PartitionedList(issn_set=issn_set, modified_eissn_set=modified)


def _key_of(record: JournalRecord, kind: KeyKind) -> str | None:
    if kind == KeyKind.ISSN:
        return record.issn.digits if record.issn else None
    return record.eissn.digits if record.eissn else None


def match_on_key(
    left: list[JournalRecord],
    right: list[JournalRecord],
    left_key: KeyKind,
    right_key: KeyKind,
    stage: StageId,
) -> tuple[list[MatchPair], int]:
    """Equal-key join with one-to-one discipline.

    Key values held by more than one record on either side produce no
    pair and are counted as ambiguous; those records stay available for
    later stages. Pairs come out sorted by key value.
    """
    kind = left_key if left_key == right_key else KeyKind.ISSN_X_EISSN
    left_groups: dict[str, list[JournalRecord]] = defaultdict(list)
    right_groups: dict[str, list[JournalRecord]] = defaultdict(list)
    for record in left:
        value = _key_of(record, left_key)
        if value is not None:
            left_groups[value].append(record)
    for record in right:
        value = _key_of(record, right_key)
        if value is not None:
            right_groups[value].append(record)
    pairs: list[MatchPair] = []
    ambiguous = 0
    for value in sorted(set(left_groups) & set(right_groups)):
        lhs, rhs = left_groups[value], right_groups[value]
        if len(lhs) == 1 and len(rhs) == 1:
            pairs.append(
                MatchPair(
                    a_id=lhs[0].record_id,
                    b_id=rhs[0].record_id,
                    stage=stage,
                    key_kind=kind,
                    key_value=value,
                )
            )
        else:
            ambiguous += 1
            logger.debug("%s: ambiguous key %s (%d left, %d right)",
                         stage.value, value, len(lhs), len(rhs))
    return pairs, ambiguous


def cosine_title_similarity(t1: str, t2: str) -> float:
    """Cosine of the token-frequency vectors of two normalized titles.

    Both squared norms and the dot product are integers, so the result
    is reproducible bit for bit regardless of token order.
    """
    c1, c2 = Counter(t1.split()), Counter(t2.split())
    if not c1 or not c2:
        return 0.0
    dot = sum(count * c2[token] for token, count in c1.items())
    norm1 = sum(count * count for count in c1.values())
    norm2 = sum(count * count for count in c2.values())
    return dot / math.sqrt(norm1 * norm2)


def _publishers_equal(a: JournalRecord, b: JournalRecord) -> bool:
    # A blank publisher (or one that normalizes to nothing) counts as
    # missing; two unknowns are never treated as the same house.
    return bool(a.publisher_norm) and a.publisher_norm == b.publisher_norm


def match_exact_title(
    left: list[JournalRecord], right: list[JournalRecord]
) -> tuple[list[MatchPair], int, int]:
    """Exact normalized-title match guarded by publisher agreement.

    Title groups that are one-to-one but disagree on publisher (or lack
    one) are counted as discarded; larger groups count as ambiguous.
    Returns (pairs, ambiguous, discarded).
    """
    left_groups: dict[str, list[JournalRecord]] = defaultdict(list)
    right_groups: dict[str, list[JournalRecord]] = defaultdict(list)
    for record in left:
        if record.title_norm:
            left_groups[record.title_norm].append(record)
    for record in right:
        if record.title_norm:
            right_groups[record.title_norm].append(record)
    pairs: list[MatchPair] = []
    ambiguous = 0
    discarded = 0
    for title in sorted(set(left_groups) & set(right_groups)):
        lhs, rhs = left_groups[title], right_groups[title]
        if len(lhs) != 1 or len(rhs) != 1:
            ambiguous += 1
            continue
        if _publishers_equal(lhs[0], rhs[0]):
            pairs.append(
                MatchPair(
                    a_id=lhs[0].record_id,
                    b_id=rhs[0].record_id,
                    stage=StageId.S2A_EXACT_TITLE,
                    similarity=1.0,
                    publisher_equal=True,
                )
            )
        else:
            discarded += 1
    return pairs, ambiguous, discarded


def match_fuzzy_title(
    left: list[JournalRecord],
    right: list[JournalRecord],
    threshold: float = 0.9,
) -> tuple[list[MatchPair], int]:
    """Similarity matching over the remaining records.

    Candidate pairs scoring at or above the threshold with the same
    publisher are taken greedily in order of descending similarity, ties
    broken by record id, so each record ends up with its best available
    partner. Above-threshold candidates whose publishers differ are
    counted as discarded. Returns (pairs, discarded).
    """
    if not 0.0 < threshold <= 1.0:
        raise ConfigError(f"similarity threshold must be in (0, 1], got {threshold}")
    eligible: list[tuple[float, str, str]] = []
    discarded = 0
    for a in left:
        if not a.title_norm:
            continue
        for b in right:
            if not b.title_norm:
                continue
            similarity = cosine_title_similarity(a.title_norm, b.title_norm)
            if similarity < threshold:
                continue
            if _publishers_equal(a, b):
                eligible.append((similarity, a.record_id, b.record_id))
            else:
                discarded += 1
    eligible.sort(key=lambda item: (-item[0], item[1], item[2]))
    matched_a: set[str] = set()
    matched_b: set[str] = set()
    pairs: list[MatchPair] = []
    for similarity, a_id, b_id in eligible:
        if a_id in matched_a or b_id in matched_b:
            continue
        matched_a.add(a_id)
        matched_b.add(b_id)
        pairs.append(
            MatchPair(
                a_id=a_id,
                b_id=b_id,
                stage=StageId.S2B_FUZZY_TITLE,
                similarity=similarity,
                publisher_equal=True,
            )
        )
    return pairs, discarded


def run_pipeline(
    left: SourceList, right: SourceList, threshold: float = 0.9
) -> MatchLedger:
    """Execute all stages for one ordered database pair."""
    if left.db == right.db:
        raise ConfigError(f"cannot match {left.db.value} against itself")
    if not 0.0 < threshold <= 1.0:
        raise ConfigError(f"similarity threshold must be in (0, 1], got {threshold}")

    left_part = partition(left)
    right_part = partition(right)
    ledger = MatchLedger(pair=(left.db, right.db))
    matched_a: set[str] = set()
    matched_b: set[str] = set()

    def remaining(records: list[JournalRecord], side: set[str]) -> list[JournalRecord]:
        return [r for r in records if r.record_id not in side]

    def absorb(stage: StageId, passes: list[tuple[list[MatchPair], int]]) -> None:
        for pairs, ambiguous in passes:
            for match in pairs:
                matched_a.add(match.a_id)
                matched_b.add(match.b_id)
                ledger.pairs.append(match)
            ledger.per_stage_counts[stage] += len(pairs)
            ledger.ambiguous_keys[stage] += ambiguous

    def key_pass(
        stage: StageId,
        left_pool: list[JournalRecord],
        right_pool: list[JournalRecord],
        left_key: KeyKind,
        right_key: KeyKind,
    ) -> None:
        pairs, ambiguous = match_on_key(
            remaining(left_pool, matched_a),
            remaining(right_pool, matched_b),
            left_key,
            right_key,
            stage,
        )
        absorb(stage, [(pairs, ambiguous)])

    key_pass(StageId.S1A_ISSN, left_part.issn_set, right_part.issn_set,
             KeyKind.ISSN, KeyKind.ISSN)
    key_pass(StageId.S1B_EISSN, left_part.modified_eissn_set,
             right_part.modified_eissn_set, KeyKind.EISSN, KeyKind.EISSN)
    # S1C runs both directions; the pools are disjoint so the legs cannot
    # compete for the same record.
    key_pass(StageId.S1C_ISSNSET_VS_EISSNSET, left_part.issn_set,
             right_part.modified_eissn_set, KeyKind.EISSN, KeyKind.EISSN)
    key_pass(StageId.S1C_ISSNSET_VS_EISSNSET, left_part.modified_eissn_set,
             right_part.issn_set, KeyKind.EISSN, KeyKind.EISSN)
    key_pass(StageId.S1D_ISSNSETS_BY_EISSN, left_part.issn_set,
             right_part.issn_set, KeyKind.EISSN, KeyKind.EISSN)
    key_pass(StageId.S1E_EISSNSET_VS_ISSNSET, left_part.modified_eissn_set,
             right_part.issn_set, KeyKind.EISSN, KeyKind.EISSN)

    all_left = left_part.issn_set + left_part.modified_eissn_set
    all_right = right_part.issn_set + right_part.modified_eissn_set
    key_pass(StageId.S1F_INTERCHANGED, all_left, all_right,
             KeyKind.ISSN, KeyKind.EISSN)
    key_pass(StageId.S1F_INTERCHANGED, all_left, all_right,
             KeyKind.EISSN, KeyKind.ISSN)

    exact_pairs, exact_ambiguous, exact_discarded = match_exact_title(
        remaining(all_left, matched_a), remaining(all_right, matched_b)
    )
    absorb(StageId.S2A_EXACT_TITLE, [(exact_pairs, exact_ambiguous)])
    ledger.discarded_title_matches[StageId.S2A_EXACT_TITLE] = exact_discarded

    fuzzy_pairs, fuzzy_discarded = match_fuzzy_title(
        remaining(all_left, matched_a), remaining(all_right, matched_b), threshold
    )
    absorb(StageId.S2B_FUZZY_TITLE, [(fuzzy_pairs, 0)])
    ledger.discarded_title_matches[StageId.S2B_FUZZY_TITLE] = fuzzy_discarded

    ledger.validate()
    logger.info(
        "%s x %s: %d matches (%s)",
        left.db.value, right.db.value, len(ledger.pairs),
        ", ".join(f"{s.value}={ledger.per_stage_counts[s]}" for s in StageId),
    )
    return ledger


LEDGER_CSV_COLUMNS = (
    "a_id", "b_id", "stage", "key_kind", "key_value", "similarity", "publisher_equal",
)


def write_ledger_csv(ledger: MatchLedger, path: str | Path) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(LEDGER_CSV_COLUMNS)
    for match in ledger.pairs:
        writer.writerow([
            match.a_id,
            match.b_id,
            match.stage.value,
            match.key_kind.value if match.key_kind else "",
            match.key_value or "",
            "" if match.similarity is None else repr(match.similarity),
            "" if match.publisher_equal is None else str(match.publisher_equal).lower(),
        ])
    atomic_write_text(path, buffer.getvalue())


def write_ledger_json(ledger: MatchLedger, path: str | Path) -> None:
    atomic_write_text(
        path, json.dumps(ledger.counts_dict(), sort_keys=True, indent=2) + "\n"
    )


def read_ledger_csv(path: str | Path, pair: tuple[SourceDb, SourceDb]) -> MatchLedger:
    ledger = MatchLedger(pair=pair)
    with open(path, encoding="utf-8", newline="") as handle:
        for row in csv.DictReader(handle):
            ledger.pairs.append(
                MatchPair(
                    a_id=row["a_id"],
                    b_id=row["b_id"],
                    stage=StageId(row["stage"]),
                    key_kind=KeyKind(row["key_kind"]) if row["key_kind"] else None,
                    key_value=row["key_value"] or None,
                    similarity=float(row["similarity"]) if row["similarity"] else None,
                    publisher_equal={"true": True, "false": False}.get(
                        row["publisher_equal"]
                    ),
                )
            )
    for match in ledger.pairs:
        ledger.per_stage_counts[match.stage] += 1
    return ledger
