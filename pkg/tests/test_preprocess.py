from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from bruteforce import oracle_preprocess
from journalscope.ingest import JournalRecord, Provenance, SourceDb, SourceList
from journalscope.preprocess import (
    DEFAULT_NON_JOURNAL_WORDS,
    NonJournalKeywords,
    drop_inconsistent_ids,
    drop_non_journal,
    drop_null_and_duplicate_ids,
    preprocess,
)
from synthdata import make_issn


def rec(record_id, title="some journal", issn=None, eissn=None):
    return JournalRecord.build(SourceDb.SCOPUS, record_id, title, issn, eissn, "Pub")


def as_list(records):
    return SourceList(db=SourceDb.SCOPUS, records=records, provenance=Provenance())


class TestDropNullAndDuplicateIds:
    def test_null_id_record_removed(self):
        cleaned, counts = drop_null_and_duplicate_ids(as_list([rec("a"), rec("b", issn="0028-0836")]))
        assert [r.record_id for r in cleaned.records] == ["b"]
        assert counts == {"removed_null_ids": 1, "removed_duplicate_pairs": 0}

    def test_duplicate_pair_second_removed(self):
        records = [
            rec("a", issn="0028-0836", eissn="2049-3630"),
            rec("b", issn="0028-0836", eissn="2049-3630"),
        ]
        cleaned, counts = drop_null_and_duplicate_ids(as_list(records))
        assert [r.record_id for r in cleaned.records] == ["a"]
        assert counts["removed_duplicate_pairs"] == 1

    def test_ten_record_fixture(self):
        records = [
            rec("r1", issn=make_issn(1)),
            rec("r2"),  # null
            rec("r3", issn=make_issn(2), eissn=make_issn(102)),
            rec("r4", eissn=make_issn(103)),
            rec("r5", issn=make_issn(2), eissn=make_issn(102)),  # dup of r3
            rec("r6"),  # null
            rec("r7", issn=make_issn(4)),
            rec("r8", eissn=make_issn(105)),
            rec("r9", issn=make_issn(5)),
            rec("r10", issn=make_issn(6)),
        ]
        cleaned, counts = drop_null_and_duplicate_ids(as_list(records))
        assert len(cleaned.records) == 7
        assert counts == {"removed_null_ids": 2, "removed_duplicate_pairs": 1}


class TestDropInconsistentIds:
    def test_shared_issn_removes_both(self):
        records = [
            rec("a", issn=make_issn(1), eissn=make_issn(101)),
            rec("b", issn=make_issn(1), eissn=make_issn(102)),
        ]
        cleaned, counts = drop_inconsistent_ids(as_list(records))
        assert cleaned.records == []
        assert counts["removed_inconsistent_ids"] == 2

    def test_all_distinct_unchanged(self):
        records = [rec(f"r{i}", issn=make_issn(i), eissn=make_issn(100 + i)) for i in range(5)]
        cleaned, counts = drop_inconsistent_ids(as_list(records))
        assert len(cleaned.records) == 5
        assert counts["removed_inconsistent_ids"] == 0

    def test_transitive_collision_removes_all_three(self):
        shared_e = make_issn(200)
        shared_i = make_issn(300)
        records = [
            rec("a", issn=make_issn(1), eissn=shared_e),
            rec("b", issn=shared_i, eissn=shared_e),
            rec("c", issn=shared_i, eissn=make_issn(201)),
        ]
        cleaned, counts = drop_inconsistent_ids(as_list(records))
        assert cleaned.records == []
        assert counts["removed_inconsistent_ids"] == 3

    def test_keep_first_retains_one_per_value(self):
        records = [
            rec("a", issn=make_issn(1), eissn=make_issn(101)),
            rec("b", issn=make_issn(1), eissn=make_issn(102)),
            rec("c", issn=make_issn(2), eissn=make_issn(103)),
        ]
        cleaned, counts = drop_inconsistent_ids(as_list(records), keep_first=True)
        assert [r.record_id for r in cleaned.records] == ["a", "c"]
        assert counts["removed_inconsistent_ids"] == 1


class TestDropNonJournal:
    def test_conference_keyword(self):
        cleaned, counts = drop_non_journal(
            as_list([rec("a", title="International Conference on Parsing", issn=make_issn(1))])
        )
        assert cleaned.records == []
        assert counts["removed_non_journal"] == {"preprint": 0, "conference": 1}

    def test_token_not_substring(self):
        cleaned, counts = drop_non_journal(
            as_list([rec("a", title="Journal of Conferencing Studies", issn=make_issn(1))])
        )
        assert len(cleaned.records) == 1
        assert counts["removed_non_journal"] == {"preprint": 0, "conference": 0}

    def test_preprints_keyword(self):
        cleaned, counts = drop_non_journal(
            as_list([rec("a", title="Biology Preprints Archive", issn=make_issn(1))])
        )
        assert cleaned.records == []
        assert counts["removed_non_journal"] == {"preprint": 1, "conference": 0}

    def test_hyphenated_keyword_matches_token_bigram(self):
        keywords = NonJournalKeywords(words=["preprint-server"])
        cleaned, counts = drop_non_journal(
            as_list([
                rec("a", title="Open Preprint Server for Chemistry", issn=make_issn(1)),
                rec("b", title="Server Quarterly", issn=make_issn(2)),
            ]),
            keywords,
        )
        assert [r.record_id for r in cleaned.records] == ["b"]
        assert counts["removed_non_journal"]["preprint"] == 1

    def test_preprint_bucket_wins_mixed_title(self):
        cleaned, counts = drop_non_journal(
            as_list([rec("a", title="Conference Preprint Collection", issn=make_issn(1))])
        )
        assert counts["removed_non_journal"] == {"preprint": 1, "conference": 0}

    def test_keyword_file_roundtrip(self, tmp_path):
        path = tmp_path / "words.txt"
        path.write_text("gazette\nnewsletter\n", encoding="utf-8")
        keywords = NonJournalKeywords.from_file(path)
        assert keywords.words == ["gazette", "newsletter"]
        cleaned, counts = drop_non_journal(
            as_list([rec("a", title="Mining Gazette", issn=make_issn(1))]), keywords
        )
        assert cleaned.records == []
        assert counts["removed_non_journal"]["conference"] == 1

    def test_empty_keyword_list_rejected(self):
        with pytest.raises(Exception):
            NonJournalKeywords(words=[])

    def test_default_keywords(self):
        assert NonJournalKeywords().words == list(DEFAULT_NON_JOURNAL_WORDS)


def _random_list(seed: int, size: int = 60) -> SourceList:
    rng = random.Random(seed)
    records = []
    for i in range(size):
        choice = rng.random()
        issn = make_issn(rng.randrange(40)) if choice > 0.2 else None
        eissn = make_issn(1000 + rng.randrange(40)) if rng.random() > 0.3 else None
        title = rng.choice([
            "journal of things",
            "conference proceedings of stuff",
            "annals of preprint culture",
            "quarterly review",
            f"unique title {i}",
        ])
        records.append(rec(f"r{i}", title=title, issn=issn, eissn=eissn))
    return as_list(records)


class TestPreprocess:
    def test_empty_list(self):
        cleaned, report = preprocess(as_list([]))
        assert cleaned.records == []
        assert report.as_dict() == {
            "input_count": 0,
            "removed_null_ids": 0,
            "removed_duplicate_pairs": 0,
            "removed_inconsistent_ids": 0,
            "removed_non_journal": {"preprint": 0, "conference": 0},
            "output_count": 0,
        }

    def test_planted_fifty_record_fixture(self):
        # 50 records: 4 null ids, 3 duplicate pairs, 2 issn-collision pairs,
        # 1 eissn-collision pair, 2 preprint titles, 3 conference titles.
        records = []
        serial = iter(range(1, 200))
        for i in range(32):
            n = next(serial)
            records.append(rec(f"ok{i}", issn=make_issn(n), eissn=make_issn(1000 + n)))
        for i in range(4):
            records.append(rec(f"null{i}"))
        for i in range(3):
            victim = records[i]
            records.append(rec(
                f"dup{i}",
                issn=victim.issn.digits,
                eissn=victim.eissn.digits if victim.eissn else None,
            ))
        for i in range(2):
            shared = make_issn(500 + i)
            records.append(rec(f"coll{i}a", issn=shared, eissn=make_issn(2000 + 2 * i)))
            records.append(rec(f"coll{i}b", issn=shared, eissn=make_issn(2001 + 2 * i)))
        shared_e = make_issn(3000)
        records.append(rec("ecoll-a", issn=make_issn(600), eissn=shared_e))
        records.append(rec("ecoll-b", issn=make_issn(601), eissn=shared_e))
        for i in range(2):
            n = next(serial)
            records.append(rec(f"pre{i}", title=f"Preprint Repository {i}", issn=make_issn(700 + n)))
        for i in range(3):
            n = next(serial)
            records.append(rec(
                f"conf{i}", title=f"Symposium on Topic {i}", issn=make_issn(800 + n)
            ))
        assert len(records) == 50
        rng = random.Random(7)
        rng.shuffle(records)
        cleaned, report = preprocess(as_list(records))
        assert report.input_count == 50
        assert report.removed_null_ids == 4
        assert report.removed_duplicate_pairs == 3
        assert report.removed_inconsistent_ids == 6
        assert report.removed_non_journal == {"preprint": 2, "conference": 3}
        assert report.output_count == 50 - 4 - 3 - 6 - 5

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_bruteforce_oracle(self, seed):
        source = _random_list(seed)
        cleaned, report = preprocess(source)
        oracle_records, oracle_report = oracle_preprocess(
            source.records, DEFAULT_NON_JOURNAL_WORDS
        )
        assert [r.record_id for r in cleaned.records] == [
            r.record_id for r in oracle_records
        ]
        assert report.removed_null_ids == oracle_report["removed_null_ids"]
        assert report.removed_duplicate_pairs == oracle_report["removed_duplicate_pairs"]
        assert report.removed_inconsistent_ids == oracle_report["removed_inconsistent_ids"]
        assert report.removed_non_journal == oracle_report["removed_non_journal"]

    @pytest.mark.parametrize("seed", range(4))
    def test_keep_first_matches_oracle(self, seed):
        source = _random_list(seed + 100)
        cleaned, report = preprocess(source, keep_first_on_collision=True)
        oracle_records, oracle_report = oracle_preprocess(
            source.records, DEFAULT_NON_JOURNAL_WORDS, keep_first=True
        )
        assert [r.record_id for r in cleaned.records] == [
            r.record_id for r in oracle_records
        ]
        assert report.removed_inconsistent_ids == oracle_report["removed_inconsistent_ids"]

    @pytest.mark.parametrize("seed", range(8))
    def test_idempotent(self, seed):
        cleaned, _ = preprocess(_random_list(seed + 50))
        again, second_report = preprocess(cleaned)
        assert [r.record_id for r in again.records] == [
            r.record_id for r in cleaned.records
        ]
        assert second_report.removed_total() == 0

    @pytest.mark.parametrize("seed", range(4))
    def test_idempotent_with_keep_first(self, seed):
        cleaned, _ = preprocess(_random_list(seed + 300), keep_first_on_collision=True)
        again, second_report = preprocess(cleaned, keep_first_on_collision=True)
        assert [r.record_id for r in again.records] == [
            r.record_id for r in cleaned.records
        ]
        assert second_report.removed_total() == 0

    @pytest.mark.parametrize("seed", range(8))
    def test_output_invariants(self, seed):
        source = _random_list(seed)
        cleaned, report = preprocess(source)
        # order-preserving subsequence
        positions = {r.record_id: i for i, r in enumerate(source.records)}
        indexes = [positions[r.record_id] for r in cleaned.records]
        assert indexes == sorted(indexes)
        # arithmetic
        assert report.output_count == report.input_count - report.removed_total()
        # no null-null, no repeated identifier values
        issns = [r.issn.digits for r in cleaned.records if r.issn]
        eissns = [r.eissn.digits for r in cleaned.records if r.eissn]
        assert len(issns) == len(set(issns))
        assert len(eissns) == len(set(eissns))
        assert all(r.issn or r.eissn for r in cleaned.records)

    @given(st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=40))
    @settings(max_examples=60, deadline=None)
    def test_idempotence_property(self, pairs):
        records = []
        for i, (a, b) in enumerate(pairs):
            records.append(rec(
                f"r{i}",
                issn=make_issn(a) if a else None,
                eissn=make_issn(1000 + b) if b else None,
            ))
        cleaned, _ = preprocess(as_list(records))
        again, second = preprocess(cleaned)
        assert [r.record_id for r in again.records] == [r.record_id for r in cleaned.records]
        assert second.removed_total() == 0
