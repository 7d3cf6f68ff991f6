"""Acceptance suite: one test per criterion, one verdict line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL
lines. Expected values for the country indicator checks are frozen in
tests/data/expected_indicators.csv.
"""

from __future__ import annotations

import csv
import json
import random
import shutil
import time

from bruteforce import oracle_preprocess, oracle_pipeline, oracle_three_way
from journalscope.cli import main as cli_main
from journalscope.indicators import (
    CountrySeries,
    compute_cagr,
    compute_global_share,
    load_country_series,
    load_world_totals,
)
from journalscope.ingest import SourceDb
from journalscope.matching import StageId, cosine_title_similarity, run_pipeline
from journalscope.overlap import coverage_percentages, venn_regions
from journalscope.preprocess import DEFAULT_NON_JOURNAL_WORDS, preprocess
from journalscope.subjects import MAPPED_AREAS, default_subject_map, subject_distribution
from synthdata import make_pair, make_three_lists
from test_subjects import DIMENSIONS_EXPECTED, SCOPUS_EXPECTED

W, S, D = SourceDb.WOS, SourceDb.SCOPUS, SourceDb.DIMENSIONS


def _verdict(number: int, name: str, failures: list[str], extra: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    note = f" ({extra})" if extra else ""
    print(f"[{status}] criterion {number}: {name}{note}")
    assert not failures, f"criterion {number}: " + "; ".join(failures[:10])


def _expected_indicator_rows(test_data):
    with open(test_data / "expected_indicators.csv", encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def test_criterion_1_cagr_reproduction(demo_data, test_data):
    series_set = {
        (s.country, s.db.value): s
        for s in load_country_series(demo_data / "country_counts.csv")
    }
    failures = []
    start = time.perf_counter()
    for expected in _expected_indicator_rows(test_data):
        series = series_set[(expected["country"], expected["db"])]
        got = compute_cagr(series)
        want = float(expected["cagr_pct"])
        if got != want:
            failures.append(f"{expected['country']}/{expected['db']}: {got} != {want}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.3f}s >= 1s")
    taiwan = compute_cagr(series_set[("Taiwan", "SCOPUS")])
    if taiwan != -0.06:
        failures.append(f"Taiwan/SCOPUS {taiwan} != -0.06")
    _verdict(1, "all 60 growth-rate cells reproduce at 2 decimals", failures,
             f"{elapsed:.3f}s")


def test_criterion_2_global_share_reproduction(demo_data, test_data):
    world = load_world_totals(demo_data / "world_totals.json")
    assert world == {W: 13218007, S: 18058418, D: 28130484}
    failures = []
    start = time.perf_counter()
    for expected in _expected_indicator_rows(test_data):
        got = compute_global_share(int(expected["output"]), world[SourceDb(expected["db"])])
        want = float(expected["global_share_pct"])
        if got != want:
            failures.append(f"{expected['country']}/{expected['db']}: {got} != {want}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.3f}s >= 1s")
    _verdict(2, "all 60 global shares reproduce at 2 decimals", failures,
             f"{elapsed:.3f}s")


def test_criterion_3_venn_arithmetic():
    failures = []
    summary = venn_regions(
        {W: 13610, S: 39758, D: 73966},
        {"WS": 13489, "WD": 13149, "SD": 38336},
        13047,
    )
    uniques = (summary.regions["w_only"], summary.regions["s_only"], summary.regions["d_only"])
    if uniques != (19, 980, 35528):
        failures.append(f"uniques {uniques} != (19, 980, 35528)")
    table = {row.description: row for row in coverage_percentages(summary).rows}
    expected_percentages = {
        "WOS overlap with SCOPUS": 99.11,
        "WOS overlap with DIMENSIONS": 96.61,
        "SCOPUS overlap with DIMENSIONS": 96.42,
        "SCOPUS non-overlap with DIMENSIONS": 3.58,
        "SCOPUS non-overlap with WOS": 66.07,
        "DIMENSIONS non-overlap with SCOPUS": 48.17,
        "WOS covered by all three databases": 95.86,
        "SCOPUS covered by all three databases": 32.82,
        "DIMENSIONS covered by all three databases": 17.64,
    }
    for description, want in expected_percentages.items():
        got = table[description].percent
        if got != want:
            failures.append(f"{description}: {got} != {want}")
    # The complement is printed from our own arithmetic: 73,966 - 13,149.
    non_overlap = table["DIMENSIONS non-overlap with WOS"]
    if non_overlap.numerator != 60817:
        failures.append(f"W-D non-overlap {non_overlap.numerator} != 60817")
    if non_overlap.percent != 82.22:
        failures.append(f"W-D non-overlap pct {non_overlap.percent} != 82.22")
    _verdict(3, "Venn regions and all nine coverage percentages reproduce", failures)


def test_criterion_4_stage_sums(demo_data, tmp_path):
    failures = []
    checked = 0
    for seed in range(8):
        left, right = make_pair(seed, n_journals=(60, 120))
        clean_left, _ = preprocess(left)
        clean_right, _ = preprocess(right)
        ledger = run_pipeline(clean_left, clean_right)
        checked += 1
        if sum(ledger.per_stage_counts.values()) != len(ledger.pairs):
            failures.append(f"seed {seed}: stage counts do not sum to ledger size")
    out = tmp_path / "out"
    assert cli_main(["run", "--config", str(demo_data / "run_config.json"),
                     "--out", str(out)]) == 0
    for stem in ("ledger_wos_scopus", "ledger_wos_dimensions", "ledger_scopus_dimensions"):
        payload = json.loads((out / f"{stem}.json").read_text(encoding="utf-8"))
        checked += 1
        if sum(payload["per_stage_counts"].values()) != payload["total"]:
            failures.append(f"{stem}: stage counts do not sum to total")
    _verdict(4, "per-stage counts sum to ledger size on every run", failures,
             f"{checked} ledgers")


def test_criterion_5_oracle_equivalence():
    failures = []
    sizes = []
    start = time.perf_counter()
    for seed in range(50):
        left, right = make_pair(seed, n_journals=(135, 320))
        sizes.append((len(left.records), len(right.records)))
        clean_left, report_left = preprocess(left)
        clean_right, report_right = preprocess(right)
        oracle_left, oracle_report_left = oracle_preprocess(
            left.records, DEFAULT_NON_JOURNAL_WORDS
        )
        oracle_right, oracle_report_right = oracle_preprocess(
            right.records, DEFAULT_NON_JOURNAL_WORDS
        )
        if [r.record_id for r in clean_left.records] != [r.record_id for r in oracle_left]:
            failures.append(f"seed {seed}: left preprocess differs")
            continue
        if [r.record_id for r in clean_right.records] != [r.record_id for r in oracle_right]:
            failures.append(f"seed {seed}: right preprocess differs")
            continue
        for got, want in (
            (report_left, oracle_report_left), (report_right, oracle_report_right)
        ):
            for field in ("removed_null_ids", "removed_duplicate_pairs",
                          "removed_inconsistent_ids", "removed_non_journal"):
                if got.as_dict()[field] != want[field]:
                    failures.append(f"seed {seed}: report field {field} differs")
        ledger = run_pipeline(clean_left, clean_right)
        oracle_pairs, oracle_counts = oracle_pipeline(
            clean_left.records, clean_right.records
        )
        got_pairs = [(p.a_id, p.b_id, p.stage.value) for p in ledger.pairs]
        if got_pairs != oracle_pairs:
            failures.append(f"seed {seed}: ledger differs from oracle")
        if {s.value: c for s, c in ledger.per_stage_counts.items()} != oracle_counts:
            failures.append(f"seed {seed}: per-stage counts differ from oracle")
    elapsed = time.perf_counter() - start
    for length_left, length_right in sizes:
        if not (100 <= length_left <= 300 and 100 <= length_right <= 300):
            failures.append(f"fixture size out of range: {length_left}/{length_right}")
    if elapsed >= 30.0:
        failures.append(f"runtime {elapsed:.1f}s >= 30s")
    _verdict(5, "50 random fixtures agree 100% with the brute-force oracle",
             failures, f"{elapsed:.1f}s")


def _materialize_csv_fixture(lists, target):
    """Write three source lists as CSVs plus schemas and a run config."""
    target.mkdir(parents=True, exist_ok=True)
    columns = ["rid", "name", "print_id", "online_id", "house"]
    for db, source in lists.items():
        with open(target / f"{db.value.lower()}.csv", "w", encoding="utf-8",
                  newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for r in source.records:
                writer.writerow([
                    r.record_id, r.title_raw,
                    r.issn.digits if r.issn else "",
                    r.eissn.digits if r.eissn else "",
                    r.publisher_raw or "",
                ])
        schema = {
            "db": db.value,
            "columns": {"record_id": "rid", "title": "name", "issn": "print_id",
                        "eissn": "online_id", "publisher": "house"},
        }
        (target / f"schema_{db.value.lower()}.json").write_text(
            json.dumps(schema, indent=2), encoding="utf-8"
        )
    (target / "world_totals.json").write_text(
        json.dumps({"WOS": 1000, "SCOPUS": 2000, "DIMENSIONS": 3000}), encoding="utf-8"
    )
    with open(target / "country_counts.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["country", "db", "year", "count"])
        for db in ("WOS", "SCOPUS", "DIMENSIONS"):
            for year, count in zip(range(2010, 2019), range(10, 19)):
                writer.writerow(["Atlantis", db, year, count])
    with open(target / "subject_counts.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["db", "category", "count"])
        writer.writerow(["SCOPUS", "Medicine", 10])
        writer.writerow(["SCOPUS", "Energy", 5])
    (target / "run_config.json").write_text(json.dumps({
        "out": "unused",
        "world_totals": "world_totals.json",
        "country_counts": "country_counts.csv",
        "subject_counts": "subject_counts.csv",
        "sources": {
            db: {"schema": f"schema_{db.lower()}.json", "files": [f"{db.lower()}.csv"]}
            for db in ("WOS", "SCOPUS", "DIMENSIONS")
        },
    }, indent=2), encoding="utf-8")


def _permute_rows(path, seed):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    body = rows[1:]
    random.Random(seed).shuffle(body)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(rows[0])
        writer.writerows(body)


def test_criterion_6_determinism(demo_data, tmp_path):
    failures = []
    fixtures = []

    demo_copy = tmp_path / "demo"
    demo_copy.mkdir()
    for path in demo_data.iterdir():
        shutil.copy(path, demo_copy / path.name)
    fixtures.append(("demo", demo_copy,
                     ["wos_scie.csv", "wos_ssci.csv", "wos_ahci.csv", "scopus.csv",
                      "dimensions.csv", "country_counts.csv", "subject_counts.csv"]))

    for seed in (3, 9):
        lists, _ = make_three_lists(seed, n_journals=90)
        fixture_dir = tmp_path / f"gen{seed}"
        _materialize_csv_fixture(lists, fixture_dir)
        fixtures.append((f"gen{seed}", fixture_dir,
                         ["wos.csv", "scopus.csv", "dimensions.csv",
                          "country_counts.csv", "subject_counts.csv"]))

    for name, fixture_dir, csv_names in fixtures:
        out_a = tmp_path / f"{name}_a"
        if cli_main(["run", "--config", str(fixture_dir / "run_config.json"),
                     "--out", str(out_a)]) != 0:
            failures.append(f"{name}: baseline run failed")
            continue
        for csv_name in csv_names:
            _permute_rows(fixture_dir / csv_name, seed=23)
        out_b = tmp_path / f"{name}_b"
        if cli_main(["run", "--config", str(fixture_dir / "run_config.json"),
                     "--out", str(out_b)]) != 0:
            failures.append(f"{name}: permuted run failed")
            continue
        if (out_a / "summary.json").read_bytes() != (out_b / "summary.json").read_bytes():
            failures.append(f"{name}: summary.json differs after permutation")
    _verdict(6, "permuted inputs give byte-identical summaries", failures,
             f"{len(fixtures)} fixtures")


def _random_title(rng):
    vocabulary = "alpha beta gamma delta epsilon zeta eta theta iota kappa".split()
    return " ".join(rng.choice(vocabulary) for _ in range(rng.randint(0, 8)))


def test_criterion_7_invariant_suite():
    failures = []

    for seed in range(10):
        left, right = make_pair(seed + 400, n_journals=(60, 120))
        for source in (left, right):
            cleaned, _ = preprocess(source)
            again, second = preprocess(cleaned)
            if [r.record_id for r in again.records] != [r.record_id for r in cleaned.records]:
                failures.append(f"seed {seed}: preprocess not idempotent")
            if second.removed_total() != 0:
                failures.append(f"seed {seed}: second preprocess removed records")
        clean_left, _ = preprocess(left)
        clean_right, _ = preprocess(right)
        ledger = run_pipeline(clean_left, clean_right)
        seen_a, seen_b = set(), set()
        stage_order = list(StageId)
        last_stage_index = 0
        for pair in ledger.pairs:
            if pair.a_id in seen_a or pair.b_id in seen_b:
                failures.append(f"seed {seed}: record matched twice")
            seen_a.add(pair.a_id)
            seen_b.add(pair.b_id)
            index = stage_order.index(pair.stage)
            if index < last_stage_index:
                failures.append(f"seed {seed}: later stage emitted before earlier one")
            last_stage_index = index

    rng = random.Random(20260809)
    for i in range(10_000):
        t1, t2 = _random_title(rng), _random_title(rng)
        s12 = cosine_title_similarity(t1, t2)
        s21 = cosine_title_similarity(t2, t1)
        if s12 != s21:
            failures.append(f"cosine asymmetry at pair {i}")
            break
        if not 0.0 <= s12 <= 1.0 + 1e-12:
            failures.append(f"cosine out of bounds at pair {i}: {s12}")
            break

    for i in range(200):
        sets_rng = random.Random(i)
        universe = range(200)
        w = {x for x in universe if sets_rng.random() < 0.45}
        s = {x for x in universe if sets_rng.random() < 0.55}
        d = {x for x in universe if sets_rng.random() < 0.65}
        summary = venn_regions(
            {W: len(w), S: len(s), D: len(d)},
            {"WS": len(w & s), "WD": len(w & d), "SD": len(s & d)},
            len(w & s & d),
        )
        if any(value < 0 for value in summary.regions.values()):
            failures.append(f"negative region at triple {i}")
        if summary.regions != oracle_three_way(w, s, d)["regions"]:
            failures.append(f"region reconstruction failed at triple {i}")

    cagr_rng = random.Random(97)
    for i in range(1_000):
        values = [cagr_rng.randint(1, 10**6) for _ in range(9)]
        k = cagr_rng.randint(2, 10_000)
        base = compute_cagr(CountrySeries("X", W, dict(enumerate(values, start=2010))))
        scaled = compute_cagr(
            CountrySeries("X", W, dict(enumerate([v * k for v in values], start=2010)))
        )
        if base != scaled:
            failures.append(f"CAGR scale variance at series {i}: {base} vs {scaled}")
            break

    _verdict(7, "invariant suite holds with zero violations", failures)


def test_criterion_8_subject_mapping():
    failures = []
    subject_map = default_subject_map()
    for category, want in SCOPUS_EXPECTED.items():
        got = subject_map.lookup(S, category)
        if got != want:
            failures.append(f"SCOPUS {category}: {got} != {want}")
    for category, want in DIMENSIONS_EXPECTED.items():
        got = subject_map.lookup(D, category)
        if got != want:
            failures.append(f"DIMENSIONS {category}: {got} != {want}")
    if len(SCOPUS_EXPECTED) != 26 or len(DIMENSIONS_EXPECTED) != 22:
        failures.append("expected-category tables have the wrong sizes")

    scopus_categories = list(SCOPUS_EXPECTED)
    dist_rng = random.Random(5)
    for i in range(100):
        counts = {
            category: dist_rng.randint(0, 1000)
            for category in dist_rng.sample(scopus_categories, k=dist_rng.randint(2, 12))
        }
        if sum(counts.values()) == 0:
            continue
        distribution = subject_distribution(S, counts)
        total = sum(distribution.percents.values())
        # 1e-9 absorbs float summation noise at the tolerance boundary.
        if abs(total - 100.0) > 0.2 + 1e-9:
            failures.append(f"distribution {i} sums to {total}")
        if set(distribution.percents) != set(MAPPED_AREAS):
            failures.append(f"distribution {i} has wrong area set")
    _verdict(8, "subject map matches the printed table; distributions sum to 100",
             failures, "26 + 22 categories, 100 synthetic distributions")
