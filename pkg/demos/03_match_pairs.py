#!/usr/bin/env python3
"""Run the staged matcher on one database pair and inspect the ledger.

Identifier stages run first (ISSN, then e-ISSN in several set
combinations, then interchanged fields); title stages only see what is
left. Each matched record is excluded from all later stages.
"""
from pathlib import Path

from journalscope import (
    SchemaConfig,
    SourceDb,
    StageId,
    cosine_title_similarity,
    load_source_list,
    merge_wos_indices,
    preprocess,
    run_pipeline,
)

DATA = Path(__file__).resolve().parent / "data"

wos_schema = SchemaConfig.load(DATA / "schema_wos.json")
wos, _ = preprocess(merge_wos_indices([
    load_source_list([DATA / name], wos_schema, SourceDb.WOS)
    for name in ("wos_scie.csv", "wos_ssci.csv", "wos_ahci.csv")
]))
scopus, _ = preprocess(load_source_list(
    [DATA / "scopus.csv"], SchemaConfig.load(DATA / "schema_scopus.json"), SourceDb.SCOPUS
))

ledger = run_pipeline(wos, scopus, threshold=0.9)

print(f"WOS x SCOPUS: {len(ledger.pairs)} matched journals\n")
print("per-stage counts:")
for stage in StageId:
    print(f"  {stage.value:28} {ledger.per_stage_counts[stage]}")

print("\ntitle-stage evidence:")
for pair in ledger.pairs:
    if pair.stage in (StageId.S2A_EXACT_TITLE, StageId.S2B_FUZZY_TITLE):
        print(f"  {pair.a_id} ~ {pair.b_id}: similarity {pair.similarity:.4f} "
              f"({pair.stage.value})")

discarded = sum(ledger.discarded_title_matches.values())
print(f"\ntitle matches discarded on publisher disagreement: {discarded}")

print("\ncosine similarity on token counts:")
for t1, t2 in (
    ("journal of physics a", "journal of physics b"),
    ("annals of mathematics part a", "annals of mathematics part a b"),
):
    print(f"  {t1!r} vs {t2!r} -> {cosine_title_similarity(t1, t2):.4f}")
