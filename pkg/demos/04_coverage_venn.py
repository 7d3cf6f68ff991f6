#!/usr/bin/env python3
"""Derive pairwise overlaps, the three-way overlap and all Venn regions.

The three-way count anchors on Web of Science: a journal is in all
three databases when its WoS record matched both a Scopus and a
Dimensions record. Inclusion-exclusion then yields the seven regions,
and every count is expressed as a share of each list.
"""
from pathlib import Path

from journalscope import (
    SchemaConfig,
    SourceDb,
    coverage_percentages,
    load_source_list,
    merge_wos_indices,
    preprocess,
    run_pipeline,
    triple_overlap,
    venn_regions,
)
from journalscope.report import emit_venn_svg

DATA = Path(__file__).resolve().parent / "data"
OUT = Path(__file__).resolve().parent / "out"


def load_clean(db, schema_name, *files):
    schema = SchemaConfig.load(DATA / schema_name)
    if db is SourceDb.WOS:
        source = merge_wos_indices([
            load_source_list([DATA / f], schema, db) for f in files
        ])
    else:
        source = load_source_list([DATA / f for f in files], schema, db)
    cleaned, _ = preprocess(source)
    return cleaned


wos = load_clean(SourceDb.WOS, "schema_wos.json", "wos_scie.csv", "wos_ssci.csv", "wos_ahci.csv")
scopus = load_clean(SourceDb.SCOPUS, "schema_scopus.json", "scopus.csv")
dimensions = load_clean(SourceDb.DIMENSIONS, "schema_dimensions.json", "dimensions.csv")

ws = run_pipeline(wos, scopus)
wd = run_pipeline(wos, dimensions)
sd = run_pipeline(scopus, dimensions)
triple, violations = triple_overlap(ws, wd, sd)

summary = venn_regions(
    {SourceDb.WOS: len(wos.records), SourceDb.SCOPUS: len(scopus.records),
     SourceDb.DIMENSIONS: len(dimensions.records)},
    {"WS": len(ws.pairs), "WD": len(wd.pairs), "SD": len(sd.pairs)},
    triple,
    transitivity_violations=violations,
)

print("pairwise overlaps:", summary.pairwise)
print("three-way overlap:", summary.triple, f"(broken triangles: {violations})")
print("regions:")
for region, count in summary.regions.items():
    print(f"  {region:8} {count}")

print("\ncoverage shares:")
for row in coverage_percentages(summary).rows:
    print(f"  {row.description:45} {row.numerator:>6} / {row.denominator:<6} = {row.percent:6.2f}%")

OUT.mkdir(exist_ok=True)
emit_venn_svg(summary, OUT / "venn.svg")
print(f"\nwrote {OUT / 'venn.svg'}")
