#!/usr/bin/env python3
"""Clean the ingested lists: null identifiers, duplicates, collisions,
and non-journal entries (preprint servers, conference series).

Each stage reports how many records it removed; the arithmetic always
reconciles with the output count.
"""
from pathlib import Path

from journalscope import SchemaConfig, SourceDb, load_source_list, merge_wos_indices, preprocess

DATA = Path(__file__).resolve().parent / "data"


def load_all():
    wos_schema = SchemaConfig.load(DATA / "schema_wos.json")
    wos = merge_wos_indices([
        load_source_list([DATA / name], wos_schema, SourceDb.WOS)
        for name in ("wos_scie.csv", "wos_ssci.csv", "wos_ahci.csv")
    ])
    scopus = load_source_list(
        [DATA / "scopus.csv"], SchemaConfig.load(DATA / "schema_scopus.json"), SourceDb.SCOPUS
    )
    dimensions = load_source_list(
        [DATA / "dimensions.csv"],
        SchemaConfig.load(DATA / "schema_dimensions.json"),
        SourceDb.DIMENSIONS,
    )
    return wos, scopus, dimensions


for source in load_all():
    cleaned, report = preprocess(source)
    print(f"{source.db.value}:")
    print(f"  input                  {report.input_count}")
    print(f"  null identifiers      -{report.removed_null_ids}")
    print(f"  duplicate id pairs    -{report.removed_duplicate_pairs}")
    print(f"  identifier collisions -{report.removed_inconsistent_ids}")
    print(f"  preprint entries      -{report.removed_non_journal['preprint']}")
    print(f"  conference entries    -{report.removed_non_journal['conference']}")
    print(f"  output                 {report.output_count}")

    again, second = preprocess(cleaned)
    print(f"  second pass removes    {second.removed_total()} (cleaning is idempotent)\n")
