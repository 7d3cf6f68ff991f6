#!/usr/bin/env python3
"""Walk through identifier/title normalization and master-list ingestion.

The three vendors export their journal rosters with different column
layouts, so each list gets a small schema file mapping logical fields to
columns. Web of Science ships one file per citation index; those are
merged into a single master list with duplicate entries collapsed.
"""
from pathlib import Path

from journalscope import (
    SchemaConfig,
    SourceDb,
    load_source_list,
    merge_wos_indices,
    normalize_issn,
    normalize_title,
)

DATA = Path(__file__).resolve().parent / "data"

print("-- identifier normalization --")
for raw in ("0028-0836", "0002-936x", "2049 3630", "not-a-serial", ""):
    result = normalize_issn(raw)
    if result is None:
        print(f"  {raw!r:14} -> rejected")
    else:
        print(f"  {raw!r:14} -> {result.digits} (checksum {'ok' if result.valid_check else 'BAD'})")

print("\n-- title normalization --")
for raw in ("Science & Technology", "JOURNAL OF PHYSICS. A", "Annales de l'Institut"):
    print(f"  {raw!r} -> {normalize_title(raw)!r}")

print("\n-- ingesting the three master lists --")
wos_schema = SchemaConfig.load(DATA / "schema_wos.json")
per_index = [
    load_source_list([DATA / name], wos_schema, SourceDb.WOS)
    for name in ("wos_scie.csv", "wos_ssci.csv", "wos_ahci.csv")
]
wos = merge_wos_indices(per_index)
print(f"  WOS: {sum(len(x.records) for x in per_index)} rows in 3 index files "
      f"-> {len(wos.records)} after merge")

scopus = load_source_list(
    [DATA / "scopus.csv"], SchemaConfig.load(DATA / "schema_scopus.json"), SourceDb.SCOPUS
)
dimensions = load_source_list(
    [DATA / "dimensions.csv"],
    SchemaConfig.load(DATA / "schema_dimensions.json"),
    SourceDb.DIMENSIONS,
)
print(f"  SCOPUS: {len(scopus.records)} records")
print(f"  DIMENSIONS: {len(dimensions.records)} records")

sample = wos.records[0]
print("\n-- one normalized record --")
print(f"  id:        {sample.record_id}")
print(f"  title:     {sample.title_raw!r} -> {sample.title_norm!r}")
print(f"  issn:      {sample.issn.digits if sample.issn else None}")
print(f"  eissn:     {sample.eissn.digits if sample.eissn else None}")
print(f"  publisher: {sample.publisher_raw!r} -> {sample.publisher_norm!r}")
print(f"  categories:{sample.categories}")
print(f"  extra:     {sample.extra}")
