#!/usr/bin/env python3
"""Fold vendor subject schemes into five major areas and compare mixes.

Scopus macro categories and Dimensions FOR divisions map onto the Web
of Science major areas through an editable CSV. Categories outside the
mapping (e.g. Scopus 'Multidisciplinary') are reported separately and
excluded from the percentage base unless explicitly included.
"""
from pathlib import Path

from journalscope import MajorArea, SourceDb, map_category, subject_distribution
from journalscope.subjects import load_subject_counts

DATA = Path(__file__).resolve().parent / "data"

print("-- single lookups --")
for db, category in (
    (SourceDb.SCOPUS, "Neuroscience"),
    (SourceDb.SCOPUS, "Multidisciplinary"),
    (SourceDb.DIMENSIONS, "17. Psychology and Cognitive Sciences"),
    (SourceDb.WOS, "Life Sciences & Biomedicine"),
):
    print(f"  {db.value:10} {category!r} -> {map_category(db, category).value}")

counts = load_subject_counts(DATA / "subject_counts.csv")
print("\n-- distributions --")
for db in SourceDb:
    distribution = subject_distribution(db, counts[db])
    shares = "  ".join(
        f"{area.value.split('_')[0].lower()}={distribution.percents[area]:.1f}%"
        for area in MajorArea
        if area in distribution.percents
    )
    print(f"  {db.value:10} {shares}")
    if distribution.unmapped_records:
        print(f"  {'':10} ({distribution.unmapped_records} records in unmapped categories, "
              "excluded from the base)")

print("\n-- including the unmapped bucket --")
scopus = subject_distribution(SourceDb.SCOPUS, counts[SourceDb.SCOPUS], include_unmapped=True)
print(f"  SCOPUS unmapped share: {scopus.percents[MajorArea.UNMAPPED]:.1f}% "
      f"of {scopus.total_records} records")
