#!/usr/bin/env python3
"""Country output volume, within-set rank, global share and growth.

Input is a long-form CSV of yearly publication counts per country and
database (2010-2018 here), plus per-database world totals. Growth is
compounded over the nine yearly observations.
"""
from pathlib import Path

from journalscope import SourceDb, build_indicator_table
from journalscope.indicators import load_country_series, load_world_totals

DATA = Path(__file__).resolve().parent / "data"

series_set = load_country_series(DATA / "country_counts.csv")
world = load_world_totals(DATA / "world_totals.json")
rows = build_indicator_table(series_set, world)

print(f"{len(rows)} (country, database) indicator rows\n")
for db in SourceDb:
    print(f"{db.value}: top 8 by output")
    in_db = [r for r in rows if r.db == db][:8]
    for row in in_db:
        print(f"  {row.rank:>2}. {row.country:<12} output {row.output:>9,} "
              f"share {row.global_share_pct:5.2f}%  growth {row.cagr_pct:6.2f}%/yr")
    print()

usa = {r.db.value: r for r in rows if r.country == "USA"}
print("the same country reads differently per database:")
for db, row in usa.items():
    print(f"  USA in {db:<10}: {row.output:>9,} papers, {row.global_share_pct:5.2f}% of world")

taiwan = next(r for r in rows if r.country == "Taiwan" and r.db is SourceDb.SCOPUS)
print(f"\nshrinking series stay negative: Taiwan/SCOPUS growth {taiwan.cagr_pct}%/yr")
