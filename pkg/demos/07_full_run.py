#!/usr/bin/env python3
"""Chain the whole pipeline through the CLI and peek at the summary.

Equivalent to:
    journalscope run --config demos/data/run_config.json --out demos/out
"""
import json
from pathlib import Path

from journalscope.cli import main

HERE = Path(__file__).resolve().parent
OUT = HERE / "out"

code = main(["run", "--config", str(HERE / "data" / "run_config.json"), "--out", str(OUT)])
if code != 0:
    raise SystemExit(code)

summary = json.loads((OUT / "summary.json").read_text(encoding="utf-8"))
print("\nsummary.json sections:")
print(f"  preprocess_reports: {sorted(summary['preprocess_reports'])}")
print(f"  ledgers:            {sorted(summary['ledgers'])}")
print(f"  venn regions:       {summary['venn']['regions']}")
print(f"  coverage rows:      {len(summary['coverage_table'])}")
print(f"  indicator rows:     {len(summary['indicators'])}")
print(f"  distributions:      {[d['db'] for d in summary['distributions']]}")
print(f"\nall artifacts in {OUT}")
