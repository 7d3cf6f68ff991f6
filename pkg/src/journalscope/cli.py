"""Command-line surface chaining the pipeline stages.

Each command reads its inputs, writes its artifacts into the output
directory and prints a one-line summary, so every stage of a run can be
inspected on disk. `run` chains everything from a single config file.

Exit codes: 0 success, 1 usage or configuration error, 2 data
consistency error. Log verbosity comes from JOURNALSCOPE_LOG
(error, info or debug).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import indicators as indicators_mod
from . import report as report_mod
from . import subjects as subjects_mod
from .errors import ConfigError, DataConsistencyError
from .fileio import atomic_write_text
from .ingest import (
    SchemaConfig,
    SourceDb,
    load_source_list,
    merge_wos_indices,
    read_records_jsonl,
    write_records_jsonl,
)
from .matching import read_ledger_csv, run_pipeline, write_ledger_csv, write_ledger_json
from .overlap import coverage_percentages, triple_overlap, venn_regions
from .preprocess import NonJournalKeywords, preprocess

logger = logging.getLogger(__name__)

DB_PAIRS = (
    (SourceDb.WOS, SourceDb.SCOPUS),
    (SourceDb.WOS, SourceDb.DIMENSIONS),
    (SourceDb.SCOPUS, SourceDb.DIMENSIONS),
)


def _configure_logging() -> None:
    level_name = os.environ.get("JOURNALSCOPE_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    if level_name not in levels:
        raise ConfigError(
            f"JOURNALSCOPE_LOG must be one of error, info, debug; got {level_name!r}"
        )
    logging.basicConfig(
        level=levels[level_name],
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _require_file(path: Path, what: str) -> Path:
    if not path.is_file():
        raise ConfigError(f"{what} not found: {path}")
    return path


def _records_path(out: Path, db: SourceDb) -> Path:
    return out / f"records_{db.value.lower()}.jsonl"


def _clean_path(out: Path, db: SourceDb) -> Path:
    return out / f"clean_{db.value.lower()}.jsonl"


def _ledger_stem(a: SourceDb, b: SourceDb) -> str:
    return f"ledger_{a.value.lower()}_{b.value.lower()}"


def _write_json(payload: dict, path: Path) -> None:
    atomic_write_text(path, json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def cmd_ingest(args: argparse.Namespace) -> int:
    db = SourceDb(args.db)
    schema = SchemaConfig.load(_require_file(Path(args.schema), "schema file"))
    out = Path(args.out)
    files = [_require_file(Path(p), "input file") for p in args.files]
    if db == SourceDb.WOS and len(files) > 1:
        per_index = [load_source_list([p], schema, db) for p in files]
        source = merge_wos_indices(per_index)
    else:
        source = load_source_list(files, schema, db)
    write_records_jsonl(source, _records_path(out, db))
    _write_json(source.provenance.as_dict(), out / f"ingest_{db.value.lower()}.json")
    print(f"ingest {db.value}: {source.provenance.raw_rows} rows -> "
          f"{len(source.records)} records")
    return 0


def cmd_preprocess(args: argparse.Namespace) -> int:
    db = SourceDb(args.db)
    out = Path(args.out)
    source = read_records_jsonl(
        _require_file(_records_path(out, db), "ingested record file"), db
    )
    keywords = None
    if args.non_journal_words:
        keywords = NonJournalKeywords.from_file(
            _require_file(Path(args.non_journal_words), "keyword file")
        )
    cleaned, rep = preprocess(
        source, keywords, keep_first_on_collision=args.keep_first_on_collision
    )
    write_records_jsonl(cleaned, _clean_path(out, db))
    _write_json(rep.as_dict(), out / f"preprocess_{db.value.lower()}.json")
    print(f"preprocess {db.value}: {rep.input_count} -> {rep.output_count} records")
    return 0


def cmd_match(args: argparse.Namespace) -> int:
    out = Path(args.out)
    lists = {
        db: read_records_jsonl(_require_file(_clean_path(out, db), "cleaned record file"), db)
        for db in SourceDb
    }

    def run_one(pair: tuple[SourceDb, SourceDb]):
        return run_pipeline(lists[pair[0]], lists[pair[1]], threshold=args.threshold)

    with ThreadPoolExecutor(max_workers=len(DB_PAIRS)) as pool:
        ledgers = list(pool.map(run_one, DB_PAIRS))
    for pair, ledger in zip(DB_PAIRS, ledgers):
        stem = _ledger_stem(*pair)
        write_ledger_csv(ledger, out / f"{stem}.csv")
        write_ledger_json(ledger, out / f"{stem}.json")
    totals = ", ".join(
        f"{a.value}x{b.value}={len(ledger.pairs)}"
        for (a, b), ledger in zip(DB_PAIRS, ledgers)
    )
    print(f"match: {totals}")
    return 0


def _load_ledger_pairs(out: Path):
    ledgers = {}
    for a, b in DB_PAIRS:
        csv_path = _require_file(out / f"{_ledger_stem(a, b)}.csv", "ledger file")
        ledgers[(a, b)] = read_ledger_csv(csv_path, (a, b))
    return ledgers


def cmd_venn(args: argparse.Namespace) -> int:
    out = Path(args.out)
    totals = {}
    for db in SourceDb:
        cleaned = read_records_jsonl(
            _require_file(_clean_path(out, db), "cleaned record file"), db
        )
        totals[db] = len(cleaned.records)
    ledgers = _load_ledger_pairs(out)
    ws = ledgers[(SourceDb.WOS, SourceDb.SCOPUS)]
    wd = ledgers[(SourceDb.WOS, SourceDb.DIMENSIONS)]
    sd = ledgers[(SourceDb.SCOPUS, SourceDb.DIMENSIONS)]
    triple, violations = triple_overlap(ws, wd, sd)
    summary = venn_regions(
        totals,
        {"WS": len(ws.pairs), "WD": len(wd.pairs), "SD": len(sd.pairs)},
        triple,
        transitivity_violations=violations,
    )
    coverage = coverage_percentages(summary)
    _write_json(summary.as_dict(), out / "venn.json")
    report_mod.emit_table_csv(
        [
            {
                "description": row.description,
                "numerator": row.numerator,
                "denominator": row.denominator,
                "percent": f"{row.percent:.2f}",
            }
            for row in coverage.rows
        ],
        out / "coverage.csv",
    )
    report_mod.emit_venn_svg(summary, out / "venn.svg")
    print(f"venn: triple={triple}, violations={violations}, regions={summary.regions}")
    return 0


def cmd_indicators(args: argparse.Namespace) -> int:
    out = Path(args.out)
    series_set = indicators_mod.load_country_series(
        _require_file(Path(args.counts), "country counts file")
    )
    world = indicators_mod.load_world_totals(
        _require_file(Path(args.world_totals), "world totals file")
    )
    rows = indicators_mod.build_indicator_table(
        series_set, world, cagr_intervals=args.cagr_intervals
    )
    indicators_mod.write_indicator_csv(rows, out / "indicators.csv")
    indicators_mod.write_series_csv(series_set, rows, out / "country_series.csv")
    _write_json({"rows": [r.as_dict() for r in rows]}, out / "indicators.json")
    wos_rows = [r for r in rows if r.db == SourceDb.WOS]
    countries = [r.country for r in sorted(wos_rows, key=lambda r: (r.rank, r.country))]
    if not countries:
        countries = sorted({r.country for r in rows})
    by_key = {(r.country, r.db): r.output for r in rows}
    series = [
        (db.value, [float(by_key.get((c, db), 0)) for c in countries])
        for db in indicators_mod.DB_ORDER
    ]
    report_mod.emit_bars(countries, series, out / "output_bars.svg",
                         title="Research output by database")
    report_mod.emit_bars(countries, series, out / "output_bars.csv", fmt="CSV")
    print(f"indicators: {len(rows)} rows for {len(countries)} countries")
    return 0


def cmd_subjects(args: argparse.Namespace) -> int:
    out = Path(args.out)
    counts = subjects_mod.load_subject_counts(
        _require_file(Path(args.counts), "subject counts file")
    )
    subject_map = (
        subjects_mod.SubjectMap.load(_require_file(Path(args.subject_map), "subject map"))
        if args.subject_map
        else subjects_mod.default_subject_map()
    )
    distributions = [
        subjects_mod.subject_distribution(
            db, counts[db], subject_map, include_unmapped=args.include_unmapped
        )
        for db in SourceDb
        if db in counts
    ]
    subjects_mod.write_distribution_csv(distributions, out / "subject_distribution.csv")
    _write_json(
        {"distributions": [d.as_dict() for d in distributions]}, out / "distributions.json"
    )
    if distributions:
        areas = list(distributions[0].percents)
        labels = [d.db.value for d in distributions]
        series = [
            (area.value, [d.percents[area] for d in distributions]) for area in areas
        ]
        report_mod.emit_bars(labels, series, out / "subject_bars.svg", stacked=True,
                             title="Subject area shares")
        report_mod.emit_bars(labels, series, out / "subject_bars.csv", fmt="CSV")
    print(f"subjects: {len(distributions)} database distributions")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    out = Path(args.out)
    preprocess_reports = {}
    for db in SourceDb:
        path = out / f"preprocess_{db.value.lower()}.json"
        if path.is_file():
            preprocess_reports[db.value] = _read_json(path)
    ledgers = {}
    for a, b in DB_PAIRS:
        path = out / f"{_ledger_stem(a, b)}.json"
        if path.is_file():
            ledgers[f"{a.value}_{b.value}"] = _read_json(path)
    venn = None
    coverage_table: list = []
    venn_path = out / "venn.json"
    if venn_path.is_file():
        venn = _read_json(venn_path)
        from .overlap import VennSummary

        coverage_table = coverage_percentages(VennSummary.from_dict(venn)).as_dicts()
    indicator_rows: list = []
    indicators_path = out / "indicators.json"
    if indicators_path.is_file():
        indicator_rows = _read_json(indicators_path)["rows"]
    distributions: list = []
    distributions_path = out / "distributions.json"
    if distributions_path.is_file():
        distributions = _read_json(distributions_path)["distributions"]
    summary = report_mod.build_summary(
        preprocess_reports=preprocess_reports,
        ledgers=ledgers,
        venn=venn,
        coverage_table=coverage_table,
        indicators=indicator_rows,
        distributions=distributions,
    )
    report_mod.emit_summary_json(summary, out / "summary.json")
    print(f"report: summary.json with {len(ledgers)} ledgers, "
          f"{len(indicator_rows)} indicator rows")
    return 0


@dataclass
class RunConfig:
    """Everything a full run needs, resolved relative to the config file."""

    out: Path
    sources: dict[SourceDb, tuple[Path, list[Path]]]
    threshold: float = 0.9
    non_journal_words: Path | None = None
    keep_first_on_collision: bool = False
    world_totals: Path | None = None
    country_counts: Path | None = None
    subject_counts: Path | None = None
    subject_map: Path | None = None
    cagr_intervals: bool = False
    include_unmapped: bool = False
    referenced: list[Path] = field(default_factory=list)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        path = Path(path)
        base = path.parent
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc

        def resolve(value: str | None) -> Path | None:
            if value is None:
                return None
            candidate = Path(value)
            return candidate if candidate.is_absolute() else base / candidate

        sources: dict[SourceDb, tuple[Path, list[Path]]] = {}
        for db_name, spec in payload.get("sources", {}).items():
            try:
                db = SourceDb(db_name)
            except ValueError as exc:
                raise ConfigError(f"{path}: unknown db {db_name!r} in sources") from exc
            schema = resolve(spec.get("schema"))
            files = [resolve(f) for f in spec.get("files", [])]
            if schema is None or not files:
                raise ConfigError(f"{path}: source {db_name} needs a schema and files")
            sources[db] = (schema, files)
        for db in SourceDb:
            if db not in sources:
                raise ConfigError(f"{path}: sources must cover {db.value}")
        threshold = float(payload.get("threshold", 0.9))
        if not 0.0 < threshold <= 1.0:
            raise ConfigError(f"{path}: threshold must be in (0, 1], got {threshold}")
        config = cls(
            out=resolve(payload.get("out", "out")),
            sources=sources,
            threshold=threshold,
            non_journal_words=resolve(payload.get("non_journal_words")),
            keep_first_on_collision=bool(payload.get("keep_first_on_collision", False)),
            world_totals=resolve(payload.get("world_totals")),
            country_counts=resolve(payload.get("country_counts")),
            subject_counts=resolve(payload.get("subject_counts")),
            subject_map=resolve(payload.get("subject_map")),
            cagr_intervals=bool(payload.get("cagr_intervals", False)),
            include_unmapped=bool(payload.get("include_unmapped", False)),
        )
        for schema, files in sources.values():
            config.referenced.append(schema)
            config.referenced.extend(files)
        for extra in (config.non_journal_words, config.world_totals,
                      config.country_counts, config.subject_counts, config.subject_map):
            if extra is not None:
                config.referenced.append(extra)
        return config

    def check_files(self) -> None:
        for ref in self.referenced:
            if not ref.is_file():
                raise ConfigError(f"configured file not found: {ref}")


def cmd_run(args: argparse.Namespace) -> int:
    config = RunConfig.load(args.config)
    if args.out:
        config.out = Path(args.out)
    config.check_files()
    out = config.out
    ns = argparse.Namespace
    for db in SourceDb:
        schema, files = config.sources[db]
        cmd_ingest(ns(db=db.value, schema=str(schema), out=str(out),
                      files=[str(f) for f in files]))
        cmd_preprocess(ns(
            db=db.value, out=str(out),
            non_journal_words=str(config.non_journal_words)
            if config.non_journal_words else None,
            keep_first_on_collision=config.keep_first_on_collision,
        ))
    cmd_match(ns(out=str(out), threshold=config.threshold))
    cmd_venn(ns(out=str(out)))
    if config.country_counts and config.world_totals:
        cmd_indicators(ns(out=str(out), counts=str(config.country_counts),
                          world_totals=str(config.world_totals),
                          cagr_intervals=config.cagr_intervals))
    if config.subject_counts:
        cmd_subjects(ns(
            out=str(out), counts=str(config.subject_counts),
            subject_map=str(config.subject_map) if config.subject_map else None,
            include_unmapped=config.include_unmapped,
        ))
    cmd_report(ns(out=str(out)))
    print(f"run: artifacts in {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="journalscope",
        description="Compare journal coverage across Web of Science, Scopus and Dimensions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse master list CSVs into canonical records")
    p.add_argument("--db", required=True, choices=[db.value for db in SourceDb])
    p.add_argument("--schema", required=True, help="schema JSON for this source")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("files", nargs="+", help="master list CSV file(s)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("preprocess", help="clean an ingested list")
    p.add_argument("--db", required=True, choices=[db.value for db in SourceDb])
    p.add_argument("--out", required=True)
    p.add_argument("--non-journal-words", default=None,
                   help="file with one lowercase keyword per line")
    p.add_argument("--keep-first-on-collision", action="store_true",
                   help="keep the first record of an identifier collision")
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("match", help="run the staged matcher on all three pairs")
    p.add_argument("--out", required=True)
    p.add_argument("--threshold", type=float, default=0.9,
                   help="fuzzy title similarity threshold (default 0.9)")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("venn", help="overlap counts, regions and coverage shares")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_venn)

    p = sub.add_parser("indicators", help="country output, rank, share and growth")
    p.add_argument("--out", required=True)
    p.add_argument("--counts", required=True, help="CSV: country,db,year,count")
    p.add_argument("--world-totals", required=True, help="JSON with per-db world output")
    p.add_argument("--cagr-intervals", action="store_true",
                   help="compound over N-1 intervals instead of N observations")
    p.set_defaults(func=cmd_indicators)

    p = sub.add_parser("subjects", help="major subject area distributions")
    p.add_argument("--out", required=True)
    p.add_argument("--counts", required=True, help="CSV: db,category,count")
    p.add_argument("--subject-map", default=None, help="CSV: db,category,major_area")
    p.add_argument("--include-unmapped", action="store_true",
                   help="count unmapped categories in the percentage base")
    p.set_defaults(func=cmd_subjects)

    p = sub.add_parser("report", help="aggregate all artifacts into summary.json")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("run", help="chain ingest through report from a config file")
    p.add_argument("--config", required=True, help="run configuration JSON")
    p.add_argument("--out", default=None, help="override the configured output directory")
    p.set_defaults(func=cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        _configure_logging()
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataConsistencyError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
