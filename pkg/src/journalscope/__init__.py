"""journalscope: journal-list comparison across scholarly databases.

The package ingests vendor master journal lists, cleans them, matches
them pairwise through a staged identifier/title pipeline, derives
coverage overlaps and Venn regions, and computes country-level output
indicators and subject-area distributions.
"""

from .errors import ConfigError, DataConsistencyError
from .indicators import (
    CountrySeries,
    IndicatorRow,
    build_indicator_table,
    compute_cagr,
    compute_global_share,
    rank_countries,
)
from .ingest import (
    JournalRecord,
    NormalizedIssn,
    SchemaConfig,
    SourceDb,
    SourceList,
    load_source_list,
    merge_wos_indices,
    normalize_issn,
    normalize_publisher,
    normalize_title,
)
from .matching import (
    MatchLedger,
    MatchPair,
    StageId,
    cosine_title_similarity,
    match_exact_title,
    match_fuzzy_title,
    match_on_key,
    partition,
    run_pipeline,
)
from .overlap import (
    CoverageTable,
    VennSummary,
    coverage_percentages,
    pairwise_overlap,
    triple_overlap,
    venn_regions,
)
from .preprocess import (
    NonJournalKeywords,
    PreprocessReport,
    drop_inconsistent_ids,
    drop_non_journal,
    drop_null_and_duplicate_ids,
    preprocess,
)
from .subjects import (
    MajorArea,
    SubjectDistribution,
    SubjectMap,
    map_category,
    subject_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DataConsistencyError",
    "CountrySeries",
    "IndicatorRow",
    "build_indicator_table",
    "compute_cagr",
    "compute_global_share",
    "rank_countries",
    "JournalRecord",
    "NormalizedIssn",
    "SchemaConfig",
    "SourceDb",
    "SourceList",
    "load_source_list",
    "merge_wos_indices",
    "normalize_issn",
    "normalize_publisher",
    "normalize_title",
    "MatchLedger",
    "MatchPair",
    "StageId",
    "cosine_title_similarity",
    "match_exact_title",
    "match_fuzzy_title",
    "match_on_key",
    "partition",
    "run_pipeline",
    "CoverageTable",
    "VennSummary",
    "coverage_percentages",
    "pairwise_overlap",
    "triple_overlap",
    "venn_regions",
    "NonJournalKeywords",
    "PreprocessReport",
    "drop_inconsistent_ids",
    "drop_non_journal",
    "drop_null_and_duplicate_ids",
    "preprocess",
    "MajorArea",
    "SubjectDistribution",
    "SubjectMap",
    "map_category",
    "subject_distribution",
]
