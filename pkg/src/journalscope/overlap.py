"""Coverage overlap arithmetic: pairwise counts, the three-way overlap
and the seven Venn regions, plus every percentage the coverage report
prints.

The three-way count is anchored on Web of Science: a journal counts as
covered by all three databases when its WoS record is matched both to a
Scopus record and to a Dimensions record. When those two partners are
not themselves matched to each other the triangle is broken; that is
reported as a transitivity violation but still counted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError, DataConsistencyError
from .ingest import SourceDb
from .matching import MatchLedger
from .rounding import percent

REGION_NAMES = ("w_only", "s_only", "d_only", "ws_only", "wd_only", "sd_only", "wsd")


@dataclass
class VennSummary:
    """Totals, pairwise overlaps, triple overlap and the derived regions."""

    totals: dict[SourceDb, int]
    pairwise: dict[str, int]
    triple: int
    regions: dict[str, int]
    transitivity_violations: int = 0

    def as_dict(self) -> dict:
        return {
            "totals": {db.value: self.totals[db] for db in SourceDb},
            "pairwise": dict(self.pairwise),
            "triple": self.triple,
            "regions": dict(self.regions),
            "transitivity_violations": self.transitivity_violations,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VennSummary":
        return cls(
            totals={SourceDb(k): v for k, v in data["totals"].items()},
            pairwise=dict(data["pairwise"]),
            triple=data["triple"],
            regions=dict(data["regions"]),
            transitivity_violations=data.get("transitivity_violations", 0),
        )


@dataclass
class CoverageRow:
    description: str
    numerator: int
    denominator: int
    percent: float

    def as_dict(self) -> dict:
        return {
            "description": self.description,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "percent": self.percent,
        }


@dataclass
class CoverageTable:
    rows: list[CoverageRow]

    def as_dicts(self) -> list[dict]:
        return [row.as_dict() for row in self.rows]


def pairwise_overlap(ledger: MatchLedger) -> int:
    """Number of journals matched between the two databases of a ledger."""
    return len(ledger.pairs)


def triple_overlap(
    ws: MatchLedger, wd: MatchLedger, sd: MatchLedger
) -> tuple[int, int]:
    """WoS-anchored three-way overlap and broken-triangle count."""
    expected = {
        "ws": (SourceDb.WOS, SourceDb.SCOPUS),
        "wd": (SourceDb.WOS, SourceDb.DIMENSIONS),
        "sd": (SourceDb.SCOPUS, SourceDb.DIMENSIONS),
    }
    for name, ledger in (("ws", ws), ("wd", wd), ("sd", sd)):
        if ledger.pair != expected[name]:
            raise ConfigError(
                f"{name} ledger covers {ledger.pair[0].value} x {ledger.pair[1].value}, "
                f"expected {expected[name][0].value} x {expected[name][1].value}"
            )
    scopus_partner = {m.a_id: m.b_id for m in ws.pairs}
    dimensions_partner = {m.a_id: m.b_id for m in wd.pairs}
    sd_pairs = {(m.a_id, m.b_id) for m in sd.pairs}
    triple = 0
    violations = 0
    for wos_id, s_id in scopus_partner.items():
        d_id = dimensions_partner.get(wos_id)
        if d_id is None:
            continue
        triple += 1
        if (s_id, d_id) not in sd_pairs:
            violations += 1
    return triple, violations


def venn_regions(
    totals: dict[SourceDb, int],
    pairwise: dict[str, int],
    triple: int,
    transitivity_violations: int = 0,
) -> VennSummary:
    """Inclusion-exclusion over the three lists; every region must be >= 0."""
    for key in ("WS", "WD", "SD"):
        if key not in pairwise:
            raise ConfigError(f"pairwise overlaps must include {key!r}")
    w, s, d = (totals[db] for db in (SourceDb.WOS, SourceDb.SCOPUS, SourceDb.DIMENSIONS))
    ws, wd, sd = pairwise["WS"], pairwise["WD"], pairwise["SD"]
    regions = {
        "w_only": w - ws - wd + triple,
        "s_only": s - ws - sd + triple,
        "d_only": d - wd - sd + triple,
        "ws_only": ws - triple,
        "wd_only": wd - triple,
        "sd_only": sd - triple,
        "wsd": triple,
    }
    for name in REGION_NAMES:
        if regions[name] < 0:
            raise DataConsistencyError(
                f"Venn region {name} is negative ({regions[name]}); "
                "overlap counts contradict the list totals"
            )
    summary = VennSummary(
        totals=dict(totals),
        pairwise={"WS": ws, "WD": wd, "SD": sd},
        triple=triple,
        regions=regions,
        transitivity_violations=transitivity_violations,
    )
    # Region sums must reconstruct each total exactly.
    assert regions["w_only"] + regions["ws_only"] + regions["wd_only"] + triple == w
    assert regions["s_only"] + regions["ws_only"] + regions["sd_only"] + triple == s
    assert regions["d_only"] + regions["wd_only"] + regions["sd_only"] + triple == d
    return summary


_DB_SHORT = {SourceDb.WOS: "W", SourceDb.SCOPUS: "S", SourceDb.DIMENSIONS: "D"}
_UNIQUE_REGION = {SourceDb.WOS: "w_only", SourceDb.SCOPUS: "s_only", SourceDb.DIMENSIONS: "d_only"}


def _pairwise_key(a: SourceDb, b: SourceDb) -> str:
    order = [SourceDb.WOS, SourceDb.SCOPUS, SourceDb.DIMENSIONS]
    first, second = sorted((a, b), key=order.index)
    return _DB_SHORT[first] + _DB_SHORT[second]


def coverage_percentages(summary: VennSummary) -> CoverageTable:
    """All coverage shares: overlap and non-overlap per database pair and
    side, unique journals, and the triple overlap against each total."""
    rows: list[CoverageRow] = []
    databases = [SourceDb.WOS, SourceDb.SCOPUS, SourceDb.DIMENSIONS]
    for db in databases:
        total = summary.totals[db]
        if total <= 0:
            raise DataConsistencyError(f"total for {db.value} must be positive")
        for other in databases:
            if other == db:
                continue
            overlap = summary.pairwise[_pairwise_key(db, other)]
            rows.append(CoverageRow(
                f"{db.value} overlap with {other.value}",
                overlap, total, percent(overlap, total),
            ))
            rows.append(CoverageRow(
                f"{db.value} non-overlap with {other.value}",
                total - overlap, total, percent(total - overlap, total),
            ))
        unique = summary.regions[_UNIQUE_REGION[db]]
        rows.append(CoverageRow(
            f"{db.value} unique journals", unique, total, percent(unique, total),
        ))
        rows.append(CoverageRow(
            f"{db.value} covered by all three databases",
            summary.triple, total, percent(summary.triple, total),
        ))
    return CoverageTable(rows=rows)
