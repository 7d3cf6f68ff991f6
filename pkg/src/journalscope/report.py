"""Machine-readable summaries and figure-grade SVG output.

The emitters write SVG primitives directly and avoid anything
non-deterministic (timestamps, dict ordering, float repr drift), so the
same input always produces the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from xml.sax.saxutils import escape

from .errors import ConfigError
from .fileio import atomic_write_text
from .ingest import SourceDb
from .overlap import VennSummary

logger = logging.getLogger(__name__)

SUMMARY_SCHEMA_VERSION = 1


class RenderKind(str, Enum):
    VENN = "VENN"
    BARS = "BARS"
    TABLE = "TABLE"


@dataclass
class RenderSpec:
    """What to draw and where; the kind dictates the payload `render` expects."""

    kind: RenderKind
    title: str
    output_path: str

_SVG_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    'width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
)

_VENN_FILLS = ("#4477aa", "#ee6677", "#228833")
_BAR_FILLS = (
    "#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377", "#bbbbbb",
)


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _text(x: float, y: float, content: str, size: int = 14, anchor: str = "middle",
          extra: str = "") -> str:
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
        f'font-size="{size}" text-anchor="{anchor}"{extra}>{escape(content)}</text>\n'
    )


def emit_venn_svg(summary: VennSummary, path: str | Path) -> None:
    """Three-circle coverage diagram with counts in all seven regions."""
    width, height = 800, 600
    radius = 170
    centers = {
        SourceDb.WOS: (310.0, 250.0),
        SourceDb.SCOPUS: (490.0, 250.0),
        SourceDb.DIMENSIONS: (400.0, 400.0),
    }
    labels = {
        "w_only": (240.0, 210.0),
        "s_only": (560.0, 210.0),
        "d_only": (400.0, 480.0),
        "ws_only": (400.0, 200.0),
        "wd_only": (320.0, 350.0),
        "sd_only": (480.0, 350.0),
        "wsd": (400.0, 300.0),
    }
    parts = [_SVG_HEADER.format(w=width, h=height)]
    parts.append(_text(width / 2, 40, "Journal coverage overlap", size=20))
    for db, fill in zip((SourceDb.WOS, SourceDb.SCOPUS, SourceDb.DIMENSIONS), _VENN_FILLS):
        cx, cy = centers[db]
        parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{radius}" '
            f'fill="{fill}" fill-opacity="0.35" stroke="{fill}" stroke-width="2"/>\n'
        )
    for region, (x, y) in labels.items():
        parts.append(_text(x, y, f"{summary.regions[region]:,}"))
    legend_y = 530
    for db, fill in zip((SourceDb.WOS, SourceDb.SCOPUS, SourceDb.DIMENSIONS), _VENN_FILLS):
        parts.append(
            f'<rect x="40" y="{legend_y - 12}" width="14" height="14" fill="{fill}" '
            f'fill-opacity="0.6"/>\n'
        )
        parts.append(_text(62, legend_y, f"{db.value}: {summary.totals[db]:,}",
                           size=14, anchor="start"))
        legend_y += 22
    parts.append("</svg>\n")
    atomic_write_text(path, "".join(parts))


def emit_bars(
    group_labels: list[str],
    series: list[tuple[str, list[float]]],
    path: str | Path,
    fmt: str = "SVG",
    stacked: bool = False,
    title: str = "",
) -> None:
    """Grouped (or stacked) bar chart, or the same numbers as CSV.

    `series` holds (name, values) with one value per group label.
    """
    if not group_labels or not series:
        raise ConfigError("bar chart needs at least one group and one series")
    for name, values in series:
        if len(values) != len(group_labels):
            raise ConfigError(
                f"series {name!r} has {len(values)} values for {len(group_labels)} groups"
            )
        for value in values:
            if value < 0:
                raise ConfigError(f"series {name!r} has a negative value, cannot plot bars")
    fmt = fmt.upper()
    if fmt == "CSV":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["group"] + [name for name, _ in series])
        for position, label in enumerate(group_labels):
            writer.writerow([label] + [repr(values[position]) for _, values in series])
        atomic_write_text(path, buffer.getvalue())
        return
    if fmt != "SVG":
        raise ConfigError(f"unknown bar chart format {fmt!r}")

    width, height = 800, 600
    left, right, top, bottom = 70, 20, 60, 120
    plot_w, plot_h = width - left - right, height - top - bottom
    if stacked:
        peaks = [sum(values[i] for _, values in series) for i in range(len(group_labels))]
    else:
        peaks = [values[i] for _, values in series for i in range(len(group_labels))]
    peak = max(peaks) if peaks else 0.0
    scale = plot_h / peak if peak > 0 else 0.0

    parts = [_SVG_HEADER.format(w=width, h=height)]
    if title:
        parts.append(_text(width / 2, 30, title, size=18))
    parts.append(
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" y2="{top + plot_h}" '
        'stroke="#333333" stroke-width="1"/>\n'
    )
    parts.append(
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" '
        'stroke="#333333" stroke-width="1"/>\n'
    )
    parts.append(_text(left - 6, top + 5, f"{peak:g}", size=11, anchor="end"))
    parts.append(_text(left - 6, top + plot_h, "0", size=11, anchor="end"))

    group_w = plot_w / len(group_labels)
    for g, label in enumerate(group_labels):
        gx = left + g * group_w
        if stacked:
            bar_w = group_w * 0.6
            y_cursor = top + plot_h
            for (name, values), fill in zip(series, _BAR_FILLS * 8):
                bar_h = values[g] * scale
                y_cursor -= bar_h
                parts.append(
                    f'<rect x="{_fmt(gx + group_w * 0.2)}" y="{_fmt(y_cursor)}" '
                    f'width="{_fmt(bar_w)}" height="{_fmt(bar_h)}" fill="{fill}"/>\n'
                )
        else:
            bar_w = group_w * 0.8 / len(series)
            for s, ((name, values), fill) in enumerate(zip(series, _BAR_FILLS * 8)):
                bar_h = values[g] * scale
                x = gx + group_w * 0.1 + s * bar_w
                parts.append(
                    f'<rect x="{_fmt(x)}" y="{_fmt(top + plot_h - bar_h)}" '
                    f'width="{_fmt(bar_w)}" height="{_fmt(bar_h)}" fill="{fill}"/>\n'
                )
        parts.append(
            f'<text x="{_fmt(gx + group_w / 2)}" y="{top + plot_h + 14}" '
            f'font-family="sans-serif" font-size="11" text-anchor="end" '
            f'transform="rotate(-45 {_fmt(gx + group_w / 2)} {top + plot_h + 14})">'
            f"{escape(label)}</text>\n"
        )
    legend_y = height - 40
    legend_x = left
    for (name, _values), fill in zip(series, _BAR_FILLS * 8):
        parts.append(
            f'<rect x="{legend_x}" y="{legend_y - 11}" width="12" height="12" fill="{fill}"/>\n'
        )
        parts.append(_text(legend_x + 18, legend_y, name, size=12, anchor="start"))
        legend_x += 18 + 9 * len(name) + 30
    parts.append("</svg>\n")
    atomic_write_text(path, "".join(parts))


def emit_table_csv(rows: list[dict], path: str | Path) -> None:
    """Rows of identical dicts become a CSV with the keys as header."""
    if not rows:
        raise ConfigError("table needs at least one row")
    header = list(rows[0])
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if list(row) != header:
            raise ConfigError("table rows must share one set of columns")
        writer.writerow([row[column] for column in header])
    atomic_write_text(path, buffer.getvalue())


def render(spec: RenderSpec, payload) -> None:
    """Dispatch a render request to the matching emitter.

    VENN expects a VennSummary, BARS a (group_labels, series) tuple,
    TABLE a list of row dicts.
    """
    if spec.kind is RenderKind.VENN:
        emit_venn_svg(payload, spec.output_path)
    elif spec.kind is RenderKind.BARS:
        group_labels, series = payload
        emit_bars(group_labels, series, spec.output_path, title=spec.title)
    elif spec.kind is RenderKind.TABLE:
        emit_table_csv(payload, spec.output_path)
    else:
        raise ConfigError(f"unknown render kind {spec.kind!r}")


def build_summary(
    preprocess_reports: dict | None = None,
    ledgers: dict | None = None,
    venn: dict | None = None,
    coverage_table: list | None = None,
    indicators: list | None = None,
    distributions: list | None = None,
) -> dict:
    """Assemble the versioned summary document from already-serialized parts."""
    return {
        "schema_version": SUMMARY_SCHEMA_VERSION,
        "preprocess_reports": preprocess_reports or {},
        "ledgers": ledgers or {},
        "venn": venn,
        "coverage_table": coverage_table or [],
        "indicators": indicators or [],
        "distributions": distributions or [],
    }


def emit_summary_json(summary: dict, path: str | Path) -> None:
    atomic_write_text(path, json.dumps(summary, sort_keys=True, indent=2,
                                       ensure_ascii=False) + "\n")
