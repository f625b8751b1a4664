"""Frequency analytics over curated candidates.

Ranked tables (sources, modifiers, countries, sections, authors) are
computed over deduplicated true-labeled candidates; the per-year series
uses all non-suppressed candidates so the yearly precision is visible.
Source tables aggregate by entity, not surface string, so a nickname
and the full name land in one row.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .blacklist import Blacklist
from .curation import VERDICT_TRUE, LabelStore, dedup, is_suppressed
from .extraction import Candidate


@dataclass(frozen=True)
class FreqTable:
    dimension: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


@dataclass(frozen=True)
class YearRow:
    year: int
    n_candidates: int
    n_true_va: int
    precision_pct: float | None
    n_articles: int
    cand_per_thousand: float
    true_per_thousand: float


@dataclass(frozen=True)
class YearSeries:
    rows: tuple[YearRow, ...]
    n_unknown_year_candidates: int = 0


def _ranked(counter: Counter, total: int) -> tuple[tuple, ...]:
    # Counts descending, ties lexicographic by key; share over the full
    # population so truncating a table keeps shares honest.
    rows = sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))
    return tuple(
        (key, count, 100.0 * count / total if total else 0.0) for key, count in rows
    )


def active_candidates(
    candidates: Iterable[Candidate], blacklist: Blacklist
) -> list[Candidate]:
    """Candidates not suppressed by the blacklist."""
    return [c for c in candidates if not is_suppressed(c, blacklist)]


def unique_true_candidates(
    candidates: Iterable[Candidate], store: LabelStore, blacklist: Blacklist
) -> list[Candidate]:
    """Deduplicated true-labeled, non-suppressed candidates (table input)."""
    active = active_candidates(candidates, blacklist)
    return [c for c in dedup(active) if store.verdict_of(c.candidate_id) == VERDICT_TRUE]


def freq_sources(unique_true: Sequence[Candidate], top: int | None = None) -> FreqTable:
    """Sources ranked by entity canonical label, aliases aggregated."""
    counter: Counter = Counter()
    for c in unique_true:
        for label in sorted(set(c.entity_labels or c.entity_ids)):
            counter[label] += 1
    rows = _ranked(counter, len(unique_true))
    if top is not None:
        rows = rows[:top]
    return FreqTable("source", ("source", "count", "share_pct"), rows)


def freq_modifiers(unique_true: Sequence[Candidate], top: int | None = None) -> FreqTable:
    """Modifier strings counted verbatim (case preserved)."""
    counter = Counter(c.modifier for c in unique_true if c.modifier)
    rows = _ranked(counter, len(unique_true))
    if top is not None:
        rows = rows[:top]
    return FreqTable("modifier", ("modifier", "count", "share_pct"), rows)


def freq_modifier_countries(
    unique_true: Sequence[Candidate],
    country_list: Iterable[str],
    top: int | None = None,
) -> FreqTable:
    """Keep only modifiers exactly equal to a country name."""
    countries = set(country_list)
    counter = Counter(c.modifier for c in unique_true if c.modifier in countries)
    rows = _ranked(counter, len(unique_true))
    if top is not None:
        rows = rows[:top]
    return FreqTable("country", ("country", "count", "share_pct"), rows)


def _joined_table(
    dimension: str,
    key_of,
    unique_true: Sequence[Candidate],
    article_counts: Mapping[str, int],
) -> FreqTable:
    va_counter = Counter(key_of(c) for c in unique_true)
    n_va = len(unique_true)
    n_articles = sum(article_counts.values())
    keys = sorted(va_counter, key=lambda k: (-va_counter[k], k))
    rows = tuple(
        (
            key,
            va_counter[key],
            100.0 * va_counter[key] / n_va if n_va else 0.0,
            article_counts.get(key, 0),
            100.0 * article_counts.get(key, 0) / n_articles if n_articles else 0.0,
        )
        for key in keys
    )
    return FreqTable(
        dimension,
        (dimension, "va_count", "va_share_pct", "article_count", "article_share_pct"),
        rows,
    )


def by_section(
    unique_true: Sequence[Candidate], section_article_counts: Mapping[str, int]
) -> FreqTable:
    """VA counts per newspaper section joined with corpus article counts.

    The empty section string is a legitimate row: articles without a
    category are counted, not dropped.
    """
    return _joined_table("section", lambda c: c.section, unique_true, section_article_counts)


def by_author(
    unique_true: Sequence[Candidate], author_article_counts: Mapping[str, int]
) -> FreqTable:
    """VA counts per author; the empty author is a legitimate row."""
    return _joined_table("author", lambda c: c.author, unique_true, author_article_counts)


def per_year(
    candidates: Iterable[Candidate],
    store: LabelStore,
    year_article_counts: Mapping[int, int],
    blacklist: Blacklist,
) -> YearSeries:
    """Per-year candidate/true counts, precision, and per-thousand rates.

    Operates on all non-suppressed candidates (not deduplicated), so the
    series mirrors the extraction funnel. Years with zero articles are
    excluded; unknown-year candidates are tallied separately.
    """
    cand_by_year: Counter = Counter()
    true_by_year: Counter = Counter()
    unknown = 0
    for c in candidates:
        if is_suppressed(c, blacklist):
            continue
        if c.year is None:
            unknown += 1
            continue
        cand_by_year[c.year] += 1
        if store.verdict_of(c.candidate_id) == VERDICT_TRUE:
            true_by_year[c.year] += 1
    years = sorted(set(year_article_counts) | set(cand_by_year))
    rows = []
    for year in years:
        articles = year_article_counts.get(year, 0)
        if articles <= 0:
            continue
        n_cand = cand_by_year.get(year, 0)
        n_true = true_by_year.get(year, 0)
        rows.append(
            YearRow(
                year=year,
                n_candidates=n_cand,
                n_true_va=n_true,
                precision_pct=100.0 * n_true / n_cand if n_cand else None,
                n_articles=articles,
                cand_per_thousand=1000.0 * n_cand / articles,
                true_per_thousand=1000.0 * n_true / articles,
            )
        )
    return YearSeries(rows=tuple(rows), n_unknown_year_candidates=unknown)


def default_countries() -> frozenset[str]:
    text = resources.files("vaminer.data").joinpath("countries.txt").read_text("utf-8")
    return _parse_list(text.splitlines())


def load_countries(path: str | Path) -> frozenset[str]:
    with open(path, encoding="utf-8") as fh:
        return _parse_list(fh)


def _parse_list(lines) -> frozenset[str]:
    out = set()
    for line in lines:
        name = line.split("#", 1)[0].strip()
        if name:
            out.add(name)
    return frozenset(out)


def _format_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.1f}"
    if value is None:
        return "-"
    return str(value)


def render_text(table: FreqTable, max_rows: int | None = None) -> str:
    """Aligned plain-text rendering, percentages to one decimal."""
    rows = table.rows[:max_rows] if max_rows is not None else table.rows
    cells = [list(table.columns)] + [
        [_format_cell(v) for v in row] for row in rows
    ]
    widths = [max(len(r[i]) for r in cells) for i in range(len(table.columns))]
    lines = []
    for r in cells:
        lines.append("  ".join(val.rjust(w) if i else val.ljust(w)
                               for i, (val, w) in enumerate(zip(r, widths))))
    return "\n".join(lines)


def render_tsv(table: FreqTable) -> str:
    lines = ["\t".join(table.columns)]
    for row in table.rows:
        lines.append("\t".join(_format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def series_csv(series: YearSeries) -> str:
    lines = ["year,candidates,true_va,precision_pct,cand_per_thousand,true_per_thousand"]
    for row in series.rows:
        precision = f"{row.precision_pct:.1f}" if row.precision_pct is not None else ""
        lines.append(
            f"{row.year},{row.n_candidates},{row.n_true_va},{precision},"
            f"{row.cand_per_thousand:.3f},{row.true_per_thousand:.3f}"
        )
    return "\n".join(lines) + "\n"
