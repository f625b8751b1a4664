"""End-to-end extraction over a corpus, optionally parallel over documents.

Workers hold read-only references to the name index and a blacklist
snapshot (shared copy-on-write through fork), emit candidates through an
order-insensitive sink, and their funnel counters merge associatively.
Output is canonicalized by sorting on candidate_id, so a run's candidate
file is byte-identical regardless of worker count.
"""

from __future__ import annotations

import json
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, Iterator

from .blacklist import Blacklist
from .corpus import Document
from .extraction import Candidate, RunStats, extract_from_documents
from .fileio import dump_json_line, open_text
from .gazetteer import NameIndex
from .summary import CorpusSummary

_CHUNK_DOCS = 200

# Read-only extraction context inherited by forked workers.
_shared: tuple | None = None


def _process_chunk(docs: list[Document]) -> tuple[list[Candidate], RunStats, CorpusSummary]:
    index, blacklist, abbreviations, ignore_case, max_modifier_tokens = _shared
    stats = RunStats()
    summary = CorpusSummary()
    for doc in docs:
        summary.add(doc)
    candidates = list(
        extract_from_documents(
            docs,
            index,
            blacklist,
            abbreviations,
            article_ignore_case=ignore_case,
            max_modifier_tokens=max_modifier_tokens,
            stats=stats,
        )
    )
    return candidates, stats, summary


def _chunked(items: Iterable[Document], size: int) -> Iterator[list[Document]]:
    chunk: list[Document] = []
    for item in items:
        chunk.append(item)
        if len(chunk) >= size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def run_extraction(
    documents: Iterable[Document],
    index: NameIndex,
    blacklist: Blacklist,
    abbreviations: frozenset[str],
    *,
    workers: int = 1,
    article_ignore_case: bool = False,
    max_modifier_tokens: int = 6,
) -> tuple[list[Candidate], RunStats, CorpusSummary]:
    """Extract candidates from all documents; deterministic output order."""
    global _shared
    _shared = (index, blacklist, abbreviations, article_ignore_case, max_modifier_tokens)
    stats = RunStats()
    summary = CorpusSummary()
    candidates: list[Candidate] = []
    try:
        if workers <= 1:
            for chunk in _chunked(documents, _CHUNK_DOCS):
                part, part_stats, part_summary = _process_chunk(chunk)
                candidates.extend(part)
                stats.merge(part_stats)
                summary.merge(part_summary)
        else:
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
                for part, part_stats, part_summary in pool.map(
                    _process_chunk, _chunked(documents, _CHUNK_DOCS)
                ):
                    candidates.extend(part)
                    stats.merge(part_stats)
                    summary.merge(part_summary)
    finally:
        _shared = None
    candidates.sort(key=lambda c: c.candidate_id)
    return candidates, stats, summary


def write_candidates(candidates: Iterable[Candidate], path: str | Path) -> int:
    n = 0
    with open_text(path, "wt") as fh:
        for c in candidates:
            fh.write(dump_json_line(c.to_json_dict()) + "\n")
            n += 1
    return n


def read_candidates(path: str | Path) -> list[Candidate]:
    out = []
    with open_text(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(Candidate.from_json_dict(json.loads(line)))
    return out


def write_report(stats: RunStats, summary: CorpusSummary, path: str | Path) -> None:
    """One JSON report per run: funnel counters plus corpus article counts."""
    payload = {"run_stats": stats.to_json_dict(), "corpus_summary": summary.to_json_dict()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, ensure_ascii=False, indent=2)
        fh.write("\n")


def read_report(path: str | Path) -> tuple[dict | None, CorpusSummary | None]:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    run_stats = payload.get("run_stats")
    summary = None
    if "corpus_summary" in payload:
        summary = CorpusSummary.from_json_dict(payload["corpus_summary"])
    elif "sections" in payload:
        # A bare summary file is accepted too.
        summary = CorpusSummary.from_json_dict(payload)
    return run_stats, summary


TSV_COLUMNS = (
    "candidate_id",
    "year",
    "section",
    "author",
    "source_surface",
    "entity_ids",
    "modifier",
    "sentence",
)


def _tsv_escape(value: str) -> str:
    return value.replace("\t", " ").replace("\n", " ").replace("\r", " ")


def candidates_tsv(candidates: Iterable[Candidate]) -> str:
    """Render candidates as TSV with the canonical column set."""
    lines = ["\t".join(TSV_COLUMNS)]
    for c in candidates:
        lines.append(
            "\t".join(
                (
                    c.candidate_id,
                    "" if c.year is None else str(c.year),
                    _tsv_escape(c.section),
                    _tsv_escape(c.author),
                    _tsv_escape(c.source_surface),
                    "|".join(c.entity_ids),
                    _tsv_escape(c.modifier),
                    _tsv_escape(c.sentence),
                )
            )
        )
    return "\n".join(lines) + "\n"
