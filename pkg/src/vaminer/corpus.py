"""Corpus ingestion and deterministic sentence segmentation.

The canonical corpus format is line-delimited JSON, one article per
line with the fields doc_id, date, section, author, headline, body.
Licensed corpora ship in publisher-specific XML; converting them to
this neutral format is left to small external adapters.

Segmentation is rule based so runs are reproducible with no model
dependency: split after a sentence terminator (. ! ?), optionally
followed by closing quotes or brackets, when the next non-space
character starts a new sentence (uppercase letter or opening quote),
except after known abbreviations and single-letter initials.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator

from .fileio import open_text

# Terminator plus any run of closing quotes/brackets attached to it.
_BOUNDARY_RE = re.compile(r"[.!?][\"'\)\]’”]*")
_OPENERS = "\"'“‘([" + "«"

_YEAR_RE = re.compile(r"^(\d{4})")


@dataclass(frozen=True)
class Document:
    doc_id: str
    date: str = ""
    section: str = ""
    author: str = ""
    headline: str = ""
    body: str = ""

    @property
    def year(self) -> int | None:
        """Calendar year parsed from the date field; None when unparseable."""
        m = _YEAR_RE.match(self.date.strip())
        return int(m.group(1)) if m else None


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    index: int
    text: str
    start: int
    end: int


@dataclass
class CorpusReadStats:
    n_documents: int = 0
    n_skipped_malformed: int = 0


def read_corpus(
    path: str | Path,
    stats: CorpusReadStats | None = None,
) -> Iterator[Document]:
    """Yield documents from a JSONL corpus file (gzip transparent).

    Missing optional fields default to empty strings; malformed lines
    are skipped and counted. Documents with empty bodies are yielded
    (they simply segment into zero sentences).
    """
    if stats is None:
        stats = CorpusReadStats()
    with open_text(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                doc = Document(
                    doc_id=str(obj["doc_id"]),
                    date=str(obj.get("date", "") or ""),
                    section=str(obj.get("section", "") or ""),
                    author=str(obj.get("author", "") or ""),
                    headline=str(obj.get("headline", "") or ""),
                    body=str(obj.get("body", "") or ""),
                )
            except (json.JSONDecodeError, KeyError, TypeError):
                stats.n_skipped_malformed += 1
                continue
            stats.n_documents += 1
            yield doc


def default_abbreviations() -> frozenset[str]:
    """The abbreviation list shipped with the package."""
    text = resources.files("vaminer.data").joinpath("abbreviations.txt").read_text("utf-8")
    return _parse_abbreviations(text.splitlines())


def load_abbreviations(path: str | Path) -> frozenset[str]:
    """Load an abbreviation list file: one token per line, '#' comments."""
    with open(path, encoding="utf-8") as fh:
        return _parse_abbreviations(fh)


def _parse_abbreviations(lines) -> frozenset[str]:
    out = set()
    for line in lines:
        token = line.split("#", 1)[0].strip()
        if token:
            out.add(token)
    return frozenset(out)


def _is_initial(token: str) -> bool:
    # Single-letter initials like the "P." and "T." in "P. T. Barnum".
    return len(token) == 2 and token[0].isalpha() and token[1] == "."


def _token_before(text: str, dot_pos: int) -> str:
    """The whitespace-delimited token ending with the dot at ``dot_pos``."""
    start = dot_pos
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    token = text[start : dot_pos + 1]
    # Drop leading punctuation such as an opening bracket or quote.
    return token.lstrip("\"'“‘([{")


def segment(doc: Document, abbreviations: frozenset[str]) -> list[Sentence]:
    """Split a document body into sentences with exact character offsets.

    Sentences are trimmed spans of the body; everything between
    consecutive spans is pure whitespace, so the original body is
    reconstructable from the spans plus the gaps.
    """
    body = doc.body
    n = len(body)
    sentences: list[Sentence] = []

    def emit(start: int, end: int) -> None:
        while end > start and body[end - 1].isspace():
            end -= 1
        if end > start:
            sentences.append(
                Sentence(
                    doc_id=doc.doc_id,
                    index=len(sentences),
                    text=body[start:end],
                    start=start,
                    end=end,
                )
            )

    start = 0
    while start < n and body[start].isspace():
        start += 1

    for m in _BOUNDARY_RE.finditer(body):
        t_end = m.end()
        if m.start() < start:
            continue
        nxt = t_end
        while nxt < n and body[nxt].isspace():
            nxt += 1
        if nxt == t_end and nxt < n:
            # No whitespace after the terminator (decimal point, "U.S.A").
            continue
        if nxt < n and not (body[nxt].isupper() or body[nxt] in _OPENERS):
            continue
        if m.group(0)[0] == ".":
            token = _token_before(body, m.start())
            if token in abbreviations or _is_initial(token):
                continue
        emit(start, t_end)
        start = nxt
        if start >= n:
            break

    if start < n:
        emit(start, n)
    return sentences
