"""Candidate phrase scanner and gazetteer matching.

The target surface pattern is "the <inner> of" with one to five inner
tokens, where a token is a run of word characters plus dot, comma,
apostrophe, and hyphen (so names like "Robert Downey, Jr.",
"Shaquille O'Neal", or "Jean-Luc Godard" stay matchable). The scanner
reproduces, by hand, the semantics of the backtracking regex

    \\bthe\\s+([\\w.,'-]+\\s+){1,5}?of\\b

including its lazy inner repetition (the shortest inner span that
reaches "of" wins), leftmost scanning, and non-overlapping resumption
after each match. It is deliberately not built on a regex engine: the
scanning loop fuses with the gazetteer lookup at corpus scale, and the
regex engine stays available as an independent test oracle.

Two facts make the hand scanner tractable. Token characters, whitespace,
and everything else are disjoint classes, so the greedy token and
whitespace runs inside the pattern never need to backtrack: each inner
repetition is the maximal token run followed by the maximal whitespace
run. The only choice point left is the repetition count, which the lazy
quantifier resolves by trying 1, 2, ... 5 in order and accepting the
first count after which "of" (at a word boundary) follows.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .blacklist import Blacklist, normalize_surface
from .corpus import Document, Sentence
from .gazetteer import NameIndex

MAX_INNER_TOKENS = 5
DEFAULT_MAX_MODIFIER_TOKENS = 6

_TOKEN_PUNCT = ".,'-"
# Characters that end a modifier: sentence-internal punctuation, quotes,
# and closing brackets.
_MODIFIER_STOPPERS = ".,;:!?\"')]"

_ARTICLE_VARIANTS = (
    "the", "The", "tHe", "thE", "THe", "tHE", "ThE", "THE",
)


def _is_word_char(c: str) -> bool:
    # Mirrors the regex \w class for text patterns: alphanumerics plus "_".
    return c.isalnum() or c == "_"


def _is_token_char(c: str) -> bool:
    return c.isalnum() or c == "_" or c in _TOKEN_PUNCT


@dataclass(frozen=True)
class CandidatePhrase:
    """One "the ... of" match inside a sentence (offsets into its text)."""

    phrase_start: int
    phrase_end: int
    inner_start: int
    inner_end: int
    inner_text: str
    n_inner_tokens: int


def _find_article(text: str, pos: int, ignore_case: bool) -> int:
    if not ignore_case:
        return text.find("the", pos)
    best = -1
    for variant in _ARTICLE_VARIANTS:
        i = text.find(variant, pos)
        if i >= 0 and (best < 0 or i < best):
            best = i
    return best


def find_phrases(
    text: str,
    *,
    article_ignore_case: bool = False,
) -> list[CandidatePhrase]:
    """All pattern matches in ``text``, leftmost, lazy, non-overlapping.

    By default only the lowercase article matches, faithful to the
    canonical pattern; ``article_ignore_case`` additionally admits
    capitalized forms such as sentence-initial "The".
    """
    matches: list[CandidatePhrase] = []
    n = len(text)
    pos = 0
    while True:
        p = _find_article(text, pos, article_ignore_case)
        if p < 0:
            break
        pos = p + 1
        if p > 0 and _is_word_char(text[p - 1]):
            continue
        # Whitespace run after the article (there must be at least one).
        j = p + 3
        if j >= n or not text[j].isspace():
            continue
        while j < n and text[j].isspace():
            j += 1
        # Lazy repetition: grow the inner token list one (token,
        # whitespace) pair at a time, checking for "of" after each.
        r = j
        first_token_start = -1
        last_token_end = -1
        matched_end = -1
        n_tokens = 0
        while n_tokens < MAX_INNER_TOKENS:
            t0 = r
            t = r
            while t < n and _is_token_char(text[t]):
                t += 1
            if t == t0 or t >= n or not text[t].isspace():
                break
            s = t + 1
            while s < n and text[s].isspace():
                s += 1
            n_tokens += 1
            if first_token_start < 0:
                first_token_start = t0
            last_token_end = t
            r = s
            if (
                text.startswith("of", r)
                and (r + 2 == n or not _is_word_char(text[r + 2]))
            ):
                matched_end = r + 2
                break
        if matched_end < 0:
            continue
        matches.append(
            CandidatePhrase(
                phrase_start=p,
                phrase_end=matched_end,
                inner_start=first_token_start,
                inner_end=last_token_end,
                inner_text=text[first_token_start:last_token_end],
                n_inner_tokens=n_tokens,
            )
        )
        pos = matched_end
    return matches


def modifier_span(
    text: str,
    phrase: CandidatePhrase,
    max_tokens: int = DEFAULT_MAX_MODIFIER_TOKENS,
) -> tuple[int, int]:
    """Character span of the modifier following a phrase's final "of".

    The modifier is the token run immediately after "of", cut at the
    first stopper character (sentence punctuation, quotes, closing
    brackets) or after ``max_tokens`` tokens, whichever comes first.
    Casing and leading articles are preserved.
    """
    n = len(text)
    i = phrase.phrase_end
    while i < n and text[i].isspace():
        i += 1
    start = i
    end = i
    tokens = 0
    while i < n and tokens < max_tokens:
        if text[i] in _MODIFIER_STOPPERS:
            break
        # One token: up to whitespace or a stopper.
        t = i
        while t < n and not text[t].isspace() and text[t] not in _MODIFIER_STOPPERS:
            t += 1
        if t == i:
            break
        end = t
        tokens += 1
        i = t
        while i < n and text[i].isspace():
            i += 1
    return (start, end) if end > start else (start, start)


def extract_modifier(
    text: str,
    phrase: CandidatePhrase,
    max_tokens: int = DEFAULT_MAX_MODIFIER_TOKENS,
) -> str:
    start, end = modifier_span(text, phrase, max_tokens)
    return text[start:end]


@dataclass(frozen=True)
class Candidate:
    """A phrase occurrence whose inner span resolved to gazetteer entities."""

    candidate_id: str
    doc_id: str
    date: str
    year: int | None
    section: str
    author: str
    sentence: str
    sentence_index: int
    source_surface: str
    source_start: int
    source_end: int
    entity_ids: tuple[str, ...]
    entity_labels: tuple[str, ...]
    modifier: str
    modifier_start: int
    modifier_end: int

    def to_json_dict(self) -> dict:
        return {
            "candidate_id": self.candidate_id,
            "doc_id": self.doc_id,
            "date": self.date,
            "year": self.year,
            "section": self.section,
            "author": self.author,
            "sentence": self.sentence,
            "sentence_index": self.sentence_index,
            "source_surface": self.source_surface,
            "source_start": self.source_start,
            "source_end": self.source_end,
            "entity_ids": list(self.entity_ids),
            "entity_labels": list(self.entity_labels),
            "modifier": self.modifier,
            "modifier_start": self.modifier_start,
            "modifier_end": self.modifier_end,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Candidate":
        return cls(
            candidate_id=obj["candidate_id"],
            doc_id=obj["doc_id"],
            date=obj.get("date", ""),
            year=obj.get("year"),
            section=obj.get("section", ""),
            author=obj.get("author", ""),
            sentence=obj["sentence"],
            sentence_index=obj.get("sentence_index", 0),
            source_surface=obj["source_surface"],
            source_start=obj.get("source_start", 0),
            source_end=obj.get("source_end", 0),
            entity_ids=tuple(obj["entity_ids"]),
            entity_labels=tuple(obj.get("entity_labels", ())),
            modifier=obj.get("modifier", ""),
            modifier_start=obj.get("modifier_start", 0),
            modifier_end=obj.get("modifier_end", 0),
        )


def candidate_id(doc_id: str, sentence_index: int, phrase_start: int) -> str:
    """Stable content hash so labels survive re-extraction over the same corpus."""
    key = f"{doc_id}\x1f{sentence_index}\x1f{phrase_start}".encode("utf-8")
    return hashlib.sha1(key).hexdigest()[:16]


@dataclass
class YearCounters:
    n_articles: int = 0
    n_sentences: int = 0
    n_phrase_matches: int = 0
    n_entity_matched: int = 0
    n_after_blacklist: int = 0


@dataclass
class RunStats:
    """Extraction funnel counters, overall and per year.

    Stage counts are per phrase occurrence and shrink monotonically:
    every phrase match >= entity-matched phrases >= phrases surviving
    the blacklist (the emitted candidates).
    """

    n_articles: int = 0
    n_sentences: int = 0
    n_phrase_matches: int = 0
    n_entity_matched: int = 0
    n_after_blacklist: int = 0
    per_year: dict[int | None, YearCounters] = field(default_factory=dict)

    def year_bucket(self, year: int | None) -> YearCounters:
        bucket = self.per_year.get(year)
        if bucket is None:
            bucket = YearCounters()
            self.per_year[year] = bucket
        return bucket

    def merge(self, other: "RunStats") -> None:
        self.n_articles += other.n_articles
        self.n_sentences += other.n_sentences
        self.n_phrase_matches += other.n_phrase_matches
        self.n_entity_matched += other.n_entity_matched
        self.n_after_blacklist += other.n_after_blacklist
        for year, counters in other.per_year.items():
            bucket = self.year_bucket(year)
            bucket.n_articles += counters.n_articles
            bucket.n_sentences += counters.n_sentences
            bucket.n_phrase_matches += counters.n_phrase_matches
            bucket.n_entity_matched += counters.n_entity_matched
            bucket.n_after_blacklist += counters.n_after_blacklist

    def to_json_dict(self) -> dict:
        def year_key(year: int | None) -> str:
            return "unknown" if year is None else str(year)

        return {
            "n_articles": self.n_articles,
            "n_sentences": self.n_sentences,
            "n_phrase_matches": self.n_phrase_matches,
            "n_entity_matched": self.n_entity_matched,
            "n_after_blacklist": self.n_after_blacklist,
            "per_year": {
                year_key(y): {
                    "n_articles": c.n_articles,
                    "n_sentences": c.n_sentences,
                    "n_phrase_matches": c.n_phrase_matches,
                    "n_entity_matched": c.n_entity_matched,
                    "n_after_blacklist": c.n_after_blacklist,
                }
                for y, c in sorted(
                    self.per_year.items(), key=lambda kv: (kv[0] is None, kv[0] or 0)
                )
            },
        }


def match_candidates(
    sentences: Iterable[Sentence],
    index: NameIndex,
    blacklist: Blacklist,
    docs: Mapping[str, Document],
    stats: RunStats,
    *,
    article_ignore_case: bool = False,
    max_modifier_tokens: int = DEFAULT_MAX_MODIFIER_TOKENS,
) -> Iterator[Candidate]:
    """Match each sentence's phrases against the gazetteer.

    A phrase becomes a Candidate iff its normalized inner span resolves
    to at least one entity id and is not blacklisted. Funnel counters:
    every phrase increments n_phrase_matches; a gazetteer hit increments
    n_entity_matched whether or not it is blacklisted; only emitted
    candidates increment n_after_blacklist.
    """
    for sentence in sentences:
        doc = docs[sentence.doc_id]
        year = doc.year
        bucket = stats.year_bucket(year)
        for phrase in find_phrases(sentence.text, article_ignore_case=article_ignore_case):
            stats.n_phrase_matches += 1
            bucket.n_phrase_matches += 1
            surface = normalize_surface(phrase.inner_text)
            ids = index.ids_for(surface)
            if not ids:
                continue
            stats.n_entity_matched += 1
            bucket.n_entity_matched += 1
            if surface in blacklist.surfaces:
                continue
            stats.n_after_blacklist += 1
            bucket.n_after_blacklist += 1
            mod_start, mod_end = modifier_span(sentence.text, phrase, max_modifier_tokens)
            sorted_ids = tuple(sorted(ids))
            yield Candidate(
                candidate_id=candidate_id(doc.doc_id, sentence.index, phrase.phrase_start),
                doc_id=doc.doc_id,
                date=doc.date,
                year=year,
                section=doc.section,
                author=doc.author,
                sentence=sentence.text,
                sentence_index=sentence.index,
                source_surface=surface,
                source_start=phrase.inner_start,
                source_end=phrase.inner_end,
                entity_ids=sorted_ids,
                entity_labels=tuple(index.label_of(i) for i in sorted_ids),
                modifier=sentence.text[mod_start:mod_end],
                modifier_start=mod_start,
                modifier_end=mod_end,
            )


def extract_from_documents(
    documents: Iterable[Document],
    index: NameIndex,
    blacklist: Blacklist,
    abbreviations: frozenset[str],
    *,
    article_ignore_case: bool = False,
    max_modifier_tokens: int = DEFAULT_MAX_MODIFIER_TOKENS,
    stats: RunStats | None = None,
) -> Iterator[Candidate]:
    """Segment documents and match their sentences; counts articles too."""
    from .corpus import segment

    if stats is None:
        stats = RunStats()
    for doc in documents:
        stats.n_articles += 1
        bucket = stats.year_bucket(doc.year)
        bucket.n_articles += 1
        sentences = segment(doc, abbreviations)
        stats.n_sentences += len(sentences)
        bucket.n_sentences += len(sentences)
        yield from match_candidates(
            sentences,
            index,
            blacklist,
            {doc.doc_id: doc},
            stats,
            article_ignore_case=article_ignore_case,
            max_modifier_tokens=max_modifier_tokens,
        )
