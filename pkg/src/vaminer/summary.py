"""Corpus-wide article counts used to normalize the analytics tables."""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import Document


@dataclass
class CorpusSummary:
    n_articles: int = 0
    sections: dict[str, int] = field(default_factory=dict)
    authors: dict[str, int] = field(default_factory=dict)
    years: dict[int, int] = field(default_factory=dict)
    n_unknown_year: int = 0

    def add(self, doc: Document) -> None:
        self.n_articles += 1
        self.sections[doc.section] = self.sections.get(doc.section, 0) + 1
        self.authors[doc.author] = self.authors.get(doc.author, 0) + 1
        year = doc.year
        if year is None:
            self.n_unknown_year += 1
        else:
            self.years[year] = self.years.get(year, 0) + 1

    def merge(self, other: "CorpusSummary") -> None:
        self.n_articles += other.n_articles
        self.n_unknown_year += other.n_unknown_year
        for key, count in other.sections.items():
            self.sections[key] = self.sections.get(key, 0) + count
        for key, count in other.authors.items():
            self.authors[key] = self.authors.get(key, 0) + count
        for year, count in other.years.items():
            self.years[year] = self.years.get(year, 0) + count

    def to_json_dict(self) -> dict:
        return {
            "n_articles": self.n_articles,
            "sections": dict(sorted(self.sections.items())),
            "authors": dict(sorted(self.authors.items())),
            "years": {str(y): c for y, c in sorted(self.years.items())},
            "n_unknown_year": self.n_unknown_year,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "CorpusSummary":
        return cls(
            n_articles=obj.get("n_articles", 0),
            sections=dict(obj.get("sections", {})),
            authors=dict(obj.get("authors", {})),
            years={int(y): c for y, c in obj.get("years", {}).items()},
            n_unknown_year=obj.get("n_unknown_year", 0),
        )
