"""Curated blacklist of alias surfaces excluded from gazetteer matching.

Mostly one-word aliases that are too ambiguous to keep ("Hall",
"Church"). The blacklist is a versioned immutable value: adding a
surface produces a new version, so in-flight readers keep a consistent
snapshot while curation continues.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path


def normalize_surface(s: str) -> str:
    """Canonical form for name matching: trim and collapse whitespace runs.

    Case and punctuation are preserved so names like "Robert Downey, Jr."
    survive intact.
    """
    return " ".join(s.split())


@dataclass(frozen=True)
class Blacklist:
    surfaces: frozenset[str] = field(default_factory=frozenset)
    version: int = 0

    def __contains__(self, surface: str) -> bool:
        return normalize_surface(surface) in self.surfaces

    def __len__(self) -> int:
        return len(self.surfaces)

    def add(self, surface: str) -> "Blacklist":
        """Return a new version containing ``surface``; no-op if present."""
        norm = normalize_surface(surface)
        if not norm:
            raise ValueError("blacklist surface is empty after normalization")
        if norm in self.surfaces:
            return self
        return Blacklist(self.surfaces | {norm}, self.version + 1)


def load_blacklist(path: str | Path) -> Blacklist:
    """Read one surface per line; '#' starts a comment, blanks ignored."""
    surfaces = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0]
            norm = normalize_surface(line)
            if norm:
                surfaces.add(norm)
    return Blacklist(frozenset(surfaces), version=0)


def save_blacklist(blacklist: Blacklist, path: str | Path) -> None:
    """Write surfaces sorted, atomically (write temp file, then rename)."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        for surface in sorted(blacklist.surfaces):
            fh.write(surface + "\n")
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)
