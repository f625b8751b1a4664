"""Person-name gazetteer built from a knowledge-base entity dump.

Two stages:

    1. filter_dump: stream a line-delimited JSON entity dump (the usual
       knowledge-base export format, one entity object per line) and keep
       the entities that are instances of a target class (default Q5,
       "human") and carry an English label. Each kept entity yields its
       id, canonical label, and English aliases.
    2. build_index: insert every label and alias under its normalized
       surface form, producing an exact-match surface -> entity-id index.

Matching is exact and case-sensitive on whitespace-normalized surfaces.
Ambiguous one-word aliases are not removed from the index; they are
suppressed at lookup time through a curated blacklist, so curation edits
take effect without a rebuild.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator

from .blacklist import Blacklist, normalize_surface
from .errors import DataError
from .fileio import dump_json_line, open_text

INSTANCE_OF_PROPERTY = "P31"
HUMAN_CLASS_ID = "Q5"

INDEX_FORMAT = "vaminer-name-index"
INDEX_VERSION = 1


@dataclass(frozen=True)
class EntityRecord:
    """One person entity: knowledge-base id, canonical label, alias names."""

    id: str
    label: str
    aliases: tuple[str, ...] = ()


@dataclass
class DumpStats:
    """Counters accumulated while filtering a raw dump."""

    n_lines: int = 0
    n_matched: int = 0
    n_skipped_malformed: int = 0


def _claim_targets(entity: dict, prop: str) -> Iterator[str]:
    """Yield the item ids an entity's claims for ``prop`` point at."""
    for claim in entity.get("claims", {}).get(prop, ()):
        if not isinstance(claim, dict):
            continue
        value = claim.get("mainsnak", {}).get("datavalue", {}).get("value")
        if isinstance(value, dict) and "id" in value:
            yield value["id"]


def parse_dump_line(line: str, class_id: str = HUMAN_CLASS_ID) -> EntityRecord | None:
    """Parse one raw dump line; None if it is not a matching entity.

    Tolerates the array framing of full dumps: bare "[" / "]" lines and
    trailing commas. Entities without an English label are skipped even
    when they have English aliases; the label is the canonical handle.
    """
    line = line.strip()
    if not line or line in ("[", "]"):
        return None
    if line.endswith(","):
        line = line[:-1]
    entity = json.loads(line)
    if not isinstance(entity, dict):
        raise ValueError("entity line is not a JSON object")
    if class_id not in _claim_targets(entity, INSTANCE_OF_PROPERTY):
        return None
    label = entity.get("labels", {}).get("en", {}).get("value")
    entity_id = entity.get("id")
    if not label or not entity_id:
        return None
    aliases = tuple(
        a["value"]
        for a in entity.get("aliases", {}).get("en", ())
        if isinstance(a, dict) and a.get("value")
    )
    return EntityRecord(id=entity_id, label=label, aliases=aliases)


def filter_dump(
    dump_stream: Iterable[str] | IO[str],
    class_id: str = HUMAN_CLASS_ID,
    stats: DumpStats | None = None,
) -> Iterator[EntityRecord]:
    """Stream matching entities out of a raw line-delimited dump.

    Malformed lines are skipped and counted in ``stats``; an unreadable
    stream aborts with the offending line number.
    """
    if stats is None:
        stats = DumpStats()
    line_no = 0
    try:
        for line in dump_stream:
            line_no += 1
            stats.n_lines += 1
            try:
                record = parse_dump_line(line, class_id)
            except (json.JSONDecodeError, ValueError, TypeError, AttributeError):
                stats.n_skipped_malformed += 1
                continue
            if record is not None:
                stats.n_matched += 1
                yield record
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"dump stream unreadable at line {line_no + 1}: {exc}") from exc


@dataclass
class NameIndex:
    """Immutable exact-match index from normalized surfaces to entity ids.

    ``names`` maps each normalized surface to the sorted tuple of ids it
    can refer to; ``labels`` maps each id back to its canonical label.
    """

    names: dict[str, tuple[str, ...]] = field(default_factory=dict)
    labels: dict[str, str] = field(default_factory=dict)
    n_entities: int = 0
    n_unique_names: int = 0

    def ids_for(self, surface: str) -> frozenset[str]:
        """Raw lookup, blacklist not applied."""
        return frozenset(self.names.get(normalize_surface(surface), ()))

    def lookup(self, surface: str, blacklist: Blacklist) -> frozenset[str]:
        """Entity ids for a surface; empty if absent or blacklisted."""
        norm = normalize_surface(surface)
        if norm in blacklist.surfaces:
            return frozenset()
        return frozenset(self.names.get(norm, ()))

    def label_of(self, entity_id: str) -> str:
        return self.labels.get(entity_id, entity_id)


def build_index(records: Iterable[EntityRecord]) -> NameIndex:
    """Index every label and alias of every record under its normalized form."""
    names: dict[str, set[str]] = {}
    labels: dict[str, str] = {}
    for record in records:
        labels[record.id] = record.label
        for name in (record.label, *record.aliases):
            norm = normalize_surface(name)
            if not norm:
                continue
            names.setdefault(norm, set()).add(record.id)
    frozen = {surface: tuple(sorted(ids)) for surface, ids in names.items()}
    return NameIndex(
        names=frozen,
        labels=labels,
        n_entities=len(labels),
        n_unique_names=len(frozen),
    )


def lookup(index: NameIndex, surface: str, blacklist: Blacklist) -> frozenset[str]:
    """Module-level alias for NameIndex.lookup."""
    return index.lookup(surface, blacklist)


def save_index(index: NameIndex, path: str | Path) -> None:
    """Serialize deterministically: header line, then sorted payload lines.

    The header carries a format name and version; loading refuses files
    written by an incompatible version instead of misreading them.
    """
    with open_text(path, "wt") as fh:
        header = {
            "format": INDEX_FORMAT,
            "version": INDEX_VERSION,
            "n_entities": index.n_entities,
            "n_unique_names": index.n_unique_names,
        }
        fh.write(dump_json_line(header) + "\n")
        for surface in sorted(index.names):
            fh.write(dump_json_line(["n", surface, list(index.names[surface])]) + "\n")
        for entity_id in sorted(index.labels):
            fh.write(dump_json_line(["e", entity_id, index.labels[entity_id]]) + "\n")


def load_index(path: str | Path) -> NameIndex:
    with open_text(path) as fh:
        try:
            header = json.loads(fh.readline())
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}: not a name-index file") from exc
        if not isinstance(header, dict) or header.get("format") != INDEX_FORMAT:
            raise DataError(f"{path}: not a name-index file")
        if header.get("version") != INDEX_VERSION:
            raise DataError(
                f"{path}: index format version {header.get('version')} is not "
                f"supported (expected {INDEX_VERSION}); rebuild the index"
            )
        names: dict[str, tuple[str, ...]] = {}
        labels: dict[str, str] = {}
        for line_no, line in enumerate(fh, start=2):
            try:
                kind, key, value = json.loads(line)
            except (json.JSONDecodeError, ValueError) as exc:
                raise DataError(f"{path}:{line_no}: corrupt index line") from exc
            if kind == "n":
                names[key] = tuple(value)
            elif kind == "e":
                labels[key] = value
            else:
                raise DataError(f"{path}:{line_no}: unknown record kind {kind!r}")
    return NameIndex(
        names=names,
        labels=labels,
        n_entities=header.get("n_entities", len(labels)),
        n_unique_names=header.get("n_unique_names", len(names)),
    )


def write_entity_file(records: Iterable[EntityRecord], path: str | Path) -> int:
    """Write the canonical entity interchange file (one JSON object per line)."""
    n = 0
    with open_text(path, "wt") as fh:
        for record in records:
            fh.write(
                dump_json_line(
                    {"id": record.id, "label": record.label, "aliases": list(record.aliases)}
                )
                + "\n"
            )
            n += 1
    return n


def read_entity_file(path: str | Path) -> Iterator[EntityRecord]:
    """Read records written by write_entity_file."""
    with open_text(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                yield EntityRecord(
                    id=obj["id"],
                    label=obj["label"],
                    aliases=tuple(obj.get("aliases", ())),
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise DataError(f"{path}:{line_no}: bad entity record: {exc}") from exc
