"""Human curation state: label log, blacklist edits, dedup, precision.

Labels live in an append-only JSONL event log; the effective verdict per
candidate is the latest event (a fold over the log), so replaying the
log always reproduces the live state. Blacklist additions suppress all
candidates whose source surface matches; suppressed candidates drop out
of analytics and the labeling queue but their log history is retained.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from .blacklist import Blacklist, normalize_surface
from .errors import DataError, UnknownCandidateError
from .extraction import Candidate

VERDICT_TRUE = "true_va"
VERDICT_FALSE = "not_va"
VERDICT_CLEARED = "unlabeled"

VERDICTS = (VERDICT_TRUE, VERDICT_FALSE)


@dataclass(frozen=True)
class LabelEvent:
    candidate_id: str
    verdict: str
    annotator: str = ""
    ts: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "candidate_id": self.candidate_id,
            "verdict": self.verdict,
            "annotator": self.annotator,
            "ts": self.ts,
        }


def replay(events: Iterable[LabelEvent]) -> dict[str, LabelEvent]:
    """Pure fold over the event log: latest event per candidate wins,
    a clearing event removes the entry."""
    state: dict[str, LabelEvent] = {}
    for event in events:
        if event.verdict == VERDICT_CLEARED:
            state.pop(event.candidate_id, None)
        else:
            state[event.candidate_id] = event
    return state


class LabelStore:
    """Append-only label log with a derived current-state map.

    When ``path`` is set, every accepted event is appended and fsynced
    before the call returns, so an acked mutation survives a crash.
    """

    def __init__(self, path: str | Path | None = None, known_ids: Iterable[str] = ()):
        self.path = Path(path) if path is not None else None
        self.known_ids = frozenset(known_ids)
        self.events: list[LabelEvent] = []
        self.current: dict[str, LabelEvent] = {}

    @classmethod
    def load(
        cls,
        path: str | Path,
        known_ids: Iterable[str] = (),
        snapshot_path: str | Path | None = None,
    ) -> "LabelStore":
        """Rebuild a store from its log (the file may not exist yet).

        A snapshot, when given and consistent, seeds the state map and
        only the log tail after it is replayed.
        """
        store = cls(path, known_ids)
        if Path(path).exists():
            with open(path, encoding="utf-8") as fh:
                for line_no, line in enumerate(fh, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        obj = json.loads(line)
                        event = LabelEvent(
                            candidate_id=obj["candidate_id"],
                            verdict=obj["verdict"],
                            annotator=obj.get("annotator", ""),
                            ts=float(obj.get("ts", 0.0)),
                        )
                    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                        raise DataError(f"{path}:{line_no}: bad label event: {exc}") from exc
                    store.events.append(event)
        start_at = 0
        if snapshot_path is not None and Path(snapshot_path).exists():
            with open(snapshot_path, encoding="utf-8") as fh:
                snap = json.load(fh)
            n_events = int(snap.get("n_events", 0))
            if n_events <= len(store.events):
                store.current = {
                    cid: LabelEvent(cid, s["verdict"], s.get("annotator", ""), s.get("ts", 0.0))
                    for cid, s in snap.get("current", {}).items()
                }
                start_at = n_events
        if start_at == 0:
            store.current = replay(store.events)
        else:
            for event in store.events[start_at:]:
                if event.verdict == VERDICT_CLEARED:
                    store.current.pop(event.candidate_id, None)
                else:
                    store.current[event.candidate_id] = event
        return store

    def write_snapshot(self, path: str | Path) -> None:
        snap = {
            "n_events": len(self.events),
            "current": {
                cid: {"verdict": e.verdict, "annotator": e.annotator, "ts": e.ts}
                for cid, e in self.current.items()
            },
        }
        tmp = Path(path).with_name(Path(path).name + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(snap, fh, sort_keys=True)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, Path(path))

    def _append(self, event: LabelEvent) -> None:
        self.events.append(event)
        if event.verdict == VERDICT_CLEARED:
            self.current.pop(event.candidate_id, None)
        else:
            self.current[event.candidate_id] = event
        if self.path is not None:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(event.to_json_dict(), sort_keys=True) + "\n")
                fh.flush()
                os.fsync(fh.fileno())

    def _check_known(self, candidate_id: str) -> None:
        if self.known_ids and candidate_id not in self.known_ids:
            raise UnknownCandidateError(f"unknown candidate id {candidate_id!r}")

    def set_label(self, candidate_id: str, verdict: str, annotator: str = "") -> LabelEvent:
        """Record a verdict; the latest verdict per candidate is effective."""
        if verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}, got {verdict!r}")
        self._check_known(candidate_id)
        event = LabelEvent(candidate_id, verdict, annotator, time.time())
        self._append(event)
        return event

    def clear_label(self, candidate_id: str, annotator: str = "") -> LabelEvent:
        """Undo: remove the effective verdict for a candidate."""
        self._check_known(candidate_id)
        event = LabelEvent(candidate_id, VERDICT_CLEARED, annotator, time.time())
        self._append(event)
        return event

    def verdict_of(self, candidate_id: str) -> str | None:
        event = self.current.get(candidate_id)
        return event.verdict if event else None

    def n_labeled(self) -> int:
        return len(self.current)


def add_blacklist(
    blacklist: Blacklist,
    candidates: Iterable[Candidate],
    surface: str,
) -> tuple[Blacklist, frozenset[str]]:
    """Blacklist a surface; returns the new version plus the candidate ids
    it suppresses. Adding an already-present surface is a no-op."""
    norm = normalize_surface(surface)
    if not norm:
        raise ValueError("blacklist surface is empty after normalization")
    if norm in blacklist.surfaces:
        return blacklist, frozenset()
    suppressed = frozenset(
        c.candidate_id for c in candidates if c.source_surface == norm
    )
    return blacklist.add(norm), suppressed


def is_suppressed(candidate: Candidate, blacklist: Blacklist) -> bool:
    return candidate.source_surface in blacklist.surfaces


def _date_order_key(candidate: Candidate) -> tuple:
    # Empty dates sort after real ones so a dated copy wins republication
    # dedup; ISO dates order correctly as strings.
    return (candidate.date == "", candidate.date, candidate.doc_id)


def dedup(candidates: Iterable[Candidate]) -> list[Candidate]:
    """Remove within-article repeats and republication repeats.

    Rule (a): inside one document, candidates sharing (entity ids,
    normalized modifier) keep only the first by sentence order.
    Rule (b): across documents, candidates sharing (normalized sentence
    text, entity ids) keep only those of the earliest document by date,
    ties broken by doc_id.

    Idempotent, and order-insensitive thanks to the deterministic
    tie-breaks. Output is sorted by candidate_id.

    Full-scale reference point: over the 1987-2007 New York Times run
    this recipe labels 2,775 of 3,753 extracted candidates as true VA
    (73.9% precision), and these two rules then trim the 2,775 true
    occurrences to 2,646 unique ones. Those figures are an expectation
    for full-scale runs only, not reproducible at desk scale: the
    corpus is licensed and the entity dump has drifted, which is why
    the suite enforces the dedup properties (idempotence, order
    insensitivity, the two rule keys) rather than the totals.
    """
    pool = list(candidates)

    firsts: dict[tuple, Candidate] = {}
    for c in pool:
        key = (c.doc_id, c.entity_ids, normalize_surface(c.modifier))
        kept = firsts.get(key)
        if kept is None or (c.sentence_index, c.candidate_id) < (
            kept.sentence_index,
            kept.candidate_id,
        ):
            firsts[key] = c
    survivors = list(firsts.values())

    earliest_doc: dict[tuple, tuple] = {}
    for c in survivors:
        key = (normalize_surface(c.sentence), c.entity_ids)
        order = _date_order_key(c)
        if key not in earliest_doc or order < earliest_doc[key]:
            earliest_doc[key] = order
    result = [
        c
        for c in survivors
        if c.doc_id == earliest_doc[(normalize_surface(c.sentence), c.entity_ids)][2]
    ]
    return sorted(result, key=lambda c: c.candidate_id)


@dataclass(frozen=True)
class PrecisionReport:
    n_scope: int
    n_true: int
    n_false: int
    n_labeled: int
    n_unlabeled: int

    @property
    def all_pct(self) -> float | None:
        """True VA over all in-scope candidates, labeled or not."""
        if self.n_scope == 0:
            return None
        return 100.0 * self.n_true / self.n_scope

    @property
    def labeled_pct(self) -> float | None:
        """True VA over labeled candidates only (mid-curation view)."""
        if self.n_labeled == 0:
            return None
        return 100.0 * self.n_true / self.n_labeled


def precision(
    store: LabelStore,
    candidates: Iterable[Candidate],
    blacklist: Blacklist,
    scope: Callable[[Candidate], bool] | None = None,
) -> PrecisionReport:
    """Precision over non-suppressed candidates in scope.

    Unlabeled candidates count against the all-candidates denominator;
    the labeled-only ratio is reported alongside.
    """
    n_scope = n_true = n_false = 0
    for c in candidates:
        if is_suppressed(c, blacklist):
            continue
        if scope is not None and not scope(c):
            continue
        n_scope += 1
        verdict = store.verdict_of(c.candidate_id)
        if verdict == VERDICT_TRUE:
            n_true += 1
        elif verdict == VERDICT_FALSE:
            n_false += 1
    n_labeled = n_true + n_false
    return PrecisionReport(
        n_scope=n_scope,
        n_true=n_true,
        n_false=n_false,
        n_labeled=n_labeled,
        n_unlabeled=n_scope - n_labeled,
    )
