"""HTTP JSON API for the annotation workbench.

One process serves one curation session: the candidate set is held in
memory, labels and blacklist edits are persisted before a mutation is
acknowledged, and every response is computed under a single lock so
readers always see one consistent (candidates, labels, blacklist)
snapshot. The built UI, when present, is served statically by the same
process.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .blacklist import Blacklist, load_blacklist, normalize_surface, save_blacklist
from .curation import (
    VERDICT_CLEARED,
    VERDICT_FALSE,
    VERDICT_TRUE,
    LabelStore,
    add_blacklist,
    dedup,
    is_suppressed,
    precision,
)
from .extraction import Candidate
from .pipeline import candidates_tsv, read_candidates, read_report
from .stats import freq_modifiers, freq_sources, per_year, unique_true_candidates
from .summary import CorpusSummary

_STATUS_FILTERS = ("all", "unlabeled", "labeled", "true_va", "not_va", "suppressed")
_MAX_PAGE_SIZE = 500
SNAPSHOT_EVERY = 200


def _snapshot_path(labels_path: str | Path) -> Path:
    return Path(str(labels_path) + ".snapshot.json")


class SessionState:
    """Everything one curation session needs, with its persistence paths."""

    def __init__(
        self,
        candidates: list[Candidate],
        store: LabelStore,
        blacklist: Blacklist,
        blacklist_path: str | Path | None = None,
        summary: CorpusSummary | None = None,
        run_stats: dict | None = None,
    ):
        self.candidates = sorted(candidates, key=lambda c: c.candidate_id)
        self.by_id = {c.candidate_id: c for c in self.candidates}
        self.store = store
        self.blacklist = blacklist
        self.blacklist_path = Path(blacklist_path) if blacklist_path else None
        self.summary = summary
        self.run_stats = run_stats
        self.lock = threading.Lock()

    @classmethod
    def from_files(
        cls,
        candidates_path: str | Path,
        labels_path: str | Path,
        blacklist_path: str | Path | None = None,
        report_path: str | Path | None = None,
    ) -> "SessionState":
        candidates = read_candidates(candidates_path)
        store = LabelStore.load(
            labels_path,
            known_ids=(c.candidate_id for c in candidates),
            snapshot_path=_snapshot_path(labels_path),
        )
        blacklist = Blacklist()
        if blacklist_path and Path(blacklist_path).exists():
            blacklist = load_blacklist(blacklist_path)
        run_stats = None
        summary = None
        if report_path is None:
            default_report = Path(str(candidates_path) + ".report.json")
            if default_report.exists():
                report_path = default_report
        if report_path and Path(report_path).exists():
            run_stats, summary = read_report(report_path)
        return cls(
            candidates,
            store,
            blacklist,
            blacklist_path=blacklist_path,
            summary=summary,
            run_stats=run_stats,
        )

    # All helpers below assume the caller holds self.lock.

    def candidate_view(self, c: Candidate) -> dict:
        verdict = self.store.verdict_of(c.candidate_id)
        return {
            "candidate_id": c.candidate_id,
            "doc_id": c.doc_id,
            "date": c.date,
            "year": c.year,
            "section": c.section,
            "author": c.author,
            "sentence": c.sentence,
            "source_surface": c.source_surface,
            "source_start": c.source_start,
            "source_end": c.source_end,
            "entity_ids": list(c.entity_ids),
            "entity_labels": list(c.entity_labels),
            "modifier": c.modifier,
            "modifier_start": c.modifier_start,
            "modifier_end": c.modifier_end,
            "verdict": verdict,
            "suppressed": is_suppressed(c, self.blacklist),
        }

    def tallies(self) -> dict:
        total = len(self.candidates)
        suppressed = labeled = n_true = n_false = 0
        for c in self.candidates:
            if is_suppressed(c, self.blacklist):
                suppressed += 1
                continue
            verdict = self.store.verdict_of(c.candidate_id)
            if verdict == VERDICT_TRUE:
                n_true += 1
                labeled += 1
            elif verdict == VERDICT_FALSE:
                n_false += 1
                labeled += 1
        active = total - suppressed
        return {
            "total": total,
            "suppressed": suppressed,
            "active": active,
            "labeled": labeled,
            "unlabeled": active - labeled,
            "true_va": n_true,
            "not_va": n_false,
        }

    def stats_payload(self, top: int = 10) -> dict:
        report = precision(self.store, self.candidates, self.blacklist)
        unique_true = unique_true_candidates(self.candidates, self.store, self.blacklist)
        sources = freq_sources(unique_true, top=top)
        modifiers = freq_modifiers(unique_true, top=top)
        year_counts = self.summary.years if self.summary is not None else {}
        series = per_year(self.candidates, self.store, year_counts, self.blacklist)
        payload = {
            "counts": self.tallies(),
            "precision": {
                "all_pct": report.all_pct,
                "labeled_pct": report.labeled_pct,
                "n_scope": report.n_scope,
                "n_true": report.n_true,
                "n_false": report.n_false,
                "n_labeled": report.n_labeled,
                "n_unlabeled": report.n_unlabeled,
            },
            "funnel": self.run_stats,
            "top_sources": [[k, n] for k, n, _ in sources.rows],
            "top_modifiers": [[k, n] for k, n, _ in modifiers.rows],
            "per_year": [
                {
                    "year": row.year,
                    "candidates": row.n_candidates,
                    "true_va": row.n_true_va,
                    "precision_pct": row.precision_pct,
                    "articles": row.n_articles,
                    "cand_per_thousand": row.cand_per_thousand,
                    "true_per_thousand": row.true_per_thousand,
                }
                for row in series.rows
            ],
            "n_unknown_year_candidates": series.n_unknown_year_candidates,
            "n_unique_true": len(unique_true),
            "blacklist": {"size": len(self.blacklist), "version": self.blacklist.version},
        }
        return payload

    def filtered(
        self,
        status: str,
        source: str | None,
        year: int | None,
        section: str | None,
    ) -> list[Candidate]:
        out = []
        for c in self.candidates:
            suppressed = is_suppressed(c, self.blacklist)
            if status == "suppressed":
                if not suppressed:
                    continue
            elif suppressed:
                continue
            else:
                verdict = self.store.verdict_of(c.candidate_id)
                if status == "unlabeled" and verdict is not None:
                    continue
                if status == "labeled" and verdict is None:
                    continue
                if status in (VERDICT_TRUE, VERDICT_FALSE) and verdict != status:
                    continue
            if source is not None and source not in c.entity_labels and source != c.source_surface:
                continue
            if year is not None and c.year != year:
                continue
            if section is not None and c.section != section:
                continue
            out.append(c)
        return out


class LabelBody(BaseModel):
    candidate_id: str
    verdict: str
    annotator: str = ""


class BlacklistBody(BaseModel):
    surface: str


def create_app(state: SessionState, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="vaminer annotation service")

    @app.get("/api/v1/candidates")
    def list_candidates(
        status: str = "all",
        source: str | None = None,
        year: int | None = None,
        section: str | None = None,
        page: int = Query(1, ge=1),
        page_size: int = Query(50, ge=1, le=_MAX_PAGE_SIZE),
    ):
        if status not in _STATUS_FILTERS:
            raise HTTPException(
                status_code=400,
                detail=f"invalid status {status!r}; expected one of {_STATUS_FILTERS}",
            )
        with state.lock:
            matched = state.filtered(status, source, year, section)
            start = (page - 1) * page_size
            items = [state.candidate_view(c) for c in matched[start : start + page_size]]
            return {
                "total": len(matched),
                "page": page,
                "page_size": page_size,
                "items": items,
            }

    @app.post("/api/v1/labels")
    def submit_label(body: LabelBody):
        with state.lock:
            if body.candidate_id not in state.by_id:
                raise HTTPException(status_code=404, detail="unknown candidate id")
            if body.verdict == VERDICT_CLEARED:
                state.store.clear_label(body.candidate_id, body.annotator)
            elif body.verdict in (VERDICT_TRUE, VERDICT_FALSE):
                state.store.set_label(body.candidate_id, body.verdict, body.annotator)
            else:
                raise HTTPException(
                    status_code=400,
                    detail=f"invalid verdict {body.verdict!r}",
                )
            if state.store.path is not None and len(state.store.events) % SNAPSHOT_EVERY == 0:
                state.store.write_snapshot(_snapshot_path(state.store.path))
            return {
                "candidate_id": body.candidate_id,
                "verdict": state.store.verdict_of(body.candidate_id),
                "tallies": state.tallies(),
            }

    @app.post("/api/v1/blacklist")
    def blacklist_surface(body: BlacklistBody):
        surface = normalize_surface(body.surface)
        if not surface:
            raise HTTPException(status_code=400, detail="empty blacklist surface")
        with state.lock:
            new_blacklist, suppressed = add_blacklist(
                state.blacklist, state.candidates, surface
            )
            if new_blacklist is not state.blacklist and state.blacklist_path is not None:
                save_blacklist(new_blacklist, state.blacklist_path)
            state.blacklist = new_blacklist
            return {
                "surface": surface,
                "suppressed_ids": sorted(suppressed),
                "blacklist": {
                    "size": len(state.blacklist),
                    "version": state.blacklist.version,
                },
                "tallies": state.tallies(),
            }

    @app.get("/api/v1/stats")
    def stats():
        with state.lock:
            return state.stats_payload()

    @app.get("/api/v1/export")
    def export():
        with state.lock:
            active = [c for c in state.candidates if not is_suppressed(c, state.blacklist)]
            unique = dedup(active)
            true_va = [
                c for c in unique if state.store.verdict_of(c.candidate_id) == VERDICT_TRUE
            ]
            return PlainTextResponse(
                candidates_tsv(true_va), media_type="text/tab-separated-values"
            )

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
