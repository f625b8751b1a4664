// Pure HTML string builders; app.ts assigns the results to the document.

import type { SessionModel } from "./controller.js";
import type { CandidateView, StatsPayload } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function pct(value: number | null, digits = 1): string {
  return value === null ? "n/a" : `${value.toFixed(digits)}%`;
}

/** Sentence with the source span and modifier span highlighted. */
export function renderSentence(c: CandidateView): string {
  const cuts = [
    { start: c.source_start, end: c.source_end, cls: "source" },
    { start: c.modifier_start, end: c.modifier_end, cls: "modifier" },
  ]
    .filter((span) => span.end > span.start)
    .sort((a, b) => a.start - b.start);
  let html = "";
  let pos = 0;
  for (const span of cuts) {
    if (span.start < pos) continue; // overlapping spans keep the first
    html += escapeHtml(c.sentence.slice(pos, span.start));
    html += `<mark class="${span.cls}">${escapeHtml(c.sentence.slice(span.start, span.end))}</mark>`;
    pos = span.end;
  }
  html += escapeHtml(c.sentence.slice(pos));
  return html;
}

export function renderCandidateCard(c: CandidateView | null): string {
  if (c === null) {
    return `<p class="empty">Queue empty. Adjust filters or press r to reload.</p>`;
  }
  const meta = [
    c.year === null ? "unknown year" : String(c.year),
    c.section || "(no section)",
    c.author || "(no author)",
    c.doc_id,
  ]
    .map(escapeHtml)
    .join(" · ");
  const labels = c.entity_labels.length ? c.entity_labels : c.entity_ids;
  return [
    `<p class="sentence">${renderSentence(c)}</p>`,
    `<p class="entity">source entity: <strong>${escapeHtml(labels.join(", "))}</strong>` +
      ` · modifier: <strong>${escapeHtml(c.modifier || "(none)")}</strong></p>`,
    `<p class="meta">${meta}</p>`,
  ].join("\n");
}

function renderTopList(title: string, rows: [string, number][]): string {
  const items = rows
    .map(([key, count]) => `<li>${escapeHtml(key || "(empty)")} <span>${count}</span></li>`)
    .join("");
  return `<div class="top-list"><h3>${title}</h3><ol>${items || "<li>(none)</li>"}</ol></div>`;
}

function renderYearBars(stats: StatsPayload): string {
  const rows = stats.per_year;
  if (rows.length === 0) return "";
  const max = Math.max(...rows.map((r) => r.candidates), 1);
  const bars = rows
    .map((r) => {
      const candWidth = Math.round((100 * r.candidates) / max);
      const trueWidth = Math.round((100 * r.true_va) / max);
      return (
        `<div class="year-row"><span class="year">${r.year}</span>` +
        `<div class="bars"><div class="bar cand" style="width:${candWidth}%">${r.candidates}</div>` +
        `<div class="bar true" style="width:${trueWidth}%">${r.true_va}</div></div>` +
        `<span class="year-precision">${pct(r.precision_pct)}</span></div>`
      );
    })
    .join("");
  return `<div class="years"><h3>Per year (candidates / true VA)</h3>${bars}</div>`;
}

export function renderDashboard(model: SessionModel): string {
  const stats = model.stats;
  if (!stats) return `<p class="empty">No stats yet.</p>`;
  const counts = stats.counts;
  const stale = model.statsStale ? `<span class="stale">stale</span>` : "";
  const pending =
    model.pending.length > 0
      ? `<span class="pending">${model.pending.length} pending</span>`
      : "";
  return [
    `<div class="panel progress"><h3>Progress ${stale} ${pending}</h3>`,
    `<p>${counts.labeled} labeled / ${counts.unlabeled} open of ${counts.active} active` +
      ` (${counts.suppressed} suppressed)</p></div>`,
    `<div class="panel precision"><h3>Precision</h3>`,
    `<p>all candidates: <strong id="precision-all">${pct(stats.precision.all_pct)}</strong></p>`,
    `<p>labeled only: <strong id="precision-labeled">${pct(stats.precision.labeled_pct)}</strong></p>`,
    `<p>${stats.precision.n_true} true · ${stats.precision.n_false} not VA · ` +
      `${stats.precision.n_unlabeled} unlabeled</p></div>`,
    renderTopList("Top sources", stats.top_sources.slice(0, 10)),
    renderTopList("Top modifiers", stats.top_modifiers.slice(0, 10)),
    renderYearBars(stats),
    `<p class="blacklist-info">blacklist: ${stats.blacklist.size} surfaces</p>`,
  ].join("\n");
}

export function renderStatusLine(model: SessionModel): string {
  const parts = [];
  if (model.queue.length > 0) {
    parts.push(`candidate ${model.position + 1} of ${model.queue.length} in queue`);
  }
  if (model.busy) parts.push("working…");
  if (model.message) parts.push(escapeHtml(model.message));
  return parts.join(" — ");
}
