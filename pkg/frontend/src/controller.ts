// DOM-free session controller: the labeling loop, optimistic updates with
// a retry queue, undo history, and dashboard state. The browser layer in
// app.ts only renders this controller's model and forwards key events, so
// the whole workflow is exercisable headlessly.

import { ApiClient, ApiError } from "./api.js";
import type { CandidateView, QueueFilters, StatsPayload, Verdict } from "./types.js";

export interface PendingLabel {
  candidateId: string;
  verdict: Verdict;
  attempts: number;
}

export interface SessionModel {
  queue: CandidateView[];
  position: number;
  stats: StatsPayload | null;
  statsStale: boolean;
  pending: PendingLabel[];
  labeledThisSession: number;
  busy: boolean;
  message: string;
  filters: QueueFilters;
}

interface UndoEntry {
  candidateId: string;
  previousVerdict: Verdict;
}

export type ConfirmFn = (message: string) => boolean | Promise<boolean>;

export class SessionController {
  model: SessionModel = {
    queue: [],
    position: 0,
    stats: null,
    statsStale: false,
    pending: [],
    labeledThisSession: 0,
    busy: false,
    message: "",
    filters: {},
  };

  private undoStack: UndoEntry[] = [];
  private onChangeHandlers: Array<() => void> = [];

  constructor(
    private api: ApiClient,
    private confirmFn: ConfirmFn = () => true,
  ) {}

  onChange(handler: () => void): void {
    this.onChangeHandlers.push(handler);
  }

  private changed(): void {
    for (const handler of this.onChangeHandlers) handler();
  }

  current(): CandidateView | null {
    return this.model.queue[this.model.position] ?? null;
  }

  async loadQueue(filters: QueueFilters = this.model.filters): Promise<void> {
    this.model.filters = filters;
    const page = await this.api.listCandidates({ status: "unlabeled", ...filters });
    this.model.queue = page.items;
    this.model.position = 0;
    this.model.message = page.total === 0 ? "Queue empty." : "";
    this.changed();
    await this.refreshStats();
  }

  async refreshStats(): Promise<void> {
    try {
      this.model.stats = await this.api.stats();
      this.model.statsStale = false;
    } catch {
      this.model.statsStale = true;
    }
    this.changed();
  }

  /** Optimistic label: drop the candidate from the queue immediately and
   * deliver in the background; failed deliveries stay visible as pending
   * and are retried before the next submission. */
  async label(verdict: Verdict): Promise<void> {
    const candidate = this.current();
    if (!candidate || this.model.busy) return;
    this.undoStack.push({
      candidateId: candidate.candidate_id,
      previousVerdict: candidate.verdict ?? "unlabeled",
    });
    this.model.queue.splice(this.model.position, 1);
    if (this.model.position >= this.model.queue.length) {
      this.model.position = Math.max(0, this.model.queue.length - 1);
    }
    this.model.labeledThisSession += 1;
    this.model.pending.push({ candidateId: candidate.candidate_id, verdict, attempts: 0 });
    this.changed();
    await this.flushPending();
    await this.refreshStats();
  }

  async undo(): Promise<void> {
    const entry = this.undoStack.pop();
    if (!entry || this.model.busy) return;
    this.model.pending.push({
      candidateId: entry.candidateId,
      verdict: entry.previousVerdict,
      attempts: 0,
    });
    this.model.labeledThisSession = Math.max(0, this.model.labeledThisSession - 1);
    this.changed();
    await this.flushPending();
    await this.loadQueue();
  }

  /** Deliver queued label submissions in order; stop at the first
   * transport failure and leave the rest pending. */
  async flushPending(): Promise<void> {
    while (this.model.pending.length > 0) {
      const next = this.model.pending[0];
      try {
        await this.api.submitLabel(next.candidateId, next.verdict);
        this.model.pending.shift();
      } catch (err) {
        if (err instanceof ApiError) {
          // The server understood and refused; retrying will not help.
          this.model.pending.shift();
          this.model.message = `Rejected: ${err.message}`;
        } else {
          next.attempts += 1;
          this.model.message = "Network trouble; retrying in background.";
          break;
        }
      }
    }
    this.changed();
  }

  /** Blacklist the current candidate's source surface. Synchronous with
   * confirmation: the queue updates only after the server acknowledges
   * the bulk suppression. */
  async blacklistCurrent(): Promise<void> {
    const candidate = this.current();
    if (!candidate || this.model.busy) return;
    const n = this.model.queue.filter(
      (c) => c.source_surface === candidate.source_surface,
    ).length;
    const ok = await this.confirmFn(
      `Blacklist "${candidate.source_surface}"? This suppresses ${n} queued ` +
        "candidate(s) and every other candidate with that source surface.",
    );
    if (!ok) return;
    this.model.busy = true;
    this.changed();
    try {
      await this.flushPending();
      const ack = await this.api.addBlacklist(candidate.source_surface);
      const suppressed = new Set(ack.suppressed_ids);
      this.model.queue = this.model.queue.filter((c) => !suppressed.has(c.candidate_id));
      if (this.model.position >= this.model.queue.length) {
        this.model.position = Math.max(0, this.model.queue.length - 1);
      }
      this.model.message = `Blacklisted "${ack.surface}" (${ack.suppressed_ids.length} suppressed).`;
    } catch (err) {
      this.model.message = err instanceof Error ? err.message : String(err);
    } finally {
      this.model.busy = false;
    }
    this.changed();
    await this.refreshStats();
  }

  next(): void {
    if (this.model.queue.length === 0) return;
    this.model.position = (this.model.position + 1) % this.model.queue.length;
    this.changed();
  }

  prev(): void {
    if (this.model.queue.length === 0) return;
    this.model.position =
      (this.model.position - 1 + this.model.queue.length) % this.model.queue.length;
    this.changed();
  }

  pendingCount(): number {
    return this.model.pending.length;
  }
}
