// Thin typed client for the annotation service.

import type {
  BlacklistAck,
  CandidatePage,
  LabelAck,
  QueueFilters,
  StatsPayload,
  Verdict,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private fetchImpl: FetchLike;

  constructor(private baseUrl = "", fetchImpl?: FetchLike) {
    this.fetchImpl = fetchImpl ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, init);
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        const body = await resp.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // keep the status text
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  listCandidates(
    opts: QueueFilters & { status?: string; page?: number; pageSize?: number } = {},
  ): Promise<CandidatePage> {
    const params = new URLSearchParams();
    if (opts.status) params.set("status", opts.status);
    if (opts.source) params.set("source", opts.source);
    if (opts.year !== undefined) params.set("year", String(opts.year));
    if (opts.section !== undefined) params.set("section", opts.section);
    params.set("page", String(opts.page ?? 1));
    params.set("page_size", String(opts.pageSize ?? 200));
    return this.request<CandidatePage>(`/api/v1/candidates?${params.toString()}`);
  }

  submitLabel(candidateId: string, verdict: Verdict, annotator = "ui"): Promise<LabelAck> {
    return this.request<LabelAck>("/api/v1/labels", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ candidate_id: candidateId, verdict, annotator }),
    });
  }

  addBlacklist(surface: string): Promise<BlacklistAck> {
    return this.request<BlacklistAck>("/api/v1/blacklist", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ surface }),
    });
  }

  stats(): Promise<StatsPayload> {
    return this.request<StatsPayload>("/api/v1/stats");
  }
}
