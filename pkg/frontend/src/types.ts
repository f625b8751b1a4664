// Payload shapes of the /api/v1 endpoints.

export type Verdict = "true_va" | "not_va" | "unlabeled";

export interface CandidateView {
  candidate_id: string;
  doc_id: string;
  date: string;
  year: number | null;
  section: string;
  author: string;
  sentence: string;
  source_surface: string;
  source_start: number;
  source_end: number;
  entity_ids: string[];
  entity_labels: string[];
  modifier: string;
  modifier_start: number;
  modifier_end: number;
  verdict: Verdict | null;
  suppressed: boolean;
}

export interface CandidatePage {
  total: number;
  page: number;
  page_size: number;
  items: CandidateView[];
}

export interface Tallies {
  total: number;
  suppressed: number;
  active: number;
  labeled: number;
  unlabeled: number;
  true_va: number;
  not_va: number;
}

export interface PrecisionInfo {
  all_pct: number | null;
  labeled_pct: number | null;
  n_scope: number;
  n_true: number;
  n_false: number;
  n_labeled: number;
  n_unlabeled: number;
}

export interface YearRow {
  year: number;
  candidates: number;
  true_va: number;
  precision_pct: number | null;
  articles: number;
  cand_per_thousand: number;
  true_per_thousand: number;
}

export interface StatsPayload {
  counts: Tallies;
  precision: PrecisionInfo;
  funnel: Record<string, unknown> | null;
  top_sources: [string, number][];
  top_modifiers: [string, number][];
  per_year: YearRow[];
  n_unknown_year_candidates: number;
  n_unique_true: number;
  blacklist: { size: number; version: number };
}

export interface LabelAck {
  candidate_id: string;
  verdict: Verdict | null;
  tallies: Tallies;
}

export interface BlacklistAck {
  surface: string;
  suppressed_ids: string[];
  blacklist: { size: number; version: number };
  tallies: Tallies;
}

export interface QueueFilters {
  source?: string;
  year?: number;
  section?: string;
}
