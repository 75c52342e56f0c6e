/** Wire types of the curation service API. */

export interface SessionSummary {
  session_id: string;
  target_k: number;
  accepted: string[];
  decisions_count: number;
  window_size: number;
  complete: boolean;
}

export interface Candidate {
  rank: number;
  phrase: string;
  display_form: string;
  weighted_total: number;
  decided: boolean;
}

export type DecisionAction = 'accept' | 'block' | 'merge';

export interface TopicRow {
  rank: number;
  phrase: string;
  display_form: string;
  weighted_total: number;
  accepted: boolean;
}

export interface PlotRow {
  rank: number;
  display_form: string;
  weighted_total: number;
  band: 'top' | 'grey';
}

export interface ExportPayload {
  target_k: number;
  complete: boolean;
  topics: TopicRow[];
  plot: PlotRow[];
}
