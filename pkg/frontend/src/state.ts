import type { Candidate, PlotRow, SessionSummary } from './types.js';

/** UI state is always a projection of the last server responses; every
 * mutation round-trips through the API and re-syncs. */
export interface UiState {
  session: SessionSummary | null;
  candidates: Candidate[];
  mergeOpen: boolean;
  lastError: string | null;
  lastAction: string | null;
  busy: boolean;
}

export function initialState(): UiState {
  return {
    session: null,
    candidates: [],
    mergeOpen: false,
    lastError: null,
    lastAction: null,
    busy: false,
  };
}

export function withServerTruth(
  state: UiState,
  session: SessionSummary,
  candidates: Candidate[],
): UiState {
  return { ...state, session, candidates, lastError: null };
}

export function withError(state: UiState, message: string): UiState {
  // a failed call surfaces its message and changes nothing else
  return { ...state, lastError: message, mergeOpen: false };
}

/** The next candidate shown for triage: highest-ranked undecided row. */
export function headCandidate(state: UiState): Candidate | null {
  return state.candidates.length > 0 ? state.candidates[0] : null;
}

/** Merging needs at least one accepted topic as a target. */
export function mergeEnabled(state: UiState): boolean {
  return (state.session?.accepted.length ?? 0) > 0 && headCandidate(state) !== null;
}

/** Export unlocks only when the session reached target_k topics. */
export function exportEnabled(state: UiState): boolean {
  return state.session?.complete ?? false;
}

export function progressLabel(state: UiState): string {
  if (!state.session) return '…';
  return `${state.session.accepted.length}/${state.session.target_k}`;
}

export function queueDone(state: UiState): boolean {
  return state.session !== null && (state.session.complete || state.candidates.length === 0);
}

/** Band for a preview row, mirroring the server's plot banding. */
export function bandFor(rank: number, targetK: number): 'top' | 'grey' {
  return rank <= targetK ? 'top' : 'grey';
}

/** Bar widths for the preview chart, scaled to the largest total. */
export function barWidthPct(row: PlotRow, rows: PlotRow[]): number {
  const max = rows.reduce((m, r) => Math.max(m, r.weighted_total), 0);
  return max > 0 ? Math.max(2, Math.round((100 * row.weighted_total) / max)) : 0;
}
