import type {
  CandidateRow,
  CandidateStatus,
  ConceptMapPayload,
  FeatureRow,
  JourneyPayload,
  SuggestedRelation,
} from './types.js';

export interface AppState {
  features: FeatureRow[];
  selected: string | null;
  candidates: CandidateRow[];
  map: ConceptMapPayload;
  suggested: SuggestedRelation[];
  journey: JourneyPayload | null;
  revision: number;
  error: string | null;
}

export function initialState(): AppState {
  return {
    features: [],
    selected: null,
    candidates: [],
    map: { concepts: [], relations: [] },
    suggested: [],
    journey: null,
    revision: 0,
    error: null,
  };
}

/**
 * Optimistic status flip for one term. Row order is untouched: the table
 * renders in server order and only the server may reorder anything.
 */
export function withCandidateStatus(
  rows: CandidateRow[],
  term: string,
  status: CandidateStatus,
): CandidateRow[] {
  return rows.map((row) => (row.term === term ? { ...row, status } : row));
}

/** Server revisions only ever move forward; stale responses are ignored. */
export function advanceRevision(state: AppState, revision: number): void {
  if (revision > state.revision) {
    state.revision = revision;
  }
}
