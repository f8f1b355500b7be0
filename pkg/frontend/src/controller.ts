import { ApiClient } from './api.js';
import { advanceRevision, withCandidateStatus, type AppState } from './state.js';
import type { LedgerAction } from './types.js';

/**
 * Post one curation action with optimistic update and rollback.
 *
 * Accept/reject flips the row immediately; if the server rejects the
 * action, the previous candidate rows come back and the error is surfaced.
 * On success the affected views are re-fetched so the client shows exactly
 * what the server derived.
 */
export async function performCuration(
  state: AppState,
  api: ApiClient,
  action: LedgerAction,
): Promise<boolean> {
  const snapshot = state.candidates;
  state.error = null;
  if (action.op === 'accept' || action.op === 'reject') {
    const status = action.op === 'accept' ? 'accepted' : 'rejected';
    state.candidates = withCandidateStatus(state.candidates, action.term, status);
  }
  try {
    const revision = await api.postAction(action);
    advanceRevision(state, revision);
  } catch (error) {
    state.candidates = snapshot;
    state.error = error instanceof Error ? error.message : String(error);
    return false;
  }
  await refreshCuration(state, api);
  return true;
}

/** Re-fetch everything the ledger influences. */
export async function refreshCuration(state: AppState, api: ApiClient): Promise<void> {
  state.features = await api.getFeatures();
  if (state.selected !== null) {
    const payload = await api.getCandidates(state.selected);
    state.candidates = payload.candidates;
  }
  state.map = await api.getMap();
  state.suggested = await api.getSuggestedRelations();
  advanceRevision(state, api.revision);
}

export async function selectFeature(state: AppState, api: ApiClient, feature: string): Promise<void> {
  state.selected = feature;
  const payload = await api.getCandidates(feature);
  state.candidates = payload.candidates;
  advanceRevision(state, api.revision);
}

export async function loadJourney(
  state: AppState,
  api: ApiClient,
  background: string,
  seed: number,
): Promise<void> {
  state.error = null;
  try {
    state.journey = await api.getJourney(background, seed);
  } catch (error) {
    state.error = error instanceof Error ? error.message : String(error);
  }
  advanceRevision(state, api.revision);
}
