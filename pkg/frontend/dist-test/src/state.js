export function initialState() {
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
export function withCandidateStatus(rows, term, status) {
    return rows.map((row) => (row.term === term ? { ...row, status } : row));
}
/** Server revisions only ever move forward; stale responses are ignored. */
export function advanceRevision(state, revision) {
    if (revision > state.revision) {
        state.revision = revision;
    }
}
