import assert from 'node:assert/strict';
import { test } from 'node:test';
import { advanceRevision, initialState, withCandidateStatus } from '../src/state.js';
function row(term, status = 'none') {
    return {
        term,
        relevance: 0.5,
        tfidf_norm: 0.5,
        centrality_norm: 0.5,
        status,
        expert_added: false,
    };
}
test('optimistic status flip preserves row order and other rows', () => {
    const rows = [row('alpha'), row('beta'), row('gamma')];
    const updated = withCandidateStatus(rows, 'beta', 'accepted');
    assert.deepEqual(updated.map((r) => r.term), ['alpha', 'beta', 'gamma']);
    assert.equal(updated[1].status, 'accepted');
    assert.equal(updated[0].status, 'none');
    assert.equal(rows[1].status, 'none'); // input untouched
});
test('view revision never runs ahead of the server revision', () => {
    const state = initialState();
    advanceRevision(state, 3);
    assert.equal(state.revision, 3);
    advanceRevision(state, 2); // stale response
    assert.equal(state.revision, 3);
    advanceRevision(state, 4);
    assert.equal(state.revision, 4);
});
