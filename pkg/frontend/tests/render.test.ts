import assert from 'node:assert/strict';
import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { test } from 'node:test';

import {
  escapeHtml,
  renderCandidateTable,
  renderConceptMapSvg,
  renderFeatureList,
  renderJourneyPanel,
  renderSuggestedRelations,
} from '../src/render.js';
import type {
  CandidatesPayload,
  ConceptMapPayload,
  FeatureRow,
  JourneyPayload,
  SuggestedRelation,
} from '../src/types.js';

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), '..', '..', 'tests', 'fixtures');

function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, `${name}.json`), 'utf-8')) as T;
}

function extract(html: string, attribute: string): string[] {
  const pattern = new RegExp(`${attribute}="([^"]*)"`, 'g');
  const values: string[] = [];
  for (const match of html.matchAll(pattern)) {
    values.push(match[1]);
  }
  return values;
}

test('candidate rows render in exact payload order', () => {
  const payload = fixture<CandidatesPayload>('candidates_gps');
  const html = renderCandidateTable(payload.feature, payload.candidates);
  const rendered = extract(html, 'data-term').filter((_, i) => i % 3 === 0);
  assert.deepEqual(rendered, payload.candidates.map((c) => c.term));
});

test('candidate rendering never sorts client-side', () => {
  const payload = fixture<CandidatesPayload>('candidates_gps');
  const shuffled = [...payload.candidates].reverse();
  const html = renderCandidateTable(payload.feature, shuffled);
  const rendered = extract(html, 'data-term').filter((_, i) => i % 3 === 0);
  assert.deepEqual(rendered, shuffled.map((c) => c.term));
});

test('feature list renders in payload order with counts', () => {
  const payload = fixture<FeatureRow[]>('features');
  const html = renderFeatureList(payload, null);
  assert.deepEqual(extract(html, 'data-feature'), payload.map((f) => f.feature));
  const first = payload[0];
  assert.ok(html.includes(`${first.accepted}/${first.candidates}`));
});

test('concept map edges render in payload order with suggested edges dashed', () => {
  const payload = fixture<ConceptMapPayload>('map');
  const html = renderConceptMapSvg(payload);
  assert.deepEqual(extract(html, 'data-concept'), payload.concepts.map((c) => c.id));
  assert.deepEqual(extract(html, 'data-a'), payload.relations.map((r) => r.a));
  const dashedCount = (html.match(/stroke-dasharray/g) ?? []).length;
  assert.equal(dashedCount, payload.relations.filter((r) => r.suggested).length);
});

test('journey steps render in payload order with anchors and weights', () => {
  const payload = fixture<JourneyPayload>('journey');
  const html = renderJourneyPanel(payload);
  assert.deepEqual(extract(html, 'data-feature'), payload.steps.map((s) => s.feature));
  assert.deepEqual(extract(html, 'data-anchor'), payload.steps.map((s) => s.anchor));
  for (const step of payload.steps) {
    assert.ok(html.includes(step.weight.toFixed(6)));
  }
});

test('journey panel shows the unreachable tray only when needed', () => {
  const payload = fixture<JourneyPayload>('journey');
  assert.ok(!renderJourneyPanel(payload).includes('Unreachable'));
  const withStranded: JourneyPayload = { ...payload, unreachable: ['Ghost'] };
  assert.ok(renderJourneyPanel(withStranded).includes('Unreachable: Ghost'));
});

test('suggested relations render with promote buttons', () => {
  const payload = fixture<SuggestedRelation[]>('suggested');
  const html = renderSuggestedRelations(payload);
  assert.deepEqual(extract(html, 'data-a'), payload.map((s) => s.a));
  assert.deepEqual(extract(html, 'data-b'), payload.map((s) => s.b));
});

test('html escaping covers quotes and angle brackets', () => {
  assert.equal(escapeHtml('<a href="x">&'), '&lt;a href=&quot;x&quot;&gt;&amp;');
  const html = renderCandidateTable('F', [
    {
      term: '<script>',
      relevance: 1,
      tfidf_norm: 1,
      centrality_norm: 1,
      status: 'none',
      expert_added: false,
    },
  ]);
  assert.ok(!html.includes('<script>'));
});
