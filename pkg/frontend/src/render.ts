/**
 * Pure HTML/SVG string builders.
 *
 * Nothing here sorts, filters or recomputes scores: rows, edges and steps
 * appear exactly in API payload order, so parity with the server is
 * checkable by comparing extracted order against the payload.
 */

import type {
  CandidateRow,
  ConceptMapPayload,
  FeatureRow,
  JourneyPayload,
  SuggestedRelation,
} from './types.js';

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function renderFeatureList(features: FeatureRow[], selected: string | null): string {
  const items = features
    .map((row) => {
      const active = row.feature === selected ? ' class="active"' : '';
      return (
        `<li${active}><button data-action="select-feature" data-feature="${escapeHtml(row.feature)}">` +
        `${escapeHtml(row.feature)} <span class="counts">${row.accepted}/${row.candidates}</span>` +
        `</button></li>`
      );
    })
    .join('');
  return `<ul class="feature-list">${items}</ul>`;
}

export function renderCandidateTable(feature: string | null, rows: CandidateRow[]): string {
  if (feature === null) {
    return '<p class="hint">Select a feature to review its candidates.</p>';
  }
  const body = rows
    .map((row) => {
      const relevance = row.relevance === null ? '&mdash;' : row.relevance.toFixed(3);
      const origin = row.expert_added ? ' <span class="badge expert">expert</span>' : '';
      return (
        `<tr data-term="${escapeHtml(row.term)}" class="status-${row.status}">` +
        `<td>${escapeHtml(row.term)}${origin}</td>` +
        `<td class="num">${relevance}</td>` +
        `<td class="status">${row.status}</td>` +
        `<td class="controls">` +
        `<button data-action="accept" data-term="${escapeHtml(row.term)}">accept</button>` +
        `<button data-action="reject" data-term="${escapeHtml(row.term)}">reject</button>` +
        `</td></tr>`
      );
    })
    .join('');
  return (
    `<table class="candidates"><thead><tr>` +
    `<th>term</th><th>relevance</th><th>status</th><th></th>` +
    `</tr></thead><tbody>${body}</tbody></table>`
  );
}

/** Concept map as SVG: nodes on a circle in payload order, suggested edges dashed. */
export function renderConceptMapSvg(map: ConceptMapPayload, size = 480): string {
  const concepts = map.concepts;
  const center = size / 2;
  const radius = size / 2 - 60;
  const position = new Map<string, { x: number; y: number }>();
  concepts.forEach((concept, index) => {
    const angle = (2 * Math.PI * index) / Math.max(concepts.length, 1) - Math.PI / 2;
    position.set(concept.id, {
      x: center + radius * Math.cos(angle),
      y: center + radius * Math.sin(angle),
    });
  });

  const edges = map.relations
    .map((relation) => {
      const from = position.get(relation.a);
      const to = position.get(relation.b);
      if (from === undefined || to === undefined) {
        return '';
      }
      const dash = relation.suggested ? ' stroke-dasharray="6 4"' : '';
      const midX = (from.x + to.x) / 2;
      const midY = (from.y + to.y) / 2;
      return (
        `<g class="relation${relation.suggested ? ' suggested' : ''}" ` +
        `data-a="${escapeHtml(relation.a)}" data-b="${escapeHtml(relation.b)}">` +
        `<line x1="${from.x.toFixed(1)}" y1="${from.y.toFixed(1)}" ` +
        `x2="${to.x.toFixed(1)}" y2="${to.y.toFixed(1)}"${dash}/>` +
        `<text x="${midX.toFixed(1)}" y="${midY.toFixed(1)}">${escapeHtml(relation.label)}</text>` +
        `</g>`
      );
    })
    .join('');

  const nodes = concepts
    .map((concept) => {
      const at = position.get(concept.id)!;
      return (
        `<g class="concept" data-concept="${escapeHtml(concept.id)}">` +
        `<circle cx="${at.x.toFixed(1)}" cy="${at.y.toFixed(1)}" r="10"/>` +
        `<text x="${at.x.toFixed(1)}" y="${(at.y - 16).toFixed(1)}">${escapeHtml(concept.label)}</text>` +
        `</g>`
      );
    })
    .join('');

  return (
    `<svg viewBox="0 0 ${size} ${size}" class="concept-map" role="img">` +
    `${edges}${nodes}</svg>`
  );
}

export function renderRelationForm(map: ConceptMapPayload): string {
  const options = map.concepts
    .map((c) => `<option value="${escapeHtml(c.id)}">${escapeHtml(c.label)}</option>`)
    .join('');
  return (
    `<form id="relate-form">` +
    `<select name="a">${options}</select>` +
    `<input name="label" placeholder="relation label" required>` +
    `<select name="b">${options}</select>` +
    `<button type="submit">relate</button>` +
    `</form>`
  );
}

export function renderSuggestedRelations(suggested: SuggestedRelation[]): string {
  if (suggested.length === 0) {
    return '<p class="hint">No suggested relations.</p>';
  }
  const items = suggested
    .map(
      (s) =>
        `<li>${escapeHtml(s.a)} &rarr; ${escapeHtml(s.b)} ` +
        `<button data-action="promote" data-a="${escapeHtml(s.a)}" ` +
        `data-label="${escapeHtml(s.label)}" data-b="${escapeHtml(s.b)}">promote</button></li>`,
    )
    .join('');
  return `<ul class="suggested">${items}</ul>`;
}

export function renderJourneyPanel(journey: JourneyPayload | null): string {
  if (journey === null) {
    return '<p class="hint">Load a journey to see the recommended order.</p>';
  }
  const steps = journey.steps
    .map((step) => {
      const warnings = step.warnings
        .map((w) => `<span class="badge warning" title="${escapeHtml(w)}">!</span>`)
        .join('');
      return (
        `<li data-feature="${escapeHtml(step.feature)}" data-anchor="${escapeHtml(step.anchor)}">` +
        `<strong>${escapeHtml(step.feature)}</strong>` +
        ` <span class="anchor">from ${escapeHtml(step.anchor)}</span>` +
        ` <span class="num">${step.weight.toFixed(6)}</span>${warnings}</li>`
      );
    })
    .join('');
  const unreachable =
    journey.unreachable.length === 0
      ? ''
      : `<p class="tray">Unreachable: ${journey.unreachable.map(escapeHtml).join(', ')}</p>`;
  return `<ol class="journey">${steps}</ol>${unreachable}`;
}

export function renderErrorBanner(error: string | null): string {
  if (error === null) {
    return '';
  }
  return `<div class="banner error">${escapeHtml(error)}</div>`;
}
