import { ApiClient } from './api.js';
import { loadJourney, performCuration, refreshCuration, selectFeature } from './controller.js';
import {
  renderCandidateTable,
  renderConceptMapSvg,
  renderErrorBanner,
  renderFeatureList,
  renderJourneyPanel,
  renderRelationForm,
  renderSuggestedRelations,
} from './render.js';
import { initialState } from './state.js';

const api = new ApiClient('');
const state = initialState();

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing #${id}`);
  }
  return node;
}

function render(): void {
  el('banner').innerHTML = renderErrorBanner(state.error);
  el('features').innerHTML = renderFeatureList(state.features, state.selected);
  el('candidates').innerHTML = renderCandidateTable(state.selected, state.candidates);
  el('map').innerHTML = renderConceptMapSvg(state.map);
  el('relate').innerHTML = renderRelationForm(state.map);
  el('suggested').innerHTML = renderSuggestedRelations(state.suggested);
  el('journey').innerHTML = renderJourneyPanel(state.journey);
  el('revision').textContent = `revision ${state.revision}`;
}

async function onClick(event: MouseEvent): Promise<void> {
  const target = (event.target as HTMLElement).closest('button[data-action]');
  if (!(target instanceof HTMLButtonElement)) {
    return;
  }
  const action = target.dataset.action;
  if (action === 'select-feature') {
    await selectFeature(state, api, target.dataset.feature!);
  } else if (action === 'accept' || action === 'reject') {
    if (state.selected !== null) {
      await performCuration(state, api, {
        op: action,
        feature: state.selected,
        term: target.dataset.term!,
      });
    }
  } else if (action === 'promote') {
    await performCuration(state, api, {
      op: 'relate',
      a: target.dataset.a!,
      label: target.dataset.label!,
      b: target.dataset.b!,
    });
  } else {
    return;
  }
  render();
}

async function onRelateSubmit(event: SubmitEvent): Promise<void> {
  event.preventDefault();
  const form = event.target as HTMLFormElement;
  const data = new FormData(form);
  await performCuration(state, api, {
    op: 'relate',
    a: String(data.get('a')),
    label: String(data.get('label')),
    b: String(data.get('b')),
  });
  render();
}

async function onJourneySubmit(event: SubmitEvent): Promise<void> {
  event.preventDefault();
  const data = new FormData(event.target as HTMLFormElement);
  const background = String(data.get('background') || 'default');
  const seed = parseInt(String(data.get('seed') || '42'), 10);
  await loadJourney(state, api, background, seed);
  render();
}

async function bootstrap(): Promise<void> {
  document.body.addEventListener('click', (event) => {
    void onClick(event);
  });
  el('relate').addEventListener('submit', (event) => {
    void onRelateSubmit(event as SubmitEvent);
  });
  el('journey-form').addEventListener('submit', (event) => {
    void onJourneySubmit(event as SubmitEvent);
  });
  try {
    await refreshCuration(state, api);
    if (state.features.length > 0) {
      await selectFeature(state, api, state.features[0].feature);
    }
  } catch (error) {
    state.error = error instanceof Error ? error.message : String(error);
  }
  render();
}

void bootstrap();
