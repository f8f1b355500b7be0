/**
 * End-to-end check against the real curation service.
 *
 * Spawns `python3 -m splboard serve` on a throwaway copy of the NavSPL
 * project with an empty ledger, then drives the same controller code the
 * UI buttons call: accept -> reject -> accept must leave the term accepted
 * and exactly three ledger lines behind.
 */

import assert from 'node:assert/strict';
import { spawn, type ChildProcess } from 'node:child_process';
import { cpSync, mkdtempSync, readFileSync, rmSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { after, before, test } from 'node:test';

import { ApiClient } from '../src/api.js';
import { performCuration, refreshCuration, selectFeature } from '../src/controller.js';
import { initialState } from '../src/state.js';

const REPO_ROOT = join(dirname(fileURLToPath(import.meta.url)), '..', '..', '..');

let child: ChildProcess | null = null;
let projectDir: string;
let base = '';

function startServer(): Promise<string> {
  return new Promise((resolve, reject) => {
    const proc = spawn('python3', ['-m', 'splboard', 'serve', '-c', join(projectDir, 'project.cfg'), '--port', '0'], {
      cwd: REPO_ROOT,
      env: { ...process.env, PYTHONPATH: join(REPO_ROOT, 'src') },
    });
    child = proc;
    let stderr = '';
    const timer = setTimeout(() => reject(new Error(`server did not start:\n${stderr}`)), 30_000);
    proc.stderr!.on('data', (chunk: Buffer) => {
      stderr += chunk.toString();
      const match = stderr.match(/serving on (http:\/\/127\.0\.0\.1:\d+)\//);
      if (match !== null) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
    proc.on('exit', (code) => {
      clearTimeout(timer);
      reject(new Error(`server exited early (${code}):\n${stderr}`));
    });
  });
}

before(async () => {
  projectDir = join(mkdtempSync(join(tmpdir(), 'splboard-ui-')), 'navspl');
  cpSync(join(REPO_ROOT, 'fixtures', 'navspl'), projectDir, {
    recursive: true,
    filter: (source) => !source.includes(`${join('navspl', 'out')}`),
  });
  writeFileSync(join(projectDir, 'ledger.jsonl'), '');
  const config = join(projectDir, 'project.cfg');
  const text = readFileSync(config, 'utf-8').replace(/iterations = \d+/, 'iterations = 30');
  writeFileSync(config, text);
  base = await startServer();
});

after(() => {
  if (child !== null) {
    child.removeAllListeners('exit');
    child.kill('SIGTERM');
  }
  rmSync(dirname(projectDir), { recursive: true, force: true });
});

test('accept -> reject -> accept ends accepted with ledger length 3', async () => {
  const api = new ApiClient(base);
  const state = initialState();
  await refreshCuration(state, api);
  assert.equal(state.revision, 0); // empty ledger to start from
  await selectFeature(state, api, 'Map');

  const term = state.candidates[0].term;
  for (const op of ['accept', 'reject', 'accept'] as const) {
    const ok = await performCuration(state, api, { op, feature: 'Map', term });
    assert.equal(ok, true);
  }

  const row = state.candidates.find((r) => r.term === term);
  assert.equal(row?.status, 'accepted');
  assert.equal(state.revision, 3);

  const ledger = readFileSync(join(projectDir, 'ledger.jsonl'), 'utf-8')
    .split('\n')
    .filter((line) => line.trim().length > 0);
  assert.equal(ledger.length, 3);
  assert.deepEqual(
    ledger.map((line) => (JSON.parse(line) as { op: string }).op),
    ['accept', 'reject', 'accept'],
  );
});

test('rendered orders match live API payloads', async () => {
  const api = new ApiClient(base);
  const features = await api.getFeatures();
  const { renderFeatureList, renderCandidateTable } = await import('../src/render.js');
  const listHtml = renderFeatureList(features, null);
  const listOrder = [...listHtml.matchAll(/data-feature="([^"]*)"/g)].map((m) => m[1]);
  assert.deepEqual(listOrder, features.map((f) => f.feature));

  const payload = await api.getCandidates('GPS');
  const tableHtml = renderCandidateTable('GPS', payload.candidates);
  const rowOrder = [...tableHtml.matchAll(/<tr data-term="([^"]*)"/g)].map((m) => m[1]);
  assert.deepEqual(rowOrder, payload.candidates.map((c) => c.term));
});

test('server rejection rolls the optimistic update back', async () => {
  const api = new ApiClient(base);
  const state = initialState();
  await refreshCuration(state, api);
  await selectFeature(state, api, 'GPS');
  const before_rows = state.candidates;
  const ok = await performCuration(state, api, {
    op: 'relate',
    a: 'nonexistent',
    label: 'x',
    b: 'also_missing',
  });
  assert.equal(ok, false);
  assert.notEqual(state.error, null);
  assert.deepEqual(state.candidates, before_rows);
});
