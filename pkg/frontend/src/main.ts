import { ApiClient } from './api.js';
import { App } from './app.js';
import { exportEnabled } from './state.js';
import type { ExportPayload } from './types.js';
import { renderApp } from './view.js';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app container');

const client = new ApiClient('');
let preview: ExportPayload | null = null;

const app = new App(client, (state) => {
  root.innerHTML = renderApp(state, preview);
  wire();
});

function wire(): void {
  document.getElementById('accept')?.addEventListener('click', () => void app.accept());
  document.getElementById('block')?.addEventListener('click', () => void app.block());
  document.getElementById('merge')?.addEventListener('click', () => app.openMergePicker());
  document.getElementById('undo')?.addEventListener('click', () => void app.undo());
  document.getElementById('merge-cancel')?.addEventListener('click', () => app.closeMergePicker());
  for (const el of document.querySelectorAll<HTMLButtonElement>('.merge-target')) {
    el.addEventListener('click', () => void app.merge(el.dataset.target ?? ''));
  }
  document.getElementById('export')?.addEventListener('click', () => void exportTopics());
}

async function exportTopics(): Promise<void> {
  if (!exportEnabled(app.state)) return;
  preview = await app.exportTopics();
  root!.innerHTML = renderApp(app.state, preview);
  wire();
  const blob = new Blob([JSON.stringify(preview.topics, null, 2)], {
    type: 'application/json',
  });
  const link = document.createElement('a');
  link.href = URL.createObjectURL(blob);
  link.download = 'topics.json';
  link.click();
  URL.revokeObjectURL(link.href);
}

document.addEventListener('keydown', (event) => {
  if (event.target instanceof HTMLInputElement) return;
  if (app.handleKey(event.key)) event.preventDefault();
});

void app.refresh();
