import {
  UiState,
  barWidthPct,
  exportEnabled,
  mergeEnabled,
  progressLabel,
  queueDone,
} from './state.js';
import type { ExportPayload } from './types.js';

function esc(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;');
}

export function renderApp(state: UiState, preview: ExportPayload | null): string {
  return `
    <header>
      <h1>topic curation</h1>
      <div class="progress" data-testid="progress">${esc(progressLabel(state))} topics</div>
    </header>
    ${state.lastError ? `<div class="error" data-testid="error">${esc(state.lastError)}</div>` : ''}
    ${state.lastAction ? `<div class="status">${esc(state.lastAction)}</div>` : ''}
    <main>
      <section class="queue">
        <h2>candidate queue</h2>
        ${renderQueue(state)}
      </section>
      <section class="accepted">
        <h2>accepted topics</h2>
        ${renderAccepted(state)}
        <div class="export-row">
          <button id="export" ${exportEnabled(state) ? '' : 'disabled'}>export top-${
            state.session?.target_k ?? 10
          }</button>
        </div>
        ${preview ? renderPreview(preview) : ''}
      </section>
    </main>
    ${state.mergeOpen ? renderMergePicker(state) : ''}
    <footer>shortcuts: <kbd>a</kbd> accept · <kbd>b</kbd> block · <kbd>m</kbd> merge · <kbd>u</kbd> undo</footer>
  `;
}

function renderQueue(state: UiState): string {
  if (queueDone(state)) {
    return `<p class="done" data-testid="queue-done">curation complete</p>`;
  }
  const rows = state.candidates
    .map(
      (c, i) => `
      <tr class="${i === 0 ? 'head' : ''}" data-phrase="${esc(c.phrase)}">
        <td class="rank">${c.rank}</td>
        <td class="phrase">${esc(c.display_form)}</td>
        <td class="total">${c.weighted_total.toLocaleString()}</td>
        <td class="actions">${
          i === 0
            ? `<button id="accept">accept</button>
               <button id="block">block</button>
               <button id="merge" ${mergeEnabled(state) ? '' : 'disabled'}>merge</button>`
            : ''
        }</td>
      </tr>`,
    )
    .join('');
  return `
    <table>
      <thead><tr><th>#</th><th>phrase</th><th>weighted</th><th></th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
    <button id="undo" ${state.session && state.session.decisions_count > 0 ? '' : 'disabled'}>undo last</button>
  `;
}

function renderAccepted(state: UiState): string {
  const accepted = state.session?.accepted ?? [];
  if (accepted.length === 0) return '<p class="empty">none yet</p>';
  return `<ol>${accepted.map((p) => `<li>${esc(p)}</li>`).join('')}</ol>`;
}

function renderMergePicker(state: UiState): string {
  const accepted = state.session?.accepted ?? [];
  return `
    <div class="picker" data-testid="merge-picker">
      <div class="picker-box">
        <h3>merge into</h3>
        ${accepted
          .map((t) => `<button class="merge-target" data-target="${esc(t)}">${esc(t)}</button>`)
          .join('')}
        <button id="merge-cancel">cancel</button>
      </div>
    </div>
  `;
}

export function renderPreview(payload: ExportPayload): string {
  const bars = payload.plot
    .map(
      (row) => `
      <div class="bar-row">
        <span class="bar-label">${row.rank}. ${esc(row.display_form)}</span>
        <div class="bar band-${row.band}" style="width:${barWidthPct(row, payload.plot)}%"></div>
      </div>`,
    )
    .join('');
  return `<div class="preview" data-testid="preview">${bars}</div>`;
}
