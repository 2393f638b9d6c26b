import { ServiceClient } from './api.js';
import { Session } from './session.js';
import type { SessionState } from './state.js';

const DEFAULT_SERVICE = 'http://127.0.0.1:8750';

const params = new URLSearchParams(window.location.search);
const client = new ServiceClient(params.get('service') ?? DEFAULT_SERVICE);

const statusEl = document.getElementById('status')!;
const committedEl = document.getElementById('committed')!;
const draftEl = document.getElementById('draft') as HTMLInputElement;
const panelEl = document.getElementById('panel')!;
const maskEl = document.getElementById('mask')!;

function render(state: SessionState) {
  statusEl.textContent = state.offline ? 'service unreachable' : '';
  statusEl.className = state.offline ? 'offline' : '';

  committedEl.innerHTML = '';
  for (const item of state.committed) {
    const span = document.createElement('span');
    span.textContent = item.word;
    if (item.untransliterated) span.className = 'raw';
    committedEl.appendChild(span);
  }

  panelEl.innerHTML = '';
  if (state.draft && !state.suggestions.length && !state.pendingMask) {
    const li = document.createElement('li');
    li.className = 'empty';
    li.textContent = 'no suggestions';
    panelEl.appendChild(li);
  }
  state.suggestions.forEach((row, i) => {
    const li = document.createElement('li');
    li.innerHTML = `<strong>${i + 1}.</strong> ${row.sinhala} <span class="key">${row.key}</span>`;
    li.addEventListener('click', () => {
      session.commitSuggestion(row.sinhala);
      draftEl.value = '';
      draftEl.focus();
    });
    panelEl.appendChild(li);
  });

  maskEl.innerHTML = '';
  if (state.pendingMask) {
    const label = document.createElement('div');
    label.className = 'mask-label';
    label.textContent = `"${state.pendingMask.token}" is ambiguous:`;
    maskEl.appendChild(label);
    for (const cand of state.pendingMask.candidates) {
      const button = document.createElement('button');
      button.textContent = `${cand.word}  (${cand.score.toExponential(2)})`;
      if (cand.word === state.pendingMask.winner) button.className = 'winner';
      button.addEventListener('click', () => {
        session.resolveMask(cand.word);
        draftEl.value = '';
        draftEl.focus();
      });
      maskEl.appendChild(button);
    }
  }
}

const session = new Session(client, render);

draftEl.addEventListener('input', () => session.setDraft(draftEl.value));

draftEl.addEventListener('keydown', (ev) => {
  const state = session.snapshot();
  if (ev.key === ' ' || ev.key === 'Enter') {
    ev.preventDefault();
    if (state.pendingMask) {
      session.resolveMask(state.pendingMask.winner);
    } else {
      void session.acceptDraft();
    }
    draftEl.value = '';
    return;
  }
  // digits pick straight from the panel, IME style
  if (ev.key >= '1' && ev.key <= '9' && state.suggestions.length) {
    const row = state.suggestions[parseInt(ev.key, 10) - 1];
    if (row) {
      ev.preventDefault();
      session.commitSuggestion(row.sinhala);
      draftEl.value = '';
    }
  }
});

client
  .health()
  .then((health) => {
    statusEl.textContent = `ready, ${health.lexicon_entries} lexicon entries`;
    setTimeout(() => {
      if (!session.snapshot().offline) statusEl.textContent = '';
    }, 2500);
  })
  .catch(() => {
    statusEl.textContent = 'service unreachable';
    statusEl.className = 'offline';
  });

draftEl.focus();
