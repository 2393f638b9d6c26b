import type { CandidateScore, SuggestionRow } from './api.js';

/** A word the user accepted, with where it came from. */
export interface CommittedWord {
  word: string;
  /** true when the service never saw the token (offline or verbatim) */
  untransliterated: boolean;
}

/** An ambiguity prompt awaiting the user's pick. */
export interface PendingMask {
  token: string;
  winner: string;
  candidates: CandidateScore[];
}

export interface SessionState {
  committed: CommittedWord[];
  draft: string;
  suggestions: SuggestionRow[];
  pendingMask: PendingMask | null;
  offline: boolean;
}

export function initialState(): SessionState {
  return {
    committed: [],
    draft: '',
    suggestions: [],
    pendingMask: null,
    offline: false,
  };
}

/** The committed surface forms, in order; this is the context every
 * disambiguation request carries. */
export function contextWords(state: SessionState): string[] {
  return state.committed.map((c) => c.word);
}

export function withDraft(state: SessionState, draft: string): SessionState {
  // an emptied draft has nothing to suggest for
  const suggestions = draft ? state.suggestions : [];
  return { ...state, draft, suggestions };
}

export function withSuggestions(
  state: SessionState,
  rows: SuggestionRow[],
): SessionState {
  return { ...state, suggestions: rows };
}

export function withOffline(state: SessionState, offline: boolean): SessionState {
  return { ...state, offline };
}

export function withPendingMask(
  state: SessionState,
  mask: PendingMask | null,
): SessionState {
  return { ...state, pendingMask: mask };
}

export function commitWord(
  state: SessionState,
  word: string,
  untransliterated = false,
): SessionState {
  return {
    ...state,
    committed: [...state.committed, { word, untransliterated }],
    draft: '',
    suggestions: [],
    pendingMask: null,
  };
}

/** Collapse spelling-variant rows to one row per Sinhala surface, keeping
 * rank order; the panel shows words, not lexicon keys. */
export function distinctSurfaces(rows: SuggestionRow[]): SuggestionRow[] {
  const seen = new Set<string>();
  const out: SuggestionRow[] = [];
  for (const row of rows) {
    if (seen.has(row.sinhala)) continue;
    seen.add(row.sinhala);
    out.push(row);
  }
  return out;
}
