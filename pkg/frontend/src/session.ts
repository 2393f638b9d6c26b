import type { ServiceClient } from './api.js';
import { debounce } from './debounce.js';
import {
  commitWord,
  contextWords,
  distinctSurfaces,
  initialState,
  withDraft,
  withOffline,
  withPendingMask,
  withSuggestions,
  type SessionState,
} from './state.js';

export const DEBOUNCE_MS = 120;
export const PANEL_SIZE = 5;

/** Session driver: owns the state, talks to the service, and enforces the
 * ordering rules the view must never have to think about.
 *
 * Every suggest request gets a sequence number; a response only renders
 * when its number still matches the newest request, so an out-of-order
 * arrival for an older draft can never overwrite a newer panel. Commits
 * go through the disambiguation endpoint with the full committed list as
 * context; an ambiguous answer becomes a pending mask for the user to
 * settle instead of being committed silently.
 */
export class Session {
  private state: SessionState = initialState();
  private suggestSeq = 0;
  private commitSeq = 0;
  private readonly scheduleSuggest: ReturnType<typeof debounce<[string]>>;

  constructor(
    private readonly client: ServiceClient,
    private readonly onChange: (state: SessionState) => void,
    debounceMs: number = DEBOUNCE_MS,
  ) {
    this.scheduleSuggest = debounce(
      (draft: string) => void this.requestSuggestions(draft),
      debounceMs,
    );
  }

  snapshot(): SessionState {
    return this.state;
  }

  /** Keystroke entry point. */
  setDraft(draft: string): void {
    const trimmed = draft.trim();
    this.update(withDraft(this.state, trimmed));
    if (!trimmed) {
      this.suggestSeq += 1; // anything in flight is now stale
      this.scheduleSuggest.cancel();
      return;
    }
    this.scheduleSuggest(trimmed);
  }

  /** Accept the current draft as the next word. The service decides what
   * it means; a masked answer surfaces as a chooser. */
  async acceptDraft(): Promise<void> {
    const draft = this.state.draft;
    if (!draft) return;
    this.scheduleSuggest.cancel();
    const seq = ++this.commitSeq;
    try {
      const detail = await this.client.disambiguate(draft, contextWords(this.state));
      if (seq !== this.commitSeq) return; // superseded by a newer commit
      this.update(withOffline(this.state, false));
      const slot = detail.slots[0];
      if (slot && slot.masked && slot.candidates && slot.candidates.length > 1) {
        this.update(
          withPendingMask(this.state, {
            token: slot.token,
            winner: slot.winner,
            candidates: slot.candidates,
          }),
        );
        return;
      }
      const untransliterated = slot !== undefined && slot.provenance === 'verbatim';
      this.update(commitWord(this.state, detail.sinhala, untransliterated));
    } catch {
      if (seq !== this.commitSeq) return;
      // fail open: the user keeps typing, the raw token is kept and flagged
      this.update(withOffline(commitWord(this.state, draft, true), true));
    }
  }

  /** Commit a word straight from the suggestion panel. */
  commitSuggestion(word: string): void {
    this.commitSeq += 1; // retire any disambiguation still in flight
    this.scheduleSuggest.cancel();
    this.update(commitWord(this.state, word, false));
  }

  /** Settle a pending ambiguity prompt with the chosen sense. */
  resolveMask(word: string): void {
    if (!this.state.pendingMask) return;
    this.update(commitWord(this.state, word, false));
  }

  private async requestSuggestions(draft: string): Promise<void> {
    const seq = ++this.suggestSeq;
    let rows;
    try {
      // over-fetch keys, then collapse to distinct words for the panel
      const response = await this.client.suggest(draft, PANEL_SIZE * 4);
      rows = distinctSurfaces(response.suggestions).slice(0, PANEL_SIZE);
    } catch {
      if (seq !== this.suggestSeq) return;
      this.update(withOffline(this.state, true));
      return;
    }
    if (seq !== this.suggestSeq || this.state.draft !== draft) return; // stale
    this.update(withSuggestions(withOffline(this.state, false), rows));
  }

  private update(next: SessionState): void {
    this.state = next;
    this.onChange(next);
  }
}
