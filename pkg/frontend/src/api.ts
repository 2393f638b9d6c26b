/** Typed client for the transliteration service HTTP API.
 *
 * All transliteration logic lives on the server; this module only shapes
 * requests and narrows responses. Field names mirror the service JSON.
 */

export interface SuggestionRow {
  key: string;
  sinhala: string;
  frequency: number;
}

export interface SuggestResponse {
  prefix: string;
  suggestions: SuggestionRow[];
}

export interface TransliterateResponse {
  sinhala: string;
  mode: string;
}

export interface CandidateScore {
  word: string;
  frequency: number;
  score: number;
}

export interface SlotDetail {
  token: string;
  lead: string;
  trail: string;
  winner: string;
  provenance: string;
  masked: boolean;
  candidates?: CandidateScore[];
}

export interface DisambiguationDetail {
  sinhala: string;
  score: number;
  scorer_calls: number;
  slots: SlotDetail[];
}

export interface HealthResponse {
  status: string;
  lexicon_entries: number;
  models: boolean;
  modes: string[];
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function asJson<T>(response: Response): Promise<T> {
  const body = (await response.json().catch(() => null)) as
    | (T & { error?: string })
    | null;
  if (!response.ok) {
    throw new ApiError(response.status, body?.error ?? `HTTP ${response.status}`);
  }
  if (body === null) {
    throw new ApiError(response.status, 'empty response body');
  }
  return body;
}

export class ServiceClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async health(): Promise<HealthResponse> {
    return asJson(await this.fetchFn(`${this.baseUrl}/health`));
  }

  async suggest(prefix: string, k?: number): Promise<SuggestResponse> {
    const query = new URLSearchParams({ prefix });
    if (k !== undefined) query.set('k', String(k));
    return asJson(await this.fetchFn(`${this.baseUrl}/suggest?${query}`));
  }

  async transliterate(
    text: string,
    mode?: string,
    context?: string[],
  ): Promise<TransliterateResponse> {
    return asJson(await this.post('/transliterate', { text, mode, context }));
  }

  async disambiguate(text: string, context: string[]): Promise<DisambiguationDetail> {
    return asJson(await this.post('/disambiguate', { text, context }));
  }

  private post(path: string, payload: object): Promise<Response> {
    return this.fetchFn(`${this.baseUrl}${path}`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
  }
}
