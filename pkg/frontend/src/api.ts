import type {
  CandidatesPayload,
  ConceptMapPayload,
  FeatureRow,
  JourneyPayload,
  LedgerAction,
  SuggestedRelation,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

/** Thin fetch wrapper; the last revision observed from X-Revision is kept. */
export class ApiClient {
  revision = 0;

  constructor(private readonly baseUrl: string = '') {}

  async getFeatures(): Promise<FeatureRow[]> {
    return this.request<FeatureRow[]>('GET', '/api/features');
  }

  async getCandidates(feature: string): Promise<CandidatesPayload> {
    return this.request<CandidatesPayload>(
      'GET',
      `/api/features/${encodeURIComponent(feature)}/candidates`,
    );
  }

  async getMap(): Promise<ConceptMapPayload> {
    return this.request<ConceptMapPayload>('GET', '/api/map');
  }

  async getSuggestedRelations(): Promise<SuggestedRelation[]> {
    return this.request<SuggestedRelation[]>('GET', '/api/suggested-relations');
  }

  async getJourney(background: string, seed: number): Promise<JourneyPayload> {
    const query = `background=${encodeURIComponent(background)}&seed=${seed}`;
    return this.request<JourneyPayload>('GET', `/api/journey?${query}`);
  }

  async postAction(action: LedgerAction): Promise<number> {
    const payload = await this.request<{ revision: number }>('POST', '/api/curation', action);
    return payload.revision;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const revision = response.headers.get('X-Revision');
    if (revision !== null) {
      this.revision = parseInt(revision, 10);
    }
    if (!response.ok) {
      let message = `${response.status}`;
      try {
        const payload = (await response.json()) as { error?: string };
        if (payload.error) {
          message = payload.error;
        }
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, message);
    }
    return (await response.json()) as T;
  }
}
