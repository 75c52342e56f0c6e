import type {
  Candidate,
  DecisionAction,
  ExportPayload,
  SessionSummary,
} from './types.js';

/** Error body from the service: {code, message} mapped onto HTTP statuses. */
export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

/** Thin fetch wrapper over the curation endpoints. Stateless: every
 * mutation returns the server's post-decision session summary. */
export class ApiClient {
  constructor(private readonly baseUrl: string = '') {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(this.baseUrl + path, {
      headers: { 'content-type': 'application/json' },
      ...init,
    });
    if (!res.ok) {
      let code = 'error';
      let message = res.statusText;
      try {
        const body = (await res.json()) as { code?: string; message?: string };
        if (body.code) code = body.code;
        if (body.message) message = body.message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(code, message, res.status);
    }
    return (await res.json()) as T;
  }

  session(): Promise<SessionSummary> {
    return this.request('/api/session');
  }

  candidates(limit = 50): Promise<Candidate[]> {
    return this.request(`/api/candidates?limit=${limit}`);
  }

  decide(phrase: string, action: DecisionAction, target?: string): Promise<SessionSummary> {
    return this.request('/api/decisions', {
      method: 'POST',
      body: JSON.stringify(target === undefined ? { phrase, action } : { phrase, action, target }),
    });
  }

  undo(): Promise<SessionSummary> {
    return this.request('/api/decisions/last', { method: 'DELETE' });
  }

  exportTopics(upto = 20): Promise<ExportPayload> {
    return this.request(`/api/export/topics?upto=${upto}`);
  }
}
