/** Thin typed client for the exploration API. Read-only by design. */

import type {
  CompanySummary,
  EntriesPayload,
  ErrorDetail,
  HealthPayload,
  SubgraphPayload,
} from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: ErrorDetail | string,
  ) {
    super(typeof detail === 'string' ? detail : `${detail.error}: ${detail.id ?? ''}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl = '',
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      let detail: ErrorDetail | string = response.statusText;
      try {
        const body = (await response.json()) as { detail?: ErrorDetail | string };
        if (body.detail !== undefined) detail = body.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  health(): Promise<HealthPayload> {
    return this.request('/healthz');
  }

  searchCompanies(query: string, limit = 20): Promise<CompanySummary[]> {
    const params = new URLSearchParams({ q: query, limit: String(limit) });
    return this.request(`/api/v1/companies?${params}`);
  }

  companyDetail(id: string): Promise<CompanySummary> {
    return this.request(`/api/v1/companies/${encodeURIComponent(id)}`);
  }

  rankCompanies(ids: string[]): Promise<EntriesPayload> {
    return this.request('/api/v1/rankings', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ ids }),
    });
  }

  whitespace(id: string, limit = 10): Promise<EntriesPayload> {
    return this.request(
      `/api/v1/companies/${encodeURIComponent(id)}/whitespace?limit=${limit}`,
    );
  }

  subgraphToRoot(id: string, maxPaths = 5): Promise<SubgraphPayload> {
    return this.request(
      `/api/v1/companies/${encodeURIComponent(id)}/subgraph?maxPaths=${maxPaths}`,
    );
  }

  neighbors(id: string, limit = 10): Promise<SubgraphPayload> {
    return this.request(
      `/api/v1/nodes/${encodeURIComponent(id)}/neighbors?limit=${limit}`,
    );
  }
}
