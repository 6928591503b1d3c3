/** Fetch client for the /v1 catalog service.
 *
 * Filtering, sorting, and column projection are all expressed as query
 * parameters so the server does the work; the client renders responses
 * verbatim. Each widget keeps at most one request in flight: a newer
 * request aborts the previous one (latest wins).
 */

import type {
  OffersResponse,
  OfferKind,
  ProvidersResponse,
  RecommendResponse,
  ScenarioBody,
  SortDirection,
} from './types';
import type { WidgetState } from './state';

export const DEFAULT_API_BASE = 'http://127.0.0.1:8080';

export interface OfferQuery {
  kind: OfferKind;
  minCores?: number;
  minMemoryGb?: number;
  minClockGhz?: number;
  sizeGb?: number;
  location?: string;
  nameRegex?: string;
  sort?: string | null;
  order?: SortDirection;
  columns?: string[];
}

/** Build the query string exactly as the CLI flags map to it. */
export function offersQueryString(query: OfferQuery): string {
  const params = new URLSearchParams();
  if (query.minCores !== undefined) params.set('min_cores', String(query.minCores));
  if (query.minMemoryGb !== undefined) {
    params.set('min_memory_gb', String(query.minMemoryGb));
  }
  if (query.minClockGhz !== undefined) {
    params.set('min_clock_ghz', String(query.minClockGhz));
  }
  if (query.sizeGb !== undefined) params.set('size_gb', String(query.sizeGb));
  if (query.location) params.set('location', query.location);
  if (query.nameRegex) params.set('name_regex', query.nameRegex);
  if (query.sort) {
    params.set('sort', query.sort);
    params.set('order', query.order ?? 'asc');
  }
  if (query.columns && query.columns.length > 0) {
    params.set('columns', query.columns.join(','));
  }
  const text = params.toString();
  return text ? `?${text}` : '';
}

export function offersUrl(base: string, query: OfferQuery): string {
  return `${base}/v1/offers/${query.kind}${offersQueryString(query)}`;
}

function asNumber(raw: string): number | undefined {
  const trimmed = raw.trim();
  return trimmed === '' ? undefined : Number(trimmed);
}

/** The widget forms expressed as one offers query per kind. */
export function queryFromState(state: WidgetState, kind: OfferKind): OfferQuery {
  const sort = state.sort[kind];
  const base: OfferQuery = {
    kind,
    sort: sort.key,
    order: sort.direction,
    columns: state.columns[kind].visible,
  };
  if (kind === 'compute') {
    return {
      ...base,
      minCores: asNumber(state.compute.minCores),
      minMemoryGb: asNumber(state.compute.minMemoryGb),
      minClockGhz: asNumber(state.compute.minClockGhz),
      location: state.compute.location || undefined,
      nameRegex: state.compute.nameRegex || undefined,
    };
  }
  if (kind === 'storage') {
    return {
      ...base,
      sizeGb: asNumber(state.storage.sizeGb),
      location: state.storage.location || undefined,
      nameRegex: state.storage.nameRegex || undefined,
    };
  }
  return {
    ...base,
    location: state.network.location || undefined,
    nameRegex: state.network.nameRegex || undefined,
  };
}

/** Combine the three widget forms into one recommend scenario. */
export function scenarioFromState(state: WidgetState, topK = 10): ScenarioBody {
  const counts: Record<string, number> = {};
  for (const [verb, raw] of Object.entries(state.storage.requestCounts)) {
    const value = asNumber(raw);
    if (value !== undefined && value > 0) counts[verb] = value;
  }
  const body: ScenarioBody = {
    compute_hours: asNumber(state.compute.computeHours) ?? 0,
    instance_count: asNumber(state.compute.instanceCount) ?? 0,
    min_cores: asNumber(state.compute.minCores) ?? 0,
    min_memory_gb: asNumber(state.compute.minMemoryGb) ?? 0,
    storage_gb: asNumber(state.storage.sizeGb) ?? 0,
    storage_duration_days: asNumber(state.storage.durationDays) ?? 0,
    persistent_storage: state.storage.persistent,
    request_counts: counts,
    transfer_in_gb: asNumber(state.network.transferInGb) ?? 0,
    transfer_out_gb: asNumber(state.network.transferOutGb) ?? 0,
    top_k: topK,
  };
  const clock = asNumber(state.compute.minClockGhz);
  if (clock !== undefined) body.min_clock_ghz = clock;
  if (state.compute.location) body.location = state.compute.location;
  if (state.compute.nameRegex) body.name_regex = state.compute.nameRegex;
  return body;
}

export class ApiError extends Error {
  constructor(readonly status: number, readonly detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export class ApiClient {
  private controllers = new Map<string, AbortController>();

  constructor(
    readonly base: string = DEFAULT_API_BASE,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  /** Abort whatever request the channel had in flight and start a new one. */
  private takeChannel(channel: string): AbortSignal {
    this.controllers.get(channel)?.abort();
    const controller = new AbortController();
    this.controllers.set(channel, controller);
    return controller.signal;
  }

  private async request<T>(channel: string, url: string, init?: RequestInit): Promise<T> {
    const signal = this.takeChannel(channel);
    const response = await this.fetchImpl(url, { ...init, signal });
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return response.json() as Promise<T>;
  }

  fetchOffers(query: OfferQuery): Promise<OffersResponse> {
    return this.request<OffersResponse>(query.kind, offersUrl(this.base, query));
  }

  fetchProviders(): Promise<ProvidersResponse> {
    return this.request<ProvidersResponse>('providers', `${this.base}/v1/providers`);
  }

  fetchRecommendations(body: ScenarioBody): Promise<RecommendResponse> {
    return this.request<RecommendResponse>('recommend', `${this.base}/v1/recommend`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
  }
}
