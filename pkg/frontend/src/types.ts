/** Payload shapes of the /v1 catalog service. */

export type OfferKind = 'compute' | 'storage' | 'network';

export type SortDirection = 'asc' | 'desc';

export interface QuantityJson {
  value: number;
  unit: string;
}

/** A table cell as the offers endpoints emit it. */
export type CellValue = string | number | boolean | null | QuantityJson | CellValue[];

export interface OffersResponse {
  catalog_version: number;
  kind: OfferKind;
  columns: string[];
  rows: CellValue[][];
  count: number;
}

export interface ProvidersResponse {
  catalog_version: number;
  providers: Array<{
    name: string;
    currency: string;
    terminology: Record<string, string>;
    deployment_model: string | null;
  }>;
}

export interface LineItemJson {
  label: string;
  quantity: number;
  unit_rate: number;
  amount: number;
}

export interface BreakdownJson {
  currency: string;
  label: string;
  line_items: LineItemJson[];
  total: number;
}

export interface RecommendationJson {
  rank: number;
  provider: string;
  bundle: {
    compute: string;
    storage: string | null;
    network: string | null;
  };
  breakdown: BreakdownJson;
  catalog_version: number;
}

export interface RecommendResponse {
  catalog_version: number;
  recommendations: RecommendationJson[];
}

export interface ErrorResponse {
  errors: Array<Record<string, unknown>>;
}

/** Scenario body for POST /v1/recommend (all fields optional server-side). */
export interface ScenarioBody {
  compute_hours: number;
  instance_count: number;
  min_cores: number;
  min_memory_gb: number;
  min_clock_ghz?: number;
  storage_gb: number;
  storage_duration_days: number;
  persistent_storage: boolean;
  request_counts: Record<string, number>;
  transfer_in_gb: number;
  transfer_out_gb: number;
  location?: string;
  name_regex?: string;
  top_k?: number;
}

export const REQUEST_VERBS = [
  'PUT', 'COPY', 'POST', 'LIST', 'GET', 'HEAD', 'DELETE', 'SEARCH', 'TRANSACTION',
] as const;

export const CONTINENTS = [
  'NorthAmerica', 'SouthAmerica', 'Africa', 'Europe', 'Asia', 'Australia',
] as const;
