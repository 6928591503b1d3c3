/** Pure view models: service payloads in, display rows out.
 *
 * No arithmetic happens here; cells are formatted verbatim from the
 * response so every number on screen is traceable to an API field.
 */

import type {
  BreakdownJson,
  CellValue,
  OffersResponse,
  QuantityJson,
  RecommendResponse,
} from './types';

export interface TableModel {
  catalogVersion: number;
  columns: string[];
  rows: string[][];
  count: number;
}

function isQuantity(cell: CellValue): cell is QuantityJson {
  return typeof cell === 'object' && cell !== null && !Array.isArray(cell)
    && 'value' in cell && 'unit' in cell;
}

export function formatCell(cell: CellValue): string {
  if (cell === null) return '';
  if (Array.isArray(cell)) return cell.map(formatCell).join(', ');
  if (isQuantity(cell)) return `${cell.value} ${cell.unit}`;
  return String(cell);
}

export function tableModel(response: OffersResponse): TableModel {
  return {
    catalogVersion: response.catalog_version,
    columns: [...response.columns],
    rows: response.rows.map((row) => row.map(formatCell)),
    count: response.count,
  };
}

export interface BreakdownRow {
  label: string;
  quantity: string;
  unitRate: string;
  amount: string;
}

export interface BreakdownModel {
  currency: string;
  rows: BreakdownRow[];
  /** The total exactly as the service reported it. */
  total: string;
}

export function breakdownModel(breakdown: BreakdownJson): BreakdownModel {
  return {
    currency: breakdown.currency,
    rows: breakdown.line_items.map((item) => ({
      label: item.label,
      quantity: String(item.quantity),
      unitRate: String(item.unit_rate),
      amount: String(item.amount),
    })),
    total: String(breakdown.total),
  };
}

export interface RecommendationRow {
  rank: number;
  provider: string;
  members: string[];
  total: string;
  currency: string;
  breakdown: BreakdownModel;
}

export interface RecommendationModel {
  catalogVersion: number;
  feasible: boolean;
  rows: RecommendationRow[];
}

export function recommendationModel(response: RecommendResponse): RecommendationModel {
  return {
    catalogVersion: response.catalog_version,
    feasible: response.recommendations.length > 0,
    rows: response.recommendations.map((rec) => ({
      rank: rec.rank,
      provider: rec.provider,
      members: [rec.bundle.compute, rec.bundle.storage, rec.bundle.network]
        .filter((id): id is string => id !== null),
      total: String(rec.breakdown.total),
      currency: rec.breakdown.currency,
      breakdown: breakdownModel(rec.breakdown),
    })),
  };
}
