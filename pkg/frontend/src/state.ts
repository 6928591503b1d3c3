/** Widget form state and its validation.
 *
 * Values are held as the user typed them; `validateComputeForm` and
 * friends report problems inline so no request is issued for invalid
 * input. The state never stores derived cost numbers: everything shown
 * comes verbatim from the last service response.
 */

import type { OfferKind, RecommendResponse, SortDirection } from './types';

export interface ComputeForm {
  minCores: string;
  minMemoryGb: string;
  minClockGhz: string;
  location: string;
  nameRegex: string;
  computeHours: string;
  instanceCount: string;
}

export interface StorageForm {
  sizeGb: string;
  durationDays: string;
  persistent: boolean;
  location: string;
  nameRegex: string;
  requestCounts: Record<string, string>;
}

export interface NetworkForm {
  transferInGb: string;
  transferOutGb: string;
  location: string;
  nameRegex: string;
}

export interface ColumnState {
  /** Every column the API exposes for the kind, in toggle order. */
  available: string[];
  /** Currently visible columns, in display order. */
  visible: string[];
}

export interface WidgetState {
  compute: ComputeForm;
  storage: StorageForm;
  network: NetworkForm;
  columns: Record<OfferKind, ColumnState>;
  sort: Record<OfferKind, { key: string | null; direction: SortDirection }>;
  lastRecommendation: RecommendResponse | null;
}

export const OFFER_COLUMNS: Record<OfferKind, string[]> = {
  compute: ['id', 'provider', 'name', 'cores', 'clock_speed', 'memory', 'locations'],
  storage: ['id', 'provider', 'name', 'kind', 'size_min', 'size_max', 'locations'],
  network: ['id', 'provider', 'name', 'cost_data_transfer_in',
    'cost_data_transfer_out', 'locations'],
};

export function initialState(): WidgetState {
  return {
    compute: {
      minCores: '', minMemoryGb: '', minClockGhz: '', location: '',
      nameRegex: '', computeHours: '', instanceCount: '1',
    },
    storage: {
      sizeGb: '', durationDays: '', persistent: false, location: '',
      nameRegex: '', requestCounts: {},
    },
    network: { transferInGb: '', transferOutGb: '', location: '', nameRegex: '' },
    columns: {
      compute: { available: [...OFFER_COLUMNS.compute], visible: [...OFFER_COLUMNS.compute] },
      storage: { available: [...OFFER_COLUMNS.storage], visible: [...OFFER_COLUMNS.storage] },
      network: { available: [...OFFER_COLUMNS.network], visible: [...OFFER_COLUMNS.network] },
    },
    sort: {
      compute: { key: null, direction: 'asc' },
      storage: { key: null, direction: 'asc' },
      network: { key: null, direction: 'asc' },
    },
    lastRecommendation: null,
  };
}

const numberPattern = /^\d+(\.\d+)?$/;

function badNumber(raw: string): boolean {
  return raw.trim() !== '' && !numberPattern.test(raw.trim());
}

function badRegex(raw: string): boolean {
  if (raw.trim() === '') return false;
  try {
    new RegExp(raw);
    return false;
  } catch {
    return true;
  }
}

/** Field name -> message; an empty map means the form may be submitted. */
export function validateComputeForm(form: ComputeForm): Record<string, string> {
  const errors: Record<string, string> = {};
  for (const field of ['minCores', 'minMemoryGb', 'minClockGhz',
    'computeHours', 'instanceCount'] as const) {
    if (badNumber(form[field])) errors[field] = 'must be a non-negative number';
  }
  if (badRegex(form.nameRegex)) errors.nameRegex = 'invalid regular expression';
  return errors;
}

export function validateStorageForm(form: StorageForm): Record<string, string> {
  const errors: Record<string, string> = {};
  if (badNumber(form.sizeGb)) errors.sizeGb = 'must be a non-negative number';
  if (badNumber(form.durationDays)) errors.durationDays = 'must be a non-negative number';
  if (badRegex(form.nameRegex)) errors.nameRegex = 'invalid regular expression';
  for (const [verb, raw] of Object.entries(form.requestCounts)) {
    if (badNumber(raw)) errors[`requestCounts.${verb}`] = 'must be a non-negative number';
  }
  return errors;
}

export function validateNetworkForm(form: NetworkForm): Record<string, string> {
  const errors: Record<string, string> = {};
  if (badNumber(form.transferInGb)) errors.transferInGb = 'must be a non-negative number';
  if (badNumber(form.transferOutGb)) errors.transferOutGb = 'must be a non-negative number';
  if (badRegex(form.nameRegex)) errors.nameRegex = 'invalid regular expression';
  return errors;
}

export function toggleColumn(state: ColumnState, column: string): ColumnState {
  if (!state.available.includes(column)) return state;
  const visible = state.visible.includes(column)
    ? state.visible.filter((c) => c !== column)
    : [...state.visible, column];
  return { ...state, visible };
}

/** Move a visible column one slot left or right; order is sent to the server. */
export function moveColumn(state: ColumnState, column: string, delta: -1 | 1): ColumnState {
  const index = state.visible.indexOf(column);
  const target = index + delta;
  if (index < 0 || target < 0 || target >= state.visible.length) return state;
  const visible = [...state.visible];
  [visible[index], visible[target]] = [visible[target], visible[index]];
  return { ...state, visible };
}

/** Clicking a header cycles asc -> desc -> asc on the same key. */
export function cycleSort(
  current: { key: string | null; direction: SortDirection },
  column: string,
): { key: string | null; direction: SortDirection } {
  if (current.key !== column) return { key: column, direction: 'asc' };
  return { key: column, direction: current.direction === 'asc' ? 'desc' : 'asc' };
}
