/** Widget controllers: wire form edits to service requests and rendering.
 *
 * Every edit re-validates the form; invalid input renders inline and
 * issues no request. Responses render verbatim (the pure-view rule),
 * and a failed request leaves the previous table on screen.
 */

import { ApiClient, queryFromState, scenarioFromState } from './api';
import {
  WidgetState,
  cycleSort,
  moveColumn,
  toggleColumn,
  validateComputeForm,
  validateNetworkForm,
  validateStorageForm,
} from './state';
import { recommendationModel, tableModel } from './table';
import {
  renderColumnChooser,
  renderErrors,
  renderRecommendations,
  renderServiceError,
  renderTable,
} from './render';
import type { OfferKind } from './types';
import { CONTINENTS, REQUEST_VERBS } from './types';

interface WidgetHosts {
  form: HTMLElement;
  errors: HTMLElement;
  columns: HTMLElement;
  table: HTMLElement;
}

const VALIDATORS = {
  compute: validateComputeForm,
  storage: validateStorageForm,
  network: validateNetworkForm,
} as const;

export class Widgets {
  constructor(
    private readonly client: ApiClient,
    readonly state: WidgetState,
    private readonly hosts: Record<OfferKind | 'recommendation', WidgetHosts>,
  ) {}

  async refresh(kind: OfferKind): Promise<void> {
    const hosts = this.hosts[kind];
    const errors = VALIDATORS[kind](this.state[kind] as never);
    renderErrors(hosts.errors, errors);
    if (Object.keys(errors).length > 0) return;
    try {
      const response = await this.client.fetchOffers(queryFromState(this.state, kind));
      renderTable(hosts.table, tableModel(response), this.state.sort[kind],
        (column) => void this.sortBy(kind, column));
    } catch (error) {
      if ((error as Error).name === 'AbortError') return;
      renderServiceError(hosts.errors, `service error: ${(error as Error).message}`);
    }
  }

  async sortBy(kind: OfferKind, column: string): Promise<void> {
    this.state.sort[kind] = cycleSort(this.state.sort[kind], column);
    await this.refresh(kind);
  }

  async toggle(kind: OfferKind, column: string): Promise<void> {
    this.state.columns[kind] = toggleColumn(this.state.columns[kind], column);
    this.renderChooser(kind);
    await this.refresh(kind);
  }

  async move(kind: OfferKind, column: string, delta: -1 | 1): Promise<void> {
    this.state.columns[kind] = moveColumn(this.state.columns[kind], column, delta);
    this.renderChooser(kind);
    await this.refresh(kind);
  }

  renderChooser(kind: OfferKind): void {
    renderColumnChooser(this.hosts[kind].columns, this.state.columns[kind], {
      onToggle: (column) => void this.toggle(kind, column),
      onMove: (column, delta) => void this.move(kind, column, delta),
    });
  }

  async recommend(): Promise<void> {
    const hosts = this.hosts.recommendation;
    const allErrors = {
      ...validateComputeForm(this.state.compute),
      ...validateStorageForm(this.state.storage),
      ...validateNetworkForm(this.state.network),
    };
    renderErrors(hosts.errors, allErrors);
    if (Object.keys(allErrors).length > 0) return;
    try {
      const response = await this.client.fetchRecommendations(
        scenarioFromState(this.state));
      this.state.lastRecommendation = response;
      renderRecommendations(hosts.table, recommendationModel(response));
    } catch (error) {
      if ((error as Error).name === 'AbortError') return;
      renderServiceError(hosts.errors, `service error: ${(error as Error).message}`);
    }
  }
}

type FieldSpec = [label: string, key: string, kind: 'number' | 'text'];

const COMPUTE_FIELDS: FieldSpec[] = [
  ['min cores', 'minCores', 'number'],
  ['min memory (GB)', 'minMemoryGb', 'number'],
  ['min clock (GHz)', 'minClockGhz', 'number'],
  ['compute hours', 'computeHours', 'number'],
  ['instances', 'instanceCount', 'number'],
  ['name regex', 'nameRegex', 'text'],
];

const STORAGE_FIELDS: FieldSpec[] = [
  ['size (GB)', 'sizeGb', 'number'],
  ['duration (days)', 'durationDays', 'number'],
  ['name regex', 'nameRegex', 'text'],
];

const NETWORK_FIELDS: FieldSpec[] = [
  ['transfer in (GB)', 'transferInGb', 'number'],
  ['transfer out (GB)', 'transferOutGb', 'number'],
  ['name regex', 'nameRegex', 'text'],
];

function textInput(
  label: string, value: string, onInput: (value: string) => void,
): HTMLElement {
  const wrapper = document.createElement('label');
  wrapper.className = 'field';
  const caption = document.createElement('span');
  caption.textContent = label;
  const input = document.createElement('input');
  input.type = 'text';
  input.value = value;
  input.addEventListener('input', () => onInput(input.value));
  wrapper.append(caption, input);
  return wrapper;
}

function locationSelect(value: string, onChange: (value: string) => void): HTMLElement {
  const wrapper = document.createElement('label');
  wrapper.className = 'field';
  const caption = document.createElement('span');
  caption.textContent = 'location';
  const select = document.createElement('select');
  const any = document.createElement('option');
  any.value = '';
  any.textContent = '(any)';
  select.appendChild(any);
  for (const continent of CONTINENTS) {
    const option = document.createElement('option');
    option.value = continent;
    option.textContent = continent;
    select.appendChild(option);
  }
  select.value = value;
  select.addEventListener('change', () => onChange(select.value));
  wrapper.append(caption, select);
  return wrapper;
}

function buildForm(
  host: HTMLElement,
  fields: FieldSpec[],
  form: Record<string, string>,
  locationKey: string,
  onEdit: () => void,
): void {
  for (const [label, key] of fields) {
    host.appendChild(textInput(label, form[key] ?? '', (value) => {
      form[key] = value;
      onEdit();
    }));
  }
  host.appendChild(locationSelect(form[locationKey] ?? '', (value) => {
    form[locationKey] = value;
    onEdit();
  }));
}

/** Build all four widgets into their hosts and do the initial loads. */
export function mountWidgets(client: ApiClient, state: WidgetState,
  hosts: Record<OfferKind | 'recommendation', WidgetHosts>): Widgets {
  const widgets = new Widgets(client, state, hosts);

  buildForm(hosts.compute.form, COMPUTE_FIELDS,
    state.compute as unknown as Record<string, string>, 'location',
    () => void widgets.refresh('compute'));
  buildForm(hosts.storage.form, STORAGE_FIELDS,
    state.storage as unknown as Record<string, string>, 'location',
    () => void widgets.refresh('storage'));
  buildForm(hosts.network.form, NETWORK_FIELDS,
    state.network as unknown as Record<string, string>, 'location',
    () => void widgets.refresh('network'));

  const persistent = document.createElement('label');
  persistent.className = 'field';
  const caption = document.createElement('span');
  caption.textContent = 'persistent (attachable) storage';
  const checkbox = document.createElement('input');
  checkbox.type = 'checkbox';
  checkbox.addEventListener('change', () => {
    state.storage.persistent = checkbox.checked;
  });
  persistent.append(caption, checkbox);
  hosts.storage.form.appendChild(persistent);

  const verbs = document.createElement('div');
  verbs.className = 'verbs';
  for (const verb of REQUEST_VERBS) {
    verbs.appendChild(textInput(`${verb} requests`, '', (value) => {
      state.storage.requestCounts[verb] = value;
    }));
  }
  hosts.storage.form.appendChild(verbs);

  const submit = document.createElement('button');
  submit.type = 'button';
  submit.id = 'recommend-button';
  submit.textContent = 'Recommend bundles';
  submit.addEventListener('click', () => void widgets.recommend());
  hosts.recommendation.form.appendChild(submit);

  for (const kind of ['compute', 'storage', 'network'] as const) {
    widgets.renderChooser(kind);
    void widgets.refresh(kind);
  }
  return widgets;
}
