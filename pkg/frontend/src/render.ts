/** DOM construction for tables, column choosers, and breakdowns. */

import type { SortDirection } from './types';
import type { TableModel, RecommendationModel } from './table';
import type { ColumnState } from './state';

export function clear(node: HTMLElement): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export function renderTable(
  host: HTMLElement,
  model: TableModel,
  sort: { key: string | null; direction: SortDirection },
  onHeaderClick: (column: string) => void,
): void {
  clear(host);
  const table = document.createElement('table');
  table.className = 'offers';
  const head = table.createTHead().insertRow();
  for (const column of model.columns) {
    const cell = document.createElement('th');
    cell.textContent = column === sort.key
      ? `${column} ${sort.direction === 'asc' ? '↑' : '↓'}`
      : column;
    cell.tabIndex = 0;
    cell.addEventListener('click', () => onHeaderClick(column));
    head.appendChild(cell);
  }
  const body = table.createTBody();
  for (const row of model.rows) {
    const tr = body.insertRow();
    for (const cell of row) {
      tr.insertCell().textContent = cell;
    }
  }
  host.appendChild(table);
  const footer = document.createElement('p');
  footer.className = 'table-footer';
  footer.textContent = `${model.count} offers (catalog v${model.catalogVersion})`;
  host.appendChild(footer);
}

export function renderColumnChooser(
  host: HTMLElement,
  state: ColumnState,
  handlers: {
    onToggle: (column: string) => void;
    onMove: (column: string, delta: -1 | 1) => void;
  },
): void {
  clear(host);
  for (const column of state.available) {
    const wrapper = document.createElement('span');
    wrapper.className = 'column-chip';
    const checkbox = document.createElement('input');
    checkbox.type = 'checkbox';
    checkbox.checked = state.visible.includes(column);
    checkbox.addEventListener('change', () => handlers.onToggle(column));
    const label = document.createElement('label');
    label.textContent = column;
    wrapper.append(checkbox, label);
    if (state.visible.includes(column)) {
      const left = document.createElement('button');
      left.type = 'button';
      left.textContent = '\u2190';
      left.addEventListener('click', () => handlers.onMove(column, -1));
      const right = document.createElement('button');
      right.type = 'button';
      right.textContent = '\u2192';
      right.addEventListener('click', () => handlers.onMove(column, 1));
      wrapper.append(left, right);
    }
    host.appendChild(wrapper);
  }
}

export function renderErrors(host: HTMLElement, errors: Record<string, string>): void {
  clear(host);
  for (const [field, message] of Object.entries(errors)) {
    const line = document.createElement('p');
    line.className = 'field-error';
    line.textContent = `${field}: ${message}`;
    host.appendChild(line);
  }
}

export function renderServiceError(host: HTMLElement, message: string): void {
  const line = document.createElement('p');
  line.className = 'service-error';
  line.textContent = message;
  clear(host);
  host.appendChild(line);
}

export function renderRecommendations(host: HTMLElement, model: RecommendationModel): void {
  clear(host);
  if (!model.feasible) {
    const empty = document.createElement('p');
    empty.className = 'no-feasible-offer';
    empty.textContent = 'No feasible offer for this scenario.';
    host.appendChild(empty);
    return;
  }
  for (const row of model.rows) {
    const card = document.createElement('details');
    card.className = 'recommendation';
    if (row.rank === 1) card.open = true;
    const summary = document.createElement('summary');
    summary.textContent =
      `#${row.rank} ${row.provider}: ${row.members.join(' + ')} ` +
      `- ${row.total} ${row.currency}`;
    card.appendChild(summary);
    const table = document.createElement('table');
    table.className = 'breakdown';
    const head = table.createTHead().insertRow();
    for (const title of ['item', 'quantity', 'unit rate', 'amount']) {
      const th = document.createElement('th');
      th.textContent = title;
      head.appendChild(th);
    }
    const body = table.createTBody();
    for (const item of row.breakdown.rows) {
      const tr = body.insertRow();
      tr.insertCell().textContent = item.label;
      tr.insertCell().textContent = item.quantity;
      tr.insertCell().textContent = item.unitRate;
      tr.insertCell().textContent = item.amount;
    }
    card.appendChild(table);
    host.appendChild(card);
  }
  const version = document.createElement('p');
  version.className = 'table-footer';
  version.textContent = `catalog v${model.catalogVersion}`;
  host.appendChild(version);
}
