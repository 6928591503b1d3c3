/** Boot: mount the four widgets against the configured API base. */

import { ApiClient, DEFAULT_API_BASE } from './api';
import { initialState } from './state';
import { mountWidgets } from './widgets';

function hostsFor(section: string) {
  const root = document.getElementById(section);
  if (!root) throw new Error(`missing #${section} section`);
  const pick = (selector: string): HTMLElement => {
    const node = root.querySelector<HTMLElement>(selector);
    if (!node) throw new Error(`missing ${selector} in #${section}`);
    return node;
  };
  return {
    form: pick('.widget-form'),
    errors: pick('.widget-errors'),
    columns: pick('.widget-columns'),
    table: pick('.widget-table'),
  };
}

const params = new URLSearchParams(window.location.search);
const base = params.get('api') ?? DEFAULT_API_BASE;
const client = new ApiClient(base);

mountWidgets(client, initialState(), {
  compute: hostsFor('compute-widget'),
  storage: hostsFor('storage-widget'),
  network: hostsFor('network-widget'),
  recommendation: hostsFor('recommendation-widget'),
});
