/** Acceptance: the Recommendation widget is a pure view of the API payload.
 *
 * With a mocked service returning a known recommendation body, the
 * rendered model must carry exactly those ranks and totals, digit for
 * digit. The mocked totals are deliberately NOT what client-side
 * arithmetic would produce from the line items, so any recomputation
 * in the view layer fails this test.
 */

import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api';
import { recommendationModel } from '../src/table';
import type { RecommendResponse } from '../src/types';

const PAYLOAD: RecommendResponse = {
  catalog_version: 7,
  recommendations: [
    {
      rank: 1,
      provider: 'amazon',
      bundle: { compute: 'ec2-standard', storage: 'ebs', network: null },
      breakdown: {
        currency: 'USD',
        label: 'amazon',
        line_items: [
          { label: 'ec2-standard: instance-hours', quantity: 100, unit_rate: 0.08, amount: 8 },
          { label: 'ebs: GB-months', quantity: 2.5, unit_rate: 0.1, amount: 0.25 },
        ],
        // Not the sum of the items above; must be displayed as-is.
        total: 8.3111,
      },
      catalog_version: 7,
    },
    {
      rank: 2,
      provider: 'azure',
      bundle: { compute: 'azure-virtual-server', storage: null, network: null },
      breakdown: {
        currency: 'USD',
        label: 'azure',
        line_items: [
          { label: 'azure-virtual-server: instance-hours', quantity: 100, unit_rate: 0.09, amount: 9 },
        ],
        total: 9.0001,
      },
      catalog_version: 7,
    },
  ],
};

function mockedClient(body: unknown): ApiClient {
  const fetchImpl = (() => Promise.resolve(new Response(JSON.stringify(body), {
    status: 200, headers: { 'content-type': 'application/json' },
  }))) as typeof fetch;
  return new ApiClient('http://mock.test', fetchImpl);
}

describe('recommendation widget is a pure view', () => {
  it('renders exactly the ranks and totals the service reported', async () => {
    const client = mockedClient(PAYLOAD);
    const response = await client.fetchRecommendations({
      compute_hours: 100, instance_count: 1, min_cores: 0, min_memory_gb: 0,
      storage_gb: 0, storage_duration_days: 0, persistent_storage: false,
      request_counts: {}, transfer_in_gb: 0, transfer_out_gb: 0,
    });
    const model = recommendationModel(response);
    expect(model.feasible).toBe(true);
    expect(model.rows.map((r) => r.rank)).toEqual([1, 2]);
    expect(model.rows.map((r) => r.total)).toEqual(['8.3111', '9.0001']);
    expect(model.rows[0].members).toEqual(['ec2-standard', 'ebs']);
    expect(model.rows[0].breakdown.rows.map((i) => i.amount)).toEqual(['8', '0.25']);
    // No derived numbers anywhere: every displayed string round-trips to
    // a field of the payload.
    const payloadNumbers = new Set<string>();
    for (const rec of PAYLOAD.recommendations) {
      payloadNumbers.add(String(rec.breakdown.total));
      for (const item of rec.breakdown.line_items) {
        payloadNumbers.add(String(item.quantity));
        payloadNumbers.add(String(item.unit_rate));
        payloadNumbers.add(String(item.amount));
      }
    }
    for (const row of model.rows) {
      expect(payloadNumbers).toContain(row.total);
      for (const item of row.breakdown.rows) {
        expect(payloadNumbers).toContain(item.quantity);
        expect(payloadNumbers).toContain(item.unitRate);
        expect(payloadNumbers).toContain(item.amount);
      }
    }
  });

  it('maps an empty recommendation list to the no-feasible-offer state', async () => {
    const client = mockedClient({ catalog_version: 7, recommendations: [] });
    const response = await client.fetchRecommendations({
      compute_hours: 0, instance_count: 0, min_cores: 9999, min_memory_gb: 0,
      storage_gb: 0, storage_duration_days: 0, persistent_storage: false,
      request_counts: {}, transfer_in_gb: 0, transfer_out_gb: 0,
    });
    const model = recommendationModel(response);
    expect(model.feasible).toBe(false);
    expect(model.rows).toEqual([]);
  });
});
