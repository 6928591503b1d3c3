import { describe, expect, it } from 'vitest';

import { formatCell, tableModel, breakdownModel } from '../src/table';
import type { OffersResponse } from '../src/types';

describe('formatCell', () => {
  it('renders quantities with their unit', () => {
    expect(formatCell({ value: 0.5986328125, unit: 'GB' })).toBe('0.5986328125 GB');
  });

  it('joins list cells', () => {
    expect(formatCell(['Europe', 'Asia'])).toBe('Europe, Asia');
  });

  it('renders null as empty', () => {
    expect(formatCell(null)).toBe('');
  });

  it('passes strings and numbers through unchanged', () => {
    expect(formatCell('ec2-micro')).toBe('ec2-micro');
    expect(formatCell(4)).toBe('4');
  });
});

describe('tableModel', () => {
  const response: OffersResponse = {
    catalog_version: 3,
    kind: 'compute',
    columns: ['id', 'memory', 'cores'],
    rows: [
      ['ec2-micro', { value: 0.5986328125, unit: 'GB' }, 1],
      ['rackspace-cloud-server', { value: 15, unit: 'GB' }, 4],
    ],
    count: 2,
  };

  it('keeps columns and row order verbatim', () => {
    const model = tableModel(response);
    expect(model.columns).toEqual(['id', 'memory', 'cores']);
    expect(model.rows).toEqual([
      ['ec2-micro', '0.5986328125 GB', '1'],
      ['rackspace-cloud-server', '15 GB', '4'],
    ]);
    expect(model.catalogVersion).toBe(3);
    expect(model.count).toBe(2);
  });
});

describe('breakdownModel', () => {
  it('copies amounts without recomputing them', () => {
    // A payload whose line items deliberately do NOT sum to the total:
    // the view must reproduce the reported numbers, not derive its own.
    const model = breakdownModel({
      currency: 'USD',
      label: 'amazon',
      line_items: [
        { label: 'instance-hours', quantity: 10, unit_rate: 0.08, amount: 0.8 },
      ],
      total: 999.25,
    });
    expect(model.total).toBe('999.25');
    expect(model.rows[0]).toEqual({
      label: 'instance-hours', quantity: '10', unitRate: '0.08', amount: '0.8',
    });
  });
});
