/** Visual encoding rules for edges and nodes. */

import type { GraphEdge, GraphNode } from './types.js';

/** Relationship phases drawn with a dashed stroke; everything else is solid. */
const DASHED_PHASES = new Set(['former', 'prior', 'cancelled']);

export function isDashed(edge: GraphEdge): boolean {
  const tense = edge.tense?.toLowerCase() ?? '';
  const state = edge.b2bState?.toLowerCase() ?? '';
  return DASHED_PHASES.has(tense) || DASHED_PHASES.has(state);
}

/** Human-readable relationship label, e.g. "former board member", "sponsor (prior)". */
export function edgeLabel(edge: GraphEdge): string {
  if (edge.category === 'client') {
    return 'client';
  }
  if (edge.category === 'jobrole') {
    const role = (edge.role ?? 'role').replace('_', ' ');
    return edge.tense ? `${edge.tense} ${role}` : role;
  }
  const kind = edge.b2bType ?? 'b2b';
  return edge.b2bState ? `${kind} (${edge.b2bState})` : kind;
}

export interface RadiusOptions {
  min: number;
  max: number;
}

/**
 * Radius scale normalized within the displayed subgraph: monotone in score,
 * largest score gets `max`, smallest gets `min`, equal scores equal radius.
 */
export function radiusScale(
  scores: number[],
  options: RadiusOptions = { min: 8, max: 26 },
): (score: number) => number {
  const low = Math.min(...scores);
  const high = Math.max(...scores);
  const span = high - low;
  if (!Number.isFinite(span) || span <= 0) {
    return () => (options.min + options.max) / 2;
  }
  return (score: number) => {
    const clamped = Math.min(Math.max(score, low), high);
    return options.min + ((clamped - low) / span) * (options.max - options.min);
  };
}

export function nodeFill(node: GraphNode, rootId: string): string {
  if (node.id === rootId) {
    return '#b45309';
  }
  return node.kind === 'person' ? '#2563eb' : '#0f766e';
}

export interface LegendEntry {
  label: string;
  swatch: 'solid' | 'dashed' | 'circle-root' | 'circle-company' | 'circle-person';
}

/** Legend contents for the visualization (edge phases and node kinds). */
export function legendEntries(): LegendEntry[] {
  return [
    { label: 'current relationship', swatch: 'solid' },
    { label: 'former / prior / cancelled', swatch: 'dashed' },
    { label: 'your company (root)', swatch: 'circle-root' },
    { label: 'company', swatch: 'circle-company' },
    { label: 'person', swatch: 'circle-person' },
  ];
}
