import { describe, expect, it } from 'vitest';

import { ViewState } from '../src/state.js';
import type { CompanySummary, EntriesPayload, SubgraphPayload } from '../src/types.js';
import { fixture } from './fixtures.js';

const subgraph = () => fixture<SubgraphPayload>('subgraph');
const neighbors = () => fixture<SubgraphPayload>('neighbors');
const rankings = () => fixture<EntriesPayload>('rankings');

function company(id: string, score = 0.5): CompanySummary {
  return {
    id,
    name: id,
    score,
    rank: null,
    status: null,
    location: null,
    yearFounded: null,
    description: null,
  };
}

describe('ranking basket', () => {
  it('ignores duplicates', () => {
    const state = new ViewState();
    expect(state.addToBasket(company('A'))).toBe(true);
    expect(state.addToBasket(company('B'))).toBe(true);
    expect(state.addToBasket(company('A'))).toBe(false);
    expect(state.rankingBasket.map((c) => c.id)).toEqual(['A', 'B']);
  });

  it('rank action is unavailable for an empty basket', () => {
    const state = new ViewState();
    expect(state.canRankBasket).toBe(false);
    state.addToBasket(company('A'));
    expect(state.canRankBasket).toBe(true);
    state.removeFromBasket('A');
    expect(state.canRankBasket).toBe(false);
  });
});

describe('ranking modal', () => {
  it('preserves server order exactly, no client-side re-ranking', () => {
    const state = new ViewState();
    const payload = rankings();
    state.applyRankingResponse(payload.entries);
    expect(state.rankingResult!.map((c) => c.id)).toEqual(payload.entries.map((c) => c.id));
    expect(state.activeView).toBe('rankingModal');
    // even if scores were shuffled, order must stay the server's
    const reversedScores = payload.entries.map((entry, i) => ({
      ...entry,
      score: i, // ascending scores contradict the order on purpose
    }));
    state.applyRankingResponse(reversedScores);
    expect(state.rankingResult!.map((c) => c.id)).toEqual(reversedScores.map((c) => c.id));
  });
});

describe('subgraph view', () => {
  it('contains the root and the target after loading', () => {
    const state = new ViewState();
    const graph = state.loadSubgraph('R', 'T', subgraph());
    expect(graph.nodes.has('R')).toBe(true);
    expect(graph.nodes.has('T')).toBe(true);
    expect(graph.rootId).toBe('R');
    expect(graph.targetId).toBe('T');
    expect(state.activeView).toBe('companyDetail');
  });

  it('rejects payloads missing the root', () => {
    const state = new ViewState();
    expect(() => state.loadSubgraph('ZZ', 'T', subgraph())).toThrow(/missing the root/);
  });

  it('expansion merge is idempotent', () => {
    const state = new ViewState();
    state.loadSubgraph('R', 'T', subgraph());
    const graph = state.currentSubgraph!;
    const first = state.mergeFragment(neighbors());
    const nodesAfterFirst = [...graph.nodes.keys()].sort();
    const edgesAfterFirst = [...graph.edges.keys()].sort();
    const second = state.mergeFragment(neighbors());
    expect(second).toEqual({ addedNodes: 0, addedEdges: 0 });
    expect([...graph.nodes.keys()].sort()).toEqual(nodesAfterFirst);
    expect([...graph.edges.keys()].sort()).toEqual(edgesAfterFirst);
    expect(first.addedNodes).toBeGreaterThanOrEqual(0);
  });

  it('expanding an isolated node leaves the canvas model unchanged', () => {
    const state = new ViewState();
    state.loadSubgraph('R', 'T', subgraph());
    const graph = state.currentSubgraph!;
    const before = graph.nodes.size;
    const result = state.mergeFragment({ nodes: [], edges: [], pathsIncluded: 0 });
    expect(result).toEqual({ addedNodes: 0, addedEdges: 0 });
    expect(graph.nodes.size).toBe(before);
  });
});

describe('request generations', () => {
  it('discards stale responses for superseded views', () => {
    const state = new ViewState();
    const stale = state.beginRequest();
    const fresh = state.beginRequest();
    expect(state.isCurrent(stale)).toBe(false);
    expect(state.isCurrent(fresh)).toBe(true);
  });
});
