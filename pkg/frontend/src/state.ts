/** View state: ranking basket, current subgraph, navigation, request tokens.
 *
 * Invariants: the basket holds no duplicate companies; the current subgraph
 * always contains the root; the ranking modal shows entries exactly in
 * server order (no client-side re-ranking).
 */

import type { CompanySummary, GraphEdge, GraphNode, SubgraphPayload } from './types.js';

export type ActiveView = 'search' | 'rankingModal' | 'whitespace' | 'companyDetail';

export interface SubgraphState {
  nodes: Map<string, GraphNode>;
  edges: Map<string, GraphEdge>;
  rootId: string;
  targetId: string;
  pathsIncluded: number;
}

export class ViewState {
  activeView: ActiveView = 'search';
  rankingBasket: CompanySummary[] = [];
  rankingResult: CompanySummary[] | null = null;
  currentSubgraph: SubgraphState | null = null;
  selectedNode: string | null = null;
  private generation = 0;

  /** Add to the basket; duplicates are ignored. Returns true when added. */
  addToBasket(company: CompanySummary): boolean {
    if (this.rankingBasket.some((entry) => entry.id === company.id)) {
      return false;
    }
    this.rankingBasket.push(company);
    return true;
  }

  removeFromBasket(id: string): void {
    this.rankingBasket = this.rankingBasket.filter((entry) => entry.id !== id);
  }

  get canRankBasket(): boolean {
    return this.rankingBasket.length > 0;
  }

  /** Store the server's ranked order verbatim and open the modal. */
  applyRankingResponse(entries: CompanySummary[]): void {
    this.rankingResult = [...entries];
    this.activeView = 'rankingModal';
  }

  closeRankingModal(): void {
    this.rankingResult = null;
    this.activeView = 'search';
  }

  /** Replace the current subgraph; the payload must include root and target. */
  loadSubgraph(rootId: string, targetId: string, payload: SubgraphPayload): SubgraphState {
    const nodes = new Map(payload.nodes.map((node) => [node.id, node]));
    if (!nodes.has(rootId)) {
      throw new Error(`subgraph payload is missing the root node ${rootId}`);
    }
    if (!nodes.has(targetId)) {
      throw new Error(`subgraph payload is missing the target node ${targetId}`);
    }
    this.currentSubgraph = {
      nodes,
      edges: new Map(payload.edges.map((edge) => [edge.edgeId, edge])),
      rootId,
      targetId,
      pathsIncluded: payload.pathsIncluded,
    };
    this.selectedNode = targetId;
    this.activeView = 'companyDetail';
    return this.currentSubgraph;
  }

  /** Merge an expansion fragment; merging the same fragment twice is a no-op. */
  mergeFragment(payload: SubgraphPayload): { addedNodes: number; addedEdges: number } {
    const graph = this.currentSubgraph;
    if (!graph) {
      throw new Error('no subgraph loaded');
    }
    let addedNodes = 0;
    let addedEdges = 0;
    for (const node of payload.nodes) {
      if (!graph.nodes.has(node.id)) {
        graph.nodes.set(node.id, node);
        addedNodes += 1;
      }
    }
    for (const edge of payload.edges) {
      if (graph.edges.has(edge.edgeId)) {
        continue;
      }
      // skip edges whose endpoints are not displayed (server fragments
      // reference the expansion center, which is always present)
      if (!graph.nodes.has(edge.source) || !graph.nodes.has(edge.target)) {
        continue;
      }
      graph.edges.set(edge.edgeId, edge);
      addedEdges += 1;
    }
    return { addedNodes, addedEdges };
  }

  /** Begin a request; responses for superseded tokens must be discarded. */
  beginRequest(): number {
    this.generation += 1;
    return this.generation;
  }

  isCurrent(token: number): boolean {
    return token === this.generation;
  }
}
