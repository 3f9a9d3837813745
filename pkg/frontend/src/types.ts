/** Wire types mirroring the exploration API's JSON payloads. */

export interface CompanySummary {
  id: string;
  name: string;
  score: number;
  rank: number | null;
  status: string | null;
  location: string | null;
  yearFounded: string | null;
  description: string | null;
}

export type NodeKind = 'company' | 'person';

export interface GraphNode {
  id: string;
  kind: NodeKind;
  name: string;
  description: string | null;
  attrs: Record<string, string>;
  score: number;
}

export type EdgeCategory = 'jobrole' | 'b2b' | 'client';

export interface GraphEdge {
  edgeId: string;
  source: string;
  target: string;
  category: EdgeCategory;
  role: string | null;
  tense: string | null;
  b2bType: string | null;
  b2bState: string | null;
  cost: number;
  weight: number;
}

export interface SubgraphPayload {
  nodes: GraphNode[];
  edges: GraphEdge[];
  pathsIncluded: number;
}

export interface EntriesPayload {
  entries: CompanySummary[];
}

export interface HealthPayload {
  status: string;
  nodes: number;
  edges: number;
  root: string;
  variant: string;
  gamma: number;
}

export interface ErrorDetail {
  error: string;
  id?: string;
  source?: string;
  target?: string;
}
