/** Small force-directed layout: spring attraction along edges, pairwise
 * repulsion, and gentle centering. Deterministic (seeded by node id hash)
 * so a given subgraph always settles the same way.
 */

export interface LayoutPoint {
  x: number;
  y: number;
  vx: number;
  vy: number;
}

function hashAngle(id: string): number {
  let h = 2166136261;
  for (let i = 0; i < id.length; i += 1) {
    h ^= id.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return ((h >>> 0) % 3600) / 3600;
}

export class ForceLayout {
  readonly positions = new Map<string, LayoutPoint>();
  private edges: Array<[string, string]> = [];

  constructor(
    private readonly width: number,
    private readonly height: number,
    private readonly springLength = 110,
  ) {}

  /** Register the node/edge sets; existing node positions are preserved. */
  setGraph(nodeIds: Iterable<string>, edges: Array<[string, string]>): void {
    const wanted = new Set(nodeIds);
    for (const id of [...this.positions.keys()]) {
      if (!wanted.has(id)) {
        this.positions.delete(id);
      }
    }
    for (const id of wanted) {
      if (!this.positions.has(id)) {
        const turn = hashAngle(id) * 2 * Math.PI;
        const radius = Math.min(this.width, this.height) * (0.25 + 0.15 * hashAngle(id + '#'));
        this.positions.set(id, {
          x: this.width / 2 + radius * Math.cos(turn),
          y: this.height / 2 + radius * Math.sin(turn),
          vx: 0,
          vy: 0,
        });
      }
    }
    this.edges = edges.filter(([a, b]) => wanted.has(a) && wanted.has(b) && a !== b);
  }

  tick(): void {
    const ids = [...this.positions.keys()];
    const repulsion = this.springLength * this.springLength;
    for (let i = 0; i < ids.length; i += 1) {
      const a = this.positions.get(ids[i])!;
      for (let j = i + 1; j < ids.length; j += 1) {
        const b = this.positions.get(ids[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          // deterministic nudge for coincident points
          dx = 0.1 * (i - j);
          dy = 0.05;
          d2 = dx * dx + dy * dy;
        }
        const force = repulsion / d2;
        const d = Math.sqrt(d2);
        const fx = (dx / d) * force;
        const fy = (dy / d) * force;
        a.vx += fx;
        a.vy += fy;
        b.vx -= fx;
        b.vy -= fy;
      }
    }
    for (const [sourceId, targetId] of this.edges) {
      const a = this.positions.get(sourceId)!;
      const b = this.positions.get(targetId)!;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1e-3);
      const stretch = (d - this.springLength) * 0.02;
      a.vx += (dx / d) * stretch * this.springLength * 0.5;
      a.vy += (dy / d) * stretch * this.springLength * 0.5;
      b.vx -= (dx / d) * stretch * this.springLength * 0.5;
      b.vy -= (dy / d) * stretch * this.springLength * 0.5;
    }
    const cx = this.width / 2;
    const cy = this.height / 2;
    for (const point of this.positions.values()) {
      point.vx += (cx - point.x) * 0.005;
      point.vy += (cy - point.y) * 0.005;
      point.vx *= 0.55;
      point.vy *= 0.55;
      point.x += Math.max(Math.min(point.vx, 40), -40);
      point.y += Math.max(Math.min(point.vy, 40), -40);
    }
  }

  run(iterations = 200): void {
    for (let i = 0; i < iterations; i += 1) {
      this.tick();
    }
  }
}
