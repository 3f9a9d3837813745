/** Canvas renderer for the subgraph view: score-scaled nodes, dashed strokes
 * for past relationships, labeled edges, and a pan/zoom viewport.
 */

import type { ForceLayout } from './layout.js';
import type { SubgraphState } from './state.js';
import { edgeLabel, isDashed, nodeFill, radiusScale } from './styling.js';

export interface Viewport {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export function resetViewport(): Viewport {
  return { scale: 1, offsetX: 0, offsetY: 0 };
}

export function zoomAt(view: Viewport, x: number, y: number, factor: number): Viewport {
  const scale = Math.min(Math.max(view.scale * factor, 0.2), 6);
  const applied = scale / view.scale;
  return {
    scale,
    offsetX: x - (x - view.offsetX) * applied,
    offsetY: y - (y - view.offsetY) * applied,
  };
}

export function toWorld(view: Viewport, x: number, y: number): { x: number; y: number } {
  return { x: (x - view.offsetX) / view.scale, y: (y - view.offsetY) / view.scale };
}

export function draw(
  ctx: CanvasRenderingContext2D,
  graph: SubgraphState,
  layout: ForceLayout,
  view: Viewport,
  selected: string | null,
): void {
  const canvas = ctx.canvas;
  ctx.save();
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.translate(view.offsetX, view.offsetY);
  ctx.scale(view.scale, view.scale);

  ctx.font = '11px system-ui, sans-serif';
  for (const edge of graph.edges.values()) {
    const a = layout.positions.get(edge.source);
    const b = layout.positions.get(edge.target);
    if (!a || !b) continue;
    ctx.beginPath();
    ctx.setLineDash(isDashed(edge) ? [6, 5] : []);
    ctx.strokeStyle = '#94a3b8';
    ctx.lineWidth = 1.4;
    ctx.moveTo(a.x, a.y);
    ctx.lineTo(b.x, b.y);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = '#64748b';
    ctx.fillText(edgeLabel(edge), (a.x + b.x) / 2 + 4, (a.y + b.y) / 2 - 4);
  }

  const radius = radiusScale([...graph.nodes.values()].map((node) => node.score));
  for (const node of graph.nodes.values()) {
    const p = layout.positions.get(node.id);
    if (!p) continue;
    const r = radius(node.score);
    ctx.beginPath();
    ctx.arc(p.x, p.y, r, 0, 2 * Math.PI);
    ctx.fillStyle = nodeFill(node, graph.rootId);
    ctx.globalAlpha = 0.92;
    ctx.fill();
    ctx.globalAlpha = 1;
    if (node.id === selected) {
      ctx.lineWidth = 3;
      ctx.strokeStyle = '#f59e0b';
      ctx.stroke();
    }
    ctx.fillStyle = '#0f172a';
    ctx.fillText(node.name, p.x + r + 4, p.y + 4);
  }
  ctx.restore();
}

/** Topmost node under the cursor (canvas coordinates), if any. */
export function hitTest(
  graph: SubgraphState,
  layout: ForceLayout,
  view: Viewport,
  x: number,
  y: number,
): string | null {
  const world = toWorld(view, x, y);
  const radius = radiusScale([...graph.nodes.values()].map((node) => node.score));
  let found: string | null = null;
  for (const node of graph.nodes.values()) {
    const p = layout.positions.get(node.id);
    if (!p) continue;
    const r = radius(node.score) + 2;
    const dx = world.x - p.x;
    const dy = world.y - p.y;
    if (dx * dx + dy * dy <= r * r) {
      found = node.id;
    }
  }
  return found;
}
