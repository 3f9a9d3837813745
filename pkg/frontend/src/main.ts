/** DOM wiring: search, ranking basket + modal, company detail with the
 * steerable subgraph canvas, whitespace list, and node expansion.
 */

import { ApiClient, ApiError } from './api.js';
import { ForceLayout } from './layout.js';
import { draw, hitTest, resetViewport, zoomAt, type Viewport } from './render.js';
import { ViewState } from './state.js';
import { legendEntries } from './styling.js';
import type { CompanySummary } from './types.js';

const api = new ApiClient('');
const state = new ViewState();

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

const searchInput = el<HTMLInputElement>('search-input');
const searchResults = el<HTMLElement>('search-results');
const basketBar = el<HTMLElement>('basket');
const rankButton = el<HTMLButtonElement>('rank-button');
const modal = el<HTMLElement>('ranking-modal');
const modalBody = el<HTMLElement>('ranking-modal-body');
const detailView = el<HTMLElement>('detail-view');
const searchView = el<HTMLElement>('search-view');
const detailTitle = el<HTMLElement>('detail-title');
const whitespacePanel = el<HTMLElement>('whitespace-panel');
const infoPanel = el<HTMLElement>('info-panel');
const canvas = el<HTMLCanvasElement>('graph-canvas');
const statusLine = el<HTMLElement>('status-line');
const legendBox = el<HTMLElement>('legend');

const ctx = canvas.getContext('2d');
if (!ctx) throw new Error('canvas 2d context unavailable');
let layout = new ForceLayout(canvas.width, canvas.height);
let viewport: Viewport = resetViewport();
let rootId = '';

function toast(message: string): void {
  statusLine.textContent = message;
  statusLine.classList.add('visible');
  window.setTimeout(() => statusLine.classList.remove('visible'), 2600);
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    const detail = error.detail;
    if (typeof detail === 'object' && detail.error === 'unknown_id') {
      return `unknown company: ${detail.id}`;
    }
    if (typeof detail === 'object' && detail.error === 'disconnected') {
      return 'no route between this company and yours';
    }
    return `request failed (${error.status})`;
  }
  return 'request failed';
}

// -- search -----------------------------------------------------------------

function summaryRow(company: CompanySummary, actions: HTMLElement[]): HTMLElement {
  const row = document.createElement('tr');
  const cells = [
    company.name,
    company.rank === null ? '-' : `#${company.rank}`,
    company.score.toFixed(4),
    company.status ?? '-',
    company.location ?? '-',
    company.yearFounded ?? '-',
  ];
  for (const text of cells) {
    const cell = document.createElement('td');
    cell.textContent = text;
    row.appendChild(cell);
  }
  const actionCell = document.createElement('td');
  for (const action of actions) actionCell.appendChild(action);
  row.appendChild(actionCell);
  return row;
}

async function runSearch(): Promise<void> {
  const query = searchInput.value.trim();
  if (!query) {
    searchResults.replaceChildren();
    return;
  }
  const token = state.beginRequest();
  try {
    const companies = await api.searchCompanies(query, 25);
    if (!state.isCurrent(token)) return; // superseded while typing
    const table = document.createElement('table');
    table.innerHTML =
      '<thead><tr><th>company</th><th>rank</th><th>score</th>' +
      '<th>status</th><th>location</th><th>founded</th><th></th></tr></thead>';
    const body = document.createElement('tbody');
    for (const company of companies) {
      const open = document.createElement('button');
      open.textContent = 'explore';
      open.addEventListener('click', () => void openDetail(company.id));
      const add = document.createElement('button');
      add.textContent = 'add to list';
      add.addEventListener('click', () => {
        if (state.addToBasket(company)) renderBasket();
        else toast(`${company.name} is already in the list`);
      });
      body.appendChild(summaryRow(company, [open, add]));
    }
    table.appendChild(body);
    searchResults.replaceChildren(table);
    if (companies.length === 0) {
      searchResults.textContent = 'no companies matched';
    }
  } catch (error) {
    if (state.isCurrent(token)) toast(describeError(error));
  }
}

let searchTimer = 0;
searchInput.addEventListener('input', () => {
  window.clearTimeout(searchTimer);
  searchTimer = window.setTimeout(() => void runSearch(), 180);
});

// -- ranking basket and modal -------------------------------------------------

function renderBasket(): void {
  basketBar.replaceChildren();
  for (const company of state.rankingBasket) {
    const chip = document.createElement('span');
    chip.className = 'chip';
    chip.textContent = company.name;
    const remove = document.createElement('button');
    remove.textContent = 'x';
    remove.addEventListener('click', () => {
      state.removeFromBasket(company.id);
      renderBasket();
    });
    chip.appendChild(remove);
    basketBar.appendChild(chip);
  }
  rankButton.disabled = !state.canRankBasket;
}

rankButton.addEventListener('click', () => {
  void (async () => {
    try {
      const payload = await api.rankCompanies(state.rankingBasket.map((c) => c.id));
      state.applyRankingResponse(payload.entries);
      renderRankingModal();
    } catch (error) {
      toast(describeError(error));
    }
  })();
});

function renderRankingModal(): void {
  if (!state.rankingResult) return;
  modalBody.replaceChildren();
  const list = document.createElement('ol');
  for (const company of state.rankingResult) {
    const item = document.createElement('li');
    item.textContent = `${company.name} — score ${company.score.toFixed(4)}`;
    const open = document.createElement('button');
    open.textContent = 'explore';
    open.addEventListener('click', () => {
      modal.classList.remove('open');
      void openDetail(company.id);
    });
    item.appendChild(open);
    list.appendChild(item);
  }
  modalBody.appendChild(list);
  modal.classList.add('open');
}

el<HTMLButtonElement>('modal-close').addEventListener('click', () => {
  modal.classList.remove('open');
  state.closeRankingModal();
});

// -- company detail: subgraph, whitespace, expansion ---------------------------

async function openDetail(companyId: string): Promise<void> {
  const token = state.beginRequest();
  try {
    const [summary, subgraph] = await Promise.all([
      api.companyDetail(companyId),
      api.subgraphToRoot(companyId, 5),
    ]);
    if (!state.isCurrent(token)) return;
    state.loadSubgraph(rootId, companyId, subgraph);
    detailTitle.textContent = `${summary.name} — rank ${summary.rank ?? '-'}`;
    searchView.classList.add('hidden');
    detailView.classList.remove('hidden');
    viewport = resetViewport();
    relayout();
    renderInfoPanel();
    await loadWhitespace(companyId);
  } catch (error) {
    toast(describeError(error));
  }
}

async function loadWhitespace(companyId: string): Promise<void> {
  whitespacePanel.replaceChildren();
  const heading = document.createElement('h3');
  heading.textContent = 'Top whitespace companies';
  whitespacePanel.appendChild(heading);
  try {
    const payload = await api.whitespace(companyId, 10);
    if (payload.entries.length === 0) {
      const empty = document.createElement('p');
      empty.textContent = 'no whitespace candidates nearby';
      whitespacePanel.appendChild(empty);
      return;
    }
    const list = document.createElement('ol');
    for (const company of payload.entries) {
      const item = document.createElement('li');
      const link = document.createElement('a');
      link.href = '#';
      link.textContent = `${company.name} (score ${company.score.toFixed(4)})`;
      link.addEventListener('click', (event) => {
        event.preventDefault();
        void openDetail(company.id);
      });
      item.appendChild(link);
      list.appendChild(item);
    }
    whitespacePanel.appendChild(list);
  } catch (error) {
    toast(describeError(error));
  }
}

function renderInfoPanel(): void {
  infoPanel.replaceChildren();
  const graph = state.currentSubgraph;
  if (!graph) return;
  const heading = document.createElement('h3');
  heading.textContent = 'About the companies and people shown';
  infoPanel.appendChild(heading);
  for (const node of graph.nodes.values()) {
    const block = document.createElement('p');
    const name = document.createElement('strong');
    name.textContent = node.name;
    block.appendChild(name);
    const text = document.createElement('span');
    text.textContent = ` — ${node.description ?? (node.kind === 'person' ? 'professional' : 'company')}`;
    block.appendChild(text);
    infoPanel.appendChild(block);
  }
}

function relayout(): void {
  const graph = state.currentSubgraph;
  if (!graph) return;
  layout.setGraph(
    graph.nodes.keys(),
    [...graph.edges.values()].map((edge) => [edge.source, edge.target]),
  );
  layout.run(250);
  redraw();
}

function redraw(): void {
  const graph = state.currentSubgraph;
  if (!graph || !ctx) return;
  draw(ctx, graph, layout, viewport, state.selectedNode);
}

async function expandSelected(nodeId: string): Promise<void> {
  try {
    const fragment = await api.neighbors(nodeId, 8);
    const { addedNodes, addedEdges } = state.mergeFragment(fragment);
    if (addedNodes === 0 && addedEdges === 0) {
      toast('no further connections to show');
      return;
    }
    relayout();
    renderInfoPanel();
  } catch (error) {
    toast(describeError(error));
  }
}

canvas.addEventListener('click', (event) => {
  const graph = state.currentSubgraph;
  if (!graph) return;
  const rect = canvas.getBoundingClientRect();
  const hit = hitTest(graph, layout, viewport, event.clientX - rect.left, event.clientY - rect.top);
  state.selectedNode = hit;
  redraw();
});

canvas.addEventListener('dblclick', (event) => {
  const graph = state.currentSubgraph;
  if (!graph) return;
  const rect = canvas.getBoundingClientRect();
  const hit = hitTest(graph, layout, viewport, event.clientX - rect.left, event.clientY - rect.top);
  if (hit) void expandSelected(hit);
});

canvas.addEventListener('wheel', (event) => {
  event.preventDefault();
  const rect = canvas.getBoundingClientRect();
  viewport = zoomAt(
    viewport,
    event.clientX - rect.left,
    event.clientY - rect.top,
    event.deltaY < 0 ? 1.15 : 0.87,
  );
  redraw();
});

el<HTMLButtonElement>('zoom-in').addEventListener('click', () => {
  viewport = zoomAt(viewport, canvas.width / 2, canvas.height / 2, 1.2);
  redraw();
});
el<HTMLButtonElement>('zoom-out').addEventListener('click', () => {
  viewport = zoomAt(viewport, canvas.width / 2, canvas.height / 2, 0.83);
  redraw();
});
el<HTMLButtonElement>('zoom-reset').addEventListener('click', () => {
  viewport = resetViewport();
  relayout();
});
el<HTMLButtonElement>('back-to-search').addEventListener('click', () => {
  detailView.classList.add('hidden');
  searchView.classList.remove('hidden');
  state.activeView = 'search';
});

function renderLegend(): void {
  legendBox.replaceChildren();
  for (const entry of legendEntries()) {
    const item = document.createElement('span');
    item.className = `legend-item legend-${entry.swatch}`;
    item.textContent = entry.label;
    legendBox.appendChild(item);
  }
}

// -- boot ---------------------------------------------------------------------

void (async () => {
  renderLegend();
  renderBasket();
  try {
    const health = await api.health();
    rootId = health.root;
    toast(`connected: ${health.nodes} nodes, ${health.edges} edges`);
  } catch {
    toast('backend unreachable — start the API server first');
  }
})();
