/**
 * Explorer bootstrap: loads the bundle overview from the API, renders
 * the active view, and keeps ViewState synchronized with the URL
 * fragment. The UI never computes analysis results; it only presents
 * API fields.
 */
import { ApiClient } from "./api.js";
import { GraphView } from "./graphview.js";
import { buildInspectorModel } from "./inspector.js";
import { renderClusterList, renderControls, renderInspector, renderNodeCard } from "./panel.js";
import { renderNumber } from "./scales.js";
import {
  decodeState,
  encodeState,
  hideCluster,
  isHidden,
  labelMethod,
  selectCluster,
  selectNode,
  setLabelMethod,
  setRanker,
  setView,
  showCluster,
  ViewState,
} from "./state.js";
import { TimelineView } from "./timeline.js";
import type { ClusterRow, HistoryPayload, Meta, NetworkPayload, TimelinePayload } from "./types.js";

const api = new ApiClient("");

interface AppData {
  meta: Meta;
  clusters: ClusterRow[];
  network: NetworkPayload;
  timeline: TimelinePayload;
  histories: Map<string, HistoryPayload>;
}

let state: ViewState = decodeState(window.location.hash);
let data: AppData | null = null;
let graphView: GraphView;
let timelineView: TimelineView;
const labelCache = new Map<number, Map<string, string>>();
// transient: members cited by the citer the analyst clicked last
let highlighted = new Set<string>();

function pushState(next: ViewState): void {
  state = next;
  const fragment = encodeState(state);
  if (window.location.hash.slice(1) !== fragment) {
    window.history.replaceState(null, "", `#${fragment}`);
  }
  render();
}

async function currentLabels(): Promise<Map<number, string>> {
  if (!data) return new Map();
  const method = labelMethod(state);
  const out = new Map<number, string>();
  for (const cluster of data.clusters) {
    let methods = labelCache.get(cluster.id);
    if (!methods) {
      const labels = await api.labels(cluster.id);
      methods = new Map();
      for (const [key, terms] of Object.entries(labels.lists)) {
        methods.set(key, terms.length ? terms[0].term : labels.display_label);
      }
      methods.set("display", labels.display_label);
      labelCache.set(cluster.id, methods);
    }
    out.set(cluster.id, methods.get(method) || methods.get("display") || cluster.label);
  }
  return out;
}

async function render(): Promise<void> {
  if (!data) return;
  const banner = document.getElementById("error-banner")!;
  banner.hidden = true;
  try {
    const labels = await api.latest("labels", currentLabels);
    if (labels === null) return;

    const graphCanvas = document.getElementById("graph-canvas") as HTMLCanvasElement;
    const timelineCanvas = document.getElementById("timeline-canvas") as HTMLCanvasElement;
    graphCanvas.hidden = state.view !== "graph";
    timelineCanvas.hidden = state.view !== "timeline";
    document.getElementById("view-graph")!.classList.toggle("active", state.view === "graph");
    document.getElementById("view-timeline")!.classList.toggle("active", state.view === "timeline");

    const shared = {
      network: data.network,
      clusters: data.clusters,
      timeline: data.timeline,
      startYear: data.meta.config.start_year,
      histories: data.histories,
      labels,
      highlight: highlighted,
    };
    if (state.view === "graph") {
      graphView.render(shared, state);
    } else {
      timelineView.render(
        {
          ...shared,
          endYear: data.meta.config.end_year,
          taus: new Map(data.clusters.map((c) => [c.id, renderNumber(c.tau)])),
        },
        state,
      );
    }

    renderClusterList(document.getElementById("cluster-list")!, data.clusters, state, callbacks);
    renderControls(document.getElementById("controls")!, state, callbacks);
    await renderSidePanels();
  } catch (error) {
    banner.hidden = false;
    banner.textContent = `API error: ${error instanceof Error ? error.message : error}`;
  }
}

async function renderSidePanels(): Promise<void> {
  if (!data) return;
  const inspectorEl = document.getElementById("inspector")!;
  const nodeEl = document.getElementById("node-card")!;
  if (state.selectedCluster === null) {
    inspectorEl.replaceChildren();
    inspectorEl.append(document.createTextNode("select a cluster"));
  } else {
    const cid = state.selectedCluster;
    const payload = await api.latest(`inspector`, async () => {
      const [labels, summary, citers] = await Promise.all([
        api.labels(cid),
        api.summary(cid, state.ranker, state.summaryK),
        api.citers(cid),
      ]);
      return { labels, summary, citers };
    });
    if (payload === null) return;
    const row = data.clusters.find((c) => c.id === cid);
    if (row) {
      const model = buildInspectorModel(row, payload.labels, payload.summary, payload.citers, state);
      renderInspector(inspectorEl, model, callbacks);
    }
  }
  if (state.selectedNode === null) {
    nodeEl.replaceChildren();
  } else {
    const history =
      data.histories.get(state.selectedNode) ?? (await api.history(state.selectedNode));
    data.histories.set(state.selectedNode, history);
    renderNodeCard(nodeEl, history);
  }
}

const callbacks = {
  onSelectCluster: (cluster: number) => pushState(selectCluster(state, cluster)),
  onToggleHidden: (cluster: number) =>
    pushState(isHidden(state, cluster) ? showCluster(state, cluster) : hideCluster(state, cluster)),
  onLabelMethod: (source: string, algo: string) => pushState(setLabelMethod(state, source, algo)),
  onRanker: (ranker: string, k: number) => pushState(setRanker(state, ranker, k)),
  onSelectCiter: (uid: string, citedMembers: string[]) => {
    // toggle: clicking the same citer again clears the highlight
    const same =
      highlighted.size === citedMembers.length && citedMembers.every((k) => highlighted.has(k));
    highlighted = same ? new Set() : new Set(citedMembers);
    void uid;
    render();
  },
};

function wireEvents(): void {
  window.addEventListener("hashchange", () => {
    state = decodeState(window.location.hash);
    render();
  });
  document.getElementById("view-graph")!.addEventListener("click", () => pushState(setView(state, "graph")));
  document
    .getElementById("view-timeline")!
    .addEventListener("click", () => pushState(setView(state, "timeline")));
  const arcToggle = document.getElementById("arc-toggle") as HTMLInputElement;
  arcToggle.addEventListener("change", () => pushState({ ...state, showArcs: arcToggle.checked }));

  const graphCanvas = document.getElementById("graph-canvas") as HTMLCanvasElement;
  graphCanvas.addEventListener("click", (event) => {
    if (!data) return;
    const rect = graphCanvas.getBoundingClientRect();
    const key = graphView.hitTest(
      {
        network: data.network,
        clusters: data.clusters,
        timeline: data.timeline,
        startYear: data.meta.config.start_year,
        histories: data.histories,
        labels: new Map(),
      },
      state,
      event.clientX - rect.left,
      event.clientY - rect.top,
    );
    if (key) {
      const node = data.network.nodes.find((n) => n.key === key);
      let next = selectNode(state, key);
      if (node) next = selectCluster(next, node.cluster);
      pushState(next);
    }
  });
  const timelineCanvas = document.getElementById("timeline-canvas") as HTMLCanvasElement;
  timelineCanvas.addEventListener("click", (event) => {
    if (!data) return;
    const rect = timelineCanvas.getBoundingClientRect();
    const key = timelineView.hitTest(event.clientX - rect.left, event.clientY - rect.top);
    if (key) {
      const node = data.network.nodes.find((n) => n.key === key);
      let next = selectNode(state, key);
      if (node) next = selectCluster(next, node.cluster);
      pushState(next);
    }
  });

  // keyboard navigation: arrows move the cluster selection, h toggles
  // visibility, v flips the view, 1-9 jump to a label method
  document.addEventListener("keydown", (event) => {
    if (!data) return;
    if (event.target instanceof HTMLInputElement || event.target instanceof HTMLSelectElement) return;
    const ids = data.clusters.map((c) => c.id);
    if (event.key === "ArrowDown" || event.key === "ArrowUp") {
      event.preventDefault();
      const index = state.selectedCluster === null ? -1 : ids.indexOf(state.selectedCluster);
      const delta = event.key === "ArrowDown" ? 1 : -1;
      const next = ids[(index + delta + ids.length) % ids.length];
      pushState(selectCluster(state, next));
    } else if (event.key.toLowerCase() === "h" && state.selectedCluster !== null) {
      callbacks.onToggleHidden(state.selectedCluster);
    } else if (event.key.toLowerCase() === "v") {
      pushState(setView(state, state.view === "graph" ? "timeline" : "graph"));
    }
  });
}

async function boot(): Promise<void> {
  const banner = document.getElementById("error-banner")!;
  try {
    const [meta, clusters, network, timeline] = await Promise.all([
      api.meta(),
      api.clusters(),
      api.network(),
      api.timeline(),
    ]);
    const histories = new Map<string, HistoryPayload>();
    // preload burst histories for decorations (burst ring rule)
    await Promise.all(
      network.nodes.map(async (node) => {
        histories.set(node.key, await api.history(node.key));
      }),
    );
    data = { meta, clusters, network, timeline, histories };
    document.getElementById("meta-line")!.textContent =
      `${meta.config.unit} / ${meta.config.measure} | ${meta.n_nodes} nodes, ${meta.n_links} links | ` +
      `k=${renderNumber(meta.k)} Q=${renderNumber(meta.modularity_q)} ` +
      `mean silhouette=${renderNumber(meta.mean_silhouette)}`;
    graphView = new GraphView(document.getElementById("graph-canvas") as HTMLCanvasElement);
    timelineView = new TimelineView(document.getElementById("timeline-canvas") as HTMLCanvasElement);
    wireEvents();
    render();
  } catch (error) {
    banner.hidden = false;
    banner.textContent = `failed to load bundle: ${error instanceof Error ? error.message : error}`;
  }
}

boot();
