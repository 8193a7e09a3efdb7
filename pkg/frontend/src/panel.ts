/**
 * DOM assembly for the sidebar: cluster list, label-method and summary
 * controls, the cluster inspector, and the node history card. All
 * content strings come from the pure render models.
 */
import type { InspectorModel } from "./inspector.js";
import { renderNumber } from "./scales.js";
import { LABEL_ALGOS, LABEL_SOURCES, RANKERS, ViewState, isHidden } from "./state.js";
import type { ClusterRow, HistoryPayload } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export interface PanelCallbacks {
  onSelectCluster(cluster: number): void;
  onToggleHidden(cluster: number): void;
  onLabelMethod(source: string, algo: string): void;
  onRanker(ranker: string, k: number): void;
  onSelectCiter(uid: string, citedMembers: string[]): void;
}

export function renderClusterList(
  container: HTMLElement,
  clusters: ClusterRow[],
  state: ViewState,
  callbacks: PanelCallbacks,
): void {
  container.replaceChildren();
  const list = el("ul", "cluster-list");
  list.setAttribute("role", "listbox");
  for (const cluster of clusters) {
    const item = el("li", "cluster-item");
    item.tabIndex = 0;
    item.dataset.cluster = String(cluster.id);
    item.setAttribute("role", "option");
    if (cluster.id === state.selectedCluster) item.classList.add("selected");
    if (isHidden(state, cluster.id)) item.classList.add("hidden-cluster");
    const name = el("span", "cluster-name", `#${cluster.id} ${cluster.label || "(unlabeled)"}`);
    const size = el("span", "cluster-size", renderNumber(cluster.size));
    const hide = el("button", "hide-btn", isHidden(state, cluster.id) ? "show" : "hide");
    hide.title = "Toggle cluster visibility";
    hide.addEventListener("click", (event) => {
      event.stopPropagation();
      callbacks.onToggleHidden(cluster.id);
    });
    item.append(name, size, hide);
    item.addEventListener("click", () => callbacks.onSelectCluster(cluster.id));
    item.addEventListener("keydown", (event) => {
      if (event.key === "Enter" || event.key === " ") {
        event.preventDefault();
        callbacks.onSelectCluster(cluster.id);
      }
      if (event.key.toLowerCase() === "h") {
        event.preventDefault();
        callbacks.onToggleHidden(cluster.id);
      }
    });
    list.append(item);
  }
  container.append(list);
}

export function renderControls(
  container: HTMLElement,
  state: ViewState,
  callbacks: PanelCallbacks,
): void {
  container.replaceChildren();

  const labelRow = el("div", "control-row");
  labelRow.append(el("label", "control-label", "labels"));
  const sourceSelect = el("select");
  sourceSelect.id = "label-source";
  for (const source of LABEL_SOURCES) {
    const option = el("option", undefined, source);
    option.value = source;
    if (source === state.labelSource) option.selected = true;
    sourceSelect.append(option);
  }
  const algoSelect = el("select");
  algoSelect.id = "label-algo";
  for (const algo of LABEL_ALGOS) {
    const option = el("option", undefined, algo);
    option.value = algo;
    if (algo === state.labelAlgo) option.selected = true;
    algoSelect.append(option);
  }
  const notify = () => callbacks.onLabelMethod(sourceSelect.value, algoSelect.value);
  sourceSelect.addEventListener("change", notify);
  algoSelect.addEventListener("change", notify);
  labelRow.append(sourceSelect, algoSelect);

  const summaryRow = el("div", "control-row");
  summaryRow.append(el("label", "control-label", "summary"));
  const rankerSelect = el("select");
  rankerSelect.id = "summary-ranker";
  for (const ranker of RANKERS) {
    const option = el("option", undefined, ranker);
    option.value = ranker;
    if (ranker === state.ranker) option.selected = true;
    rankerSelect.append(option);
  }
  const kInput = el("input");
  kInput.id = "summary-k";
  kInput.type = "number";
  kInput.min = "0";
  kInput.max = "50";
  kInput.value = String(state.summaryK);
  const notifySummary = () =>
    callbacks.onRanker(rankerSelect.value, Number.parseInt(kInput.value || "0", 10));
  rankerSelect.addEventListener("change", notifySummary);
  kInput.addEventListener("change", notifySummary);
  summaryRow.append(rankerSelect, kInput);

  container.append(labelRow, summaryRow);
}

export function renderInspector(
  container: HTMLElement,
  model: InspectorModel,
  callbacks: PanelCallbacks,
): void {
  container.replaceChildren();
  container.append(el("h2", "inspector-title", model.title));

  const stats = el("dl", "stat-grid");
  for (const [name, value] of [
    ["size", model.sizeText],
    ["silhouette", model.silhouetteText],
    ["time span", model.tauText],
  ]) {
    stats.append(el("dt", undefined, name), el("dd", undefined, value));
  }
  container.append(stats);
  if (model.flags.length) {
    container.append(el("p", "flags", `flags: ${model.flags.join(", ")}`));
  }

  container.append(el("h3", undefined, `terms by ${model.activeMethod}`));
  const termTable = el("table", "term-table");
  for (const term of model.activeTerms) {
    const row = el("tr");
    row.append(
      el("td", "term" + (term.significant ? " significant" : ""), term.term),
      el("td", "score", term.scoreText),
      el("td", "consensus", term.consensusText),
    );
    termTable.append(row);
  }
  container.append(termTable);

  const details = el("details");
  details.append(el("summary", undefined, "all nine ranked lists"));
  for (const method of model.allMethods) {
    const head = `${method.method}${method.isBest ? " *" : ""} (reliability ${method.reliabilityText})`;
    details.append(el("h4", undefined, head));
    const tbl = el("table", "term-table");
    for (const term of method.terms) {
      const row = el("tr");
      row.append(
        el("td", "term" + (term.significant ? " significant" : ""), term.term),
        el("td", "score", term.scoreText),
      );
      tbl.append(row);
    }
    details.append(tbl);
  }
  container.append(details);

  container.append(el("h3", undefined, `summary (${model.summaryRanker})`));
  const sentenceList = el("ol", "sentence-list");
  for (const sentence of model.sentences) {
    const item = el("li");
    item.append(
      el("div", "sentence-meta", `${sentence.uidText} (score ${sentence.scoreText})`),
      el("div", "sentence-text", sentence.text),
    );
    sentenceList.append(item);
  }
  container.append(sentenceList);

  container.append(el("h3", undefined, `citers (${model.citers.length})`));
  const citerList = el("ul", "citer-list");
  for (const citer of model.citers) {
    const item = el("li", "citer-item");
    item.dataset.uid = citer.uid;
    item.title = `cites ${citer.citedMembers.length} cluster member(s); click to highlight`;
    item.append(
      el("span", "citer-meta", `${citer.uid} (${citer.yearText}) `),
      el("span", "citer-title", citer.title),
    );
    item.addEventListener("click", () => callbacks.onSelectCiter(citer.uid, citer.citedMembers));
    citerList.append(item);
  }
  container.append(citerList);
}

export function renderNodeCard(container: HTMLElement, history: HistoryPayload): void {
  container.replaceChildren();
  container.append(el("h3", undefined, history.key));
  const stats = el("dl", "stat-grid");
  for (const [name, value] of [
    ["cluster", renderNumber(history.cluster)],
    ["first cited", renderNumber(history.first_cited_year)],
    ["centrality", renderNumber(history.centrality)],
    ["burstness", renderNumber(history.burstness)],
    ["sigma", renderNumber(history.sigma)],
  ]) {
    stats.append(el("dt", undefined, name), el("dd", undefined, value));
  }
  container.append(stats);

  // citation-history sparkline with burst intervals shaded
  const years = Object.keys(history.per_year_counts).map(Number).sort((a, b) => a - b);
  if (years.length) {
    const canvas = el("canvas", "sparkline");
    canvas.width = 240;
    canvas.height = 48;
    const ctx = canvas.getContext("2d");
    if (ctx) {
      const first = years[0];
      const last = years[years.length - 1];
      const span = Math.max(last - first, 1);
      const max = Math.max(...years.map((y) => history.per_year_counts[String(y)]), 1);
      const xOf = (year: number) => 4 + ((year - first) / span) * 232;
      for (const interval of history.burst_intervals) {
        ctx.fillStyle = "rgba(232, 0, 13, 0.15)";
        const x0 = xOf(Math.max(interval.start_year, first));
        const x1 = xOf(Math.min(interval.end_year, last));
        ctx.fillRect(x0, 4, Math.max(x1 - x0, 2), 40);
      }
      ctx.strokeStyle = "#4c78a8";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      years.forEach((year, i) => {
        const x = xOf(year);
        const y = 44 - (history.per_year_counts[String(year)] / max) * 36;
        if (i === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
      });
      ctx.stroke();
    }
    container.append(canvas);
  }
}
