/**
 * Explorer view state: which view is active, which clusters are hidden,
 * the current selections, and the chosen label/summary methods.
 *
 * The whole state serializes to the URL fragment so analyst sessions
 * are shareable; selecting a hidden cluster unhides it.
 */

export type ViewKind = "graph" | "timeline";

export const LABEL_SOURCES = ["title", "abstract", "index"] as const;
export const LABEL_ALGOS = ["tfidf", "llr", "mi"] as const;
export const RANKERS = ["energy", "gtf", "gtf_idf"] as const;

export interface ViewState {
  view: ViewKind;
  hidden: number[];
  selectedCluster: number | null;
  selectedNode: string | null;
  labelSource: string;
  labelAlgo: string;
  ranker: string;
  summaryK: number;
  yearFrom: number | null;
  yearTo: number | null;
  showArcs: boolean;
}

export function defaultState(): ViewState {
  return {
    view: "graph",
    hidden: [],
    selectedCluster: null,
    selectedNode: null,
    labelSource: "title",
    labelAlgo: "llr",
    ranker: "energy",
    summaryK: 5,
    yearFrom: null,
    yearTo: null,
    showArcs: false,
  };
}

export function labelMethod(state: ViewState): string {
  return `${state.labelSource}.${state.labelAlgo}`;
}

export function isHidden(state: ViewState, cluster: number): boolean {
  return state.hidden.includes(cluster);
}

export function hideCluster(state: ViewState, cluster: number): ViewState {
  const hidden = state.hidden.includes(cluster)
    ? state.hidden
    : [...state.hidden, cluster].sort((a, b) => a - b);
  const selectedCluster = state.selectedCluster === cluster ? null : state.selectedCluster;
  return { ...state, hidden, selectedCluster };
}

export function showCluster(state: ViewState, cluster: number): ViewState {
  return { ...state, hidden: state.hidden.filter((c) => c !== cluster) };
}

/** Selecting a cluster always unhides it: hidden and selected never overlap. */
export function selectCluster(state: ViewState, cluster: number | null): ViewState {
  if (cluster === null) {
    return { ...state, selectedCluster: null };
  }
  const unhidden = showCluster(state, cluster);
  return { ...unhidden, selectedCluster: cluster };
}

export function selectNode(state: ViewState, node: string | null): ViewState {
  return { ...state, selectedNode: node };
}

export function setLabelMethod(state: ViewState, source: string, algo: string): ViewState {
  if (!LABEL_SOURCES.includes(source as never) || !LABEL_ALGOS.includes(algo as never)) {
    return state;
  }
  return { ...state, labelSource: source, labelAlgo: algo };
}

export function setRanker(state: ViewState, ranker: string, k: number): ViewState {
  if (!RANKERS.includes(ranker as never) || k < 0 || !Number.isInteger(k)) {
    return state;
  }
  return { ...state, ranker, summaryK: k };
}

export function setView(state: ViewState, view: ViewKind): ViewState {
  return { ...state, view };
}

export function setYearRange(state: ViewState, from: number | null, to: number | null): ViewState {
  return { ...state, yearFrom: from, yearTo: to };
}

/** Encode into a URL fragment (no leading '#'). */
export function encodeState(state: ViewState): string {
  const parts: string[] = [`view=${state.view}`];
  if (state.hidden.length) parts.push(`hidden=${state.hidden.join(",")}`);
  if (state.selectedCluster !== null) parts.push(`cluster=${state.selectedCluster}`);
  if (state.selectedNode !== null) parts.push(`node=${encodeURIComponent(state.selectedNode)}`);
  parts.push(`labels=${state.labelSource}.${state.labelAlgo}`);
  parts.push(`ranker=${state.ranker}`);
  parts.push(`k=${state.summaryK}`);
  if (state.yearFrom !== null && state.yearTo !== null) {
    parts.push(`years=${state.yearFrom}-${state.yearTo}`);
  }
  if (state.showArcs) parts.push("arcs=1");
  return parts.join("&");
}

/** Decode a URL fragment; unknown keys and malformed values fall back to
 * defaults rather than failing, so stale links still load. */
export function decodeState(fragment: string): ViewState {
  const state = defaultState();
  const text = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  if (!text) return state;
  for (const part of text.split("&")) {
    const eq = part.indexOf("=");
    if (eq < 0) continue;
    const key = part.slice(0, eq);
    const value = part.slice(eq + 1);
    switch (key) {
      case "view":
        if (value === "graph" || value === "timeline") state.view = value;
        break;
      case "hidden":
        state.hidden = value
          .split(",")
          .map((v) => Number.parseInt(v, 10))
          .filter((v) => Number.isInteger(v) && v >= 0)
          .sort((a, b) => a - b);
        break;
      case "cluster": {
        const cluster = Number.parseInt(value, 10);
        if (Number.isInteger(cluster) && cluster >= 0) state.selectedCluster = cluster;
        break;
      }
      case "node":
        state.selectedNode = decodeURIComponent(value);
        break;
      case "labels": {
        const [source, algo] = value.split(".");
        if (
          LABEL_SOURCES.includes(source as never) &&
          LABEL_ALGOS.includes(algo as never)
        ) {
          state.labelSource = source;
          state.labelAlgo = algo;
        }
        break;
      }
      case "ranker":
        if (RANKERS.includes(value as never)) state.ranker = value;
        break;
      case "k": {
        const k = Number.parseInt(value, 10);
        if (Number.isInteger(k) && k >= 0) state.summaryK = k;
        break;
      }
      case "years": {
        const [from, to] = value.split("-").map((v) => Number.parseInt(v, 10));
        if (Number.isInteger(from) && Number.isInteger(to) && from <= to) {
          state.yearFrom = from;
          state.yearTo = to;
        }
        break;
      }
      case "arcs":
        state.showArcs = value === "1";
        break;
    }
  }
  // invariant: a selected cluster is never hidden
  if (state.selectedCluster !== null) {
    state.hidden = state.hidden.filter((c) => c !== state.selectedCluster);
  }
  return state;
}
