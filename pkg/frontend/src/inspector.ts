/**
 * Cluster inspector render model.
 *
 * Pure data-to-strings mapping: every number displayed in the panel is
 * produced here via renderNumber, i.e. the API value stringified with
 * no rounding, so contract tests can byte-compare against recorded
 * fixtures. DOM assembly lives in panel.ts.
 */
import { renderNumber } from "./scales.js";
import type { ViewState } from "./state.js";
import { labelMethod } from "./state.js";
import type { CitersPayload, ClusterRow, LabelsPayload, SummaryPayload } from "./types.js";

export interface TermRow {
  term: string;
  scoreText: string;
  significant: boolean;
  consensusText: string;
}

export interface MethodList {
  method: string;
  reliabilityText: string;
  isBest: boolean;
  terms: TermRow[];
}

export interface SentenceRow {
  uidText: string;
  scoreText: string;
  text: string;
}

export interface CiterRow {
  uid: string;
  yearText: string;
  title: string;
  citedMembers: string[];
}

export interface InspectorModel {
  clusterId: number;
  title: string;
  sizeText: string;
  silhouetteText: string;
  tauText: string;
  activeMethod: string;
  activeTerms: TermRow[];
  allMethods: MethodList[];
  summaryRanker: string;
  sentences: SentenceRow[];
  citers: CiterRow[];
  flags: string[];
}

function termRows(labels: LabelsPayload, method: string, depth = 10): TermRow[] {
  const entries = labels.lists[method] ?? [];
  return entries.slice(0, depth).map((entry) => ({
    term: entry.term,
    scoreText: renderNumber(entry.score),
    significant: entry.significant === true,
    consensusText:
      entry.term in labels.consensus ? renderNumber(labels.consensus[entry.term]) : "",
  }));
}

export function buildInspectorModel(
  row: ClusterRow,
  labels: LabelsPayload,
  summary: SummaryPayload,
  citers: CitersPayload,
  state: ViewState,
): InspectorModel {
  const active = labelMethod(state);
  const methods = Object.keys(labels.lists).sort();
  return {
    clusterId: row.id,
    title: `#${row.id} ${labels.display_label || "(unlabeled)"}`,
    sizeText: renderNumber(row.size),
    silhouetteText: renderNumber(row.silhouette),
    tauText: renderNumber(row.tau),
    activeMethod: active,
    activeTerms: termRows(labels, active),
    allMethods: methods.map((method) => ({
      method,
      reliabilityText: renderNumber(labels.method_reliability[method] ?? 0),
      isBest: labels.best_methods.includes(method),
      terms: termRows(labels, method, 3),
    })),
    summaryRanker: summary.ranker,
    sentences: summary.sentences.map((sentence) => ({
      uidText: sentence.uid,
      scoreText: renderNumber(sentence.score),
      text: sentence.text,
    })),
    citers: citers.citers.map((citer) => ({
      uid: citer.uid,
      yearText: renderNumber(citer.year),
      title: citer.title,
      citedMembers: citer.cited_members,
    })),
    flags: labels.flags,
  };
}
