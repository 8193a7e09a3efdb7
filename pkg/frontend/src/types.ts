/** Payload shapes of the read-only analysis API. */

export interface Meta {
  bundle_version: number;
  config: {
    unit: string;
    measure: string;
    start_year: number;
    end_year: number;
    summary_k: number;
    summary_ranker: string;
    [key: string]: unknown;
  };
  k: number;
  modularity_q: number;
  mean_silhouette: number;
  ncut: number;
  n_nodes: number;
  n_links: number;
}

export interface NetworkNode {
  key: string;
  cluster: number;
  citations: number;
  first_cited_year: number | null;
  betweenness: number;
  silhouette: number;
  burstness: number;
  sigma: number;
}

export interface NetworkLink {
  i: string;
  j: string;
  weight: number;
  raw_count: number;
  first_slice_year: number;
}

export interface NetworkPayload {
  unit: string;
  measure: string;
  clusters_included: number[];
  page: number;
  per_page: number;
  total_clusters: number;
  nodes: NetworkNode[];
  links: NetworkLink[];
}

export interface ClusterRow {
  id: number;
  size: number;
  silhouette: number;
  label: string;
  alt_label: string;
  tau: number | null;
}

export interface LabelEntry {
  term: string;
  score: number;
  significant: boolean | null;
}

export interface LabelsPayload {
  cluster_id: number;
  display_label: string;
  alt_label: string;
  flags: string[];
  lists: Record<string, LabelEntry[]>;
  consensus: Record<string, number>;
  method_reliability: Record<string, number>;
  best_methods: string[];
}

export interface SummarySentence {
  uid: string;
  position: number;
  score: number;
  text: string;
}

export interface SummaryPayload {
  cluster_id: number;
  ranker: string;
  k: number;
  sentences: SummarySentence[];
}

export interface Citer {
  uid: string;
  year: number | null;
  title: string;
  cited_members: string[];
}

export interface CitersPayload {
  cluster_id: number;
  citers: Citer[];
}

export interface BurstInterval {
  start_year: number;
  end_year: number;
  weight: number;
}

export interface HistoryPayload {
  key: string;
  cluster: number;
  first_cited_year: number | null;
  per_year_counts: Record<string, number>;
  burst_intervals: BurstInterval[];
  burstness: number;
  centrality: number;
  sigma: number;
}

export interface TimelineMember {
  key: string;
  first_cited_year: number | null;
  rings: Record<string, number>;
}

export interface TimelineCluster {
  cluster_id: number;
  label: string;
  members: TimelineMember[];
}

export interface TimelinePayload {
  clusters: TimelineCluster[];
}
