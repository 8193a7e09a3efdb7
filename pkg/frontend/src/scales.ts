/**
 * Visual encoding rules. Every rule is a pure function of API data so
 * the thresholds are unit-testable without a browser.
 */
import type { BurstInterval } from "./types.js";

/** Nodes at or above this betweenness get a purple rim. */
export const PURPLE_RIM_THRESHOLD = 0.1;

export function hasPurpleRim(betweenness: number): boolean {
  return betweenness >= PURPLE_RIM_THRESHOLD;
}

/** Rim thickness grows with centrality (px). */
export function rimThickness(betweenness: number): number {
  return Math.min(1.5 + 10 * betweenness, 6);
}

export function hasBurstRing(intervals: readonly BurstInterval[]): boolean {
  return intervals.length > 0;
}

/**
 * Fixed 13-step categorical ramp for slice years (cold to warm), so
 * screenshots are comparable across runs. Years beyond the 13th step
 * wrap around.
 */
export const YEAR_RAMP: readonly string[] = [
  "#30123b",
  "#424ac0",
  "#3e7efc",
  "#18b3f1",
  "#1ae4b6",
  "#62fc6b",
  "#a4fc3c",
  "#d1e834",
  "#f3c63a",
  "#fe9b2d",
  "#f36315",
  "#d93806",
  "#7a0403",
];

export function yearColor(year: number, startYear: number): string {
  const offset = ((year - startYear) % YEAR_RAMP.length + YEAR_RAMP.length) % YEAR_RAMP.length;
  return YEAR_RAMP[offset];
}

/** Node radius follows the square root of total citations. */
export function nodeRadius(citations: number, maxCitations: number): number {
  if (maxCitations <= 0) return 3;
  return 3 + 15 * Math.sqrt(Math.max(citations, 0) / maxCitations);
}

/** Ring thickness is max-normalized per view (the largest yearly count
 * in view gets the full band). */
export function ringThickness(count: number, maxCount: number, band: number): number {
  if (maxCount <= 0 || count <= 0) return 0;
  return (band * count) / maxCount;
}

export function labelFontSize(clusterSize: number, maxClusterSize: number): number {
  if (maxClusterSize <= 0) return 11;
  return 11 + 13 * (clusterSize / maxClusterSize);
}

export function linkWidth(weight: number): number {
  return 0.5 + 3.5 * Math.min(Math.max(weight, 0), 1);
}

export const BURST_RING_COLOR = "#e8000d";
export const PURPLE_RIM_COLOR = "#8a2be2";

export const CLUSTER_PALETTE: readonly string[] = [
  "#4c78a8",
  "#f58518",
  "#54a24b",
  "#e45756",
  "#72b7b2",
  "#eeca3b",
  "#b279a2",
  "#ff9da6",
  "#9d755d",
  "#bab0ac",
];

export function clusterColor(cluster: number): string {
  return CLUSTER_PALETTE[cluster % CLUSTER_PALETTE.length];
}

/**
 * Presentation-only number rendering: the exact value received from the
 * API, stringified without rounding or reformatting. The inspector
 * displays nothing the API did not send.
 */
export function renderNumber(value: number | null): string {
  return value === null ? "-" : String(value);
}
