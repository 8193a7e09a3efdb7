/**
 * Canvas timeline view: one horizontal lane per visible cluster ordered
 * by size, members placed at their first-cited year, a 5-year tick
 * legend, lane-end labels, and togglable cross-lane co-citation arcs.
 */
import {
  BURST_RING_COLOR,
  clusterColor,
  hasPurpleRim,
  PURPLE_RIM_COLOR,
  nodeRadius,
  ringThickness,
  rimThickness,
  yearColor,
} from "./scales.js";
import { isHidden, ViewState } from "./state.js";
import type { ClusterRow, HistoryPayload, NetworkPayload, TimelinePayload } from "./types.js";

export interface TimelineData {
  network: NetworkPayload;
  clusters: ClusterRow[];
  timeline: TimelinePayload;
  startYear: number;
  endYear: number;
  histories: Map<string, HistoryPayload>;
  labels: Map<number, string>;
  taus: Map<number, string>;
  /** members a selected citer cites, drawn with a halo */
  highlight?: Set<string>;
}

const MARGIN_LEFT = 40;
const MARGIN_RIGHT = 230;
const HEADER = 34;
const LANE_HEIGHT = 56;

export class TimelineView {
  private hits: { key: string; x: number; y: number; r: number }[] = [];

  constructor(private canvas: HTMLCanvasElement) {}

  laneCount(data: TimelineData, state: ViewState): number {
    return data.clusters.filter((c) => !isHidden(state, c.id)).length;
  }

  hitTest(px: number, py: number): string | null {
    for (const hit of this.hits) {
      if ((px - hit.x) ** 2 + (py - hit.y) ** 2 <= (hit.r + 4) ** 2) return hit.key;
    }
    return null;
  }

  render(data: TimelineData, state: ViewState): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width } = this.canvas;
    const visible = data.clusters.filter((c) => !isHidden(state, c.id));
    const neededHeight = HEADER + visible.length * LANE_HEIGHT + 10;
    if (this.canvas.height !== neededHeight) this.canvas.height = neededHeight;
    ctx.clearRect(0, 0, width, this.canvas.height);
    this.hits = [];

    const spanYears = Math.max(data.endYear - data.startYear, 1);
    const plotWidth = width - MARGIN_LEFT - MARGIN_RIGHT;
    const yearX = (year: number) =>
      MARGIN_LEFT + ((year - data.startYear) / spanYears) * plotWidth;

    // 5-year legend ticks above the display area
    ctx.textAlign = "center";
    ctx.font = "11px sans-serif";
    ctx.fillStyle = "#555";
    for (let year = data.startYear; year <= data.endYear; year++) {
      if ((year - data.startYear) % 5 !== 0) continue;
      const tick = yearX(year);
      ctx.fillText(String(year), tick, 14);
      ctx.strokeStyle = "#ddd";
      ctx.beginPath();
      ctx.moveTo(tick, HEADER - 14);
      ctx.lineTo(tick, this.canvas.height - 4);
      ctx.stroke();
    }

    const membersByKey = new Map<string, { lane: number; year: number | null; rings: Record<string, number> }>();
    const positionByKey = new Map<string, { x: number; y: number }>();

    visible.forEach((cluster, laneIndex) => {
      const laneY = HEADER + laneIndex * LANE_HEIGHT + LANE_HEIGHT / 2;
      ctx.strokeStyle = "#e4e4e4";
      ctx.beginPath();
      ctx.moveTo(MARGIN_LEFT, laneY);
      ctx.lineTo(width - MARGIN_RIGHT + 24, laneY);
      ctx.stroke();
      const clusterTimeline = data.timeline.clusters.find((c) => c.cluster_id === cluster.id);
      for (const member of clusterTimeline?.members ?? []) {
        membersByKey.set(member.key, {
          lane: laneIndex,
          year: member.first_cited_year,
          rings: member.rings,
        });
      }
      // label (current method) and tau badge at the lane's end
      const label = data.labels.get(cluster.id) ?? cluster.label;
      const tau = data.taus.get(cluster.id);
      ctx.textAlign = "left";
      ctx.font = cluster.id === state.selectedCluster ? "bold 12px sans-serif" : "12px sans-serif";
      ctx.fillStyle = cluster.id === state.selectedCluster ? "#c22" : "#333";
      const tail = tau !== undefined && tau !== "-" ? `  (tau ${tau})` : "";
      ctx.fillText(`#${cluster.id} ${label}${tail}`, width - MARGIN_RIGHT + 30, laneY + 4);
    });

    const nodeByKey = new Map(data.network.nodes.map((n) => [n.key, n]));
    const maxCitations = Math.max(...data.network.nodes.map((n) => n.citations), 1);

    for (const [key, placed] of membersByKey) {
      if (placed.year === null) continue;
      const node = nodeByKey.get(key);
      if (!node) continue;
      const x = yearX(placed.year);
      const y = HEADER + placed.lane * LANE_HEIGHT + LANE_HEIGHT / 2;
      positionByKey.set(key, { x, y });
      const radius = nodeRadius(node.citations, maxCitations) * 0.8;
      const years = Object.keys(placed.rings).map(Number).sort((a, b) => a - b);
      const maxCount = Math.max(...Object.values(placed.rings), 1);
      let r = radius * 0.35;
      ctx.beginPath();
      ctx.arc(x, y, r, 0, 2 * Math.PI);
      ctx.fillStyle = clusterColor(node.cluster);
      ctx.fill();
      const band = radius * 0.65;
      for (const year of years) {
        const t = ringThickness(placed.rings[String(year)], maxCount, band / Math.max(years.length, 1)) + 0.5;
        ctx.beginPath();
        ctx.arc(x, y, r + t / 2, 0, 2 * Math.PI);
        ctx.strokeStyle = yearColor(year, data.startYear);
        ctx.lineWidth = t;
        ctx.stroke();
        r += t;
      }
      const history = data.histories.get(key);
      if (history && history.burst_intervals.length > 0) {
        ctx.beginPath();
        ctx.arc(x, y, r + 1.2, 0, 2 * Math.PI);
        ctx.strokeStyle = BURST_RING_COLOR;
        ctx.lineWidth = 1.8;
        ctx.stroke();
        r += 2;
      }
      if (hasPurpleRim(node.betweenness)) {
        ctx.beginPath();
        ctx.arc(x, y, r + rimThickness(node.betweenness) / 2, 0, 2 * Math.PI);
        ctx.strokeStyle = PURPLE_RIM_COLOR;
        ctx.lineWidth = rimThickness(node.betweenness);
        ctx.stroke();
        r += rimThickness(node.betweenness);
      }
      if (data.highlight?.has(key)) {
        ctx.beginPath();
        ctx.arc(x, y, r + 3, 0, 2 * Math.PI);
        ctx.strokeStyle = "#f5a623";
        ctx.lineWidth = 2.5;
        ctx.stroke();
      }
      if (state.selectedNode === key) {
        ctx.beginPath();
        ctx.arc(x, y, r + 4, 0, 2 * Math.PI);
        ctx.strokeStyle = "#111";
        ctx.setLineDash([3, 2]);
        ctx.stroke();
        ctx.setLineDash([]);
      }
      this.hits.push({ key, x, y, r });
    }

    if (state.showArcs) {
      ctx.globalAlpha = 0.3;
      for (const link of data.network.links) {
        const a = positionByKey.get(link.i);
        const b = positionByKey.get(link.j);
        if (!a || !b || a.y === b.y) continue;
        ctx.strokeStyle = yearColor(link.first_slice_year, data.startYear);
        ctx.lineWidth = 1;
        ctx.beginPath();
        const mx = (a.x + b.x) / 2;
        ctx.moveTo(a.x, a.y);
        ctx.quadraticCurveTo(mx, (a.y + b.y) / 2 - 26, b.x, b.y);
        ctx.stroke();
      }
      ctx.globalAlpha = 1;
    }
  }
}
