/**
 * Canvas cluster view: force-directed node-and-link scene with citation
 * rings per year, burst and centrality decorations, and cluster labels
 * at weight centers.
 */
import { clusterCenter, forceLayout, Point } from "./layout.js";
import {
  BURST_RING_COLOR,
  PURPLE_RIM_COLOR,
  clusterColor,
  hasPurpleRim,
  labelFontSize,
  linkWidth,
  nodeRadius,
  rimThickness,
  ringThickness,
  yearColor,
} from "./scales.js";
import { isHidden, ViewState } from "./state.js";
import type { ClusterRow, HistoryPayload, NetworkPayload, TimelinePayload } from "./types.js";

export interface GraphData {
  network: NetworkPayload;
  clusters: ClusterRow[];
  timeline: TimelinePayload;
  startYear: number;
  histories: Map<string, HistoryPayload>;
  labels: Map<number, string>;
  /** members a selected citer cites, drawn with a halo */
  highlight?: Set<string>;
}

export class GraphView {
  private positions: Map<string, Point> = new Map();
  private layoutKey = "";

  constructor(private canvas: HTMLCanvasElement) {}

  /** Node under the pointer, for click selection. */
  hitTest(data: GraphData, state: ViewState, px: number, py: number): string | null {
    const maxCitations = Math.max(...data.network.nodes.map((n) => n.citations), 1);
    for (const node of data.network.nodes) {
      if (isHidden(state, node.cluster)) continue;
      const p = this.positions.get(node.key);
      if (!p) continue;
      const r = nodeRadius(node.citations, maxCitations) + 4;
      if ((px - p.x) ** 2 + (py - p.y) ** 2 <= r * r) return node.key;
    }
    return null;
  }

  render(data: GraphData, state: ViewState): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width, height } = this.canvas;
    const visibleNodes = data.network.nodes.filter((n) => !isHidden(state, n.cluster));
    const visibleKeys = new Set(visibleNodes.map((n) => n.key));

    const signature = data.network.nodes.map((n) => n.key).join("|");
    if (signature !== this.layoutKey) {
      this.positions = forceLayout(data.network.nodes, data.network.links, {
        width,
        height,
        seed: 42,
      });
      this.layoutKey = signature;
    }

    ctx.clearRect(0, 0, width, height);
    const maxCitations = Math.max(...data.network.nodes.map((n) => n.citations), 1);

    for (const link of data.network.links) {
      if (!visibleKeys.has(link.i) || !visibleKeys.has(link.j)) continue;
      const a = this.positions.get(link.i);
      const b = this.positions.get(link.j);
      if (!a || !b) continue;
      ctx.strokeStyle = yearColor(link.first_slice_year, data.startYear);
      ctx.globalAlpha = 0.45;
      ctx.lineWidth = linkWidth(link.weight);
      ctx.beginPath();
      ctx.moveTo(a.x, a.y);
      ctx.lineTo(b.x, b.y);
      ctx.stroke();
    }
    ctx.globalAlpha = 1;

    const ringsByKey = new Map<string, Record<string, number>>();
    for (const cluster of data.timeline.clusters) {
      for (const member of cluster.members) ringsByKey.set(member.key, member.rings);
    }

    for (const node of visibleNodes) {
      const p = this.positions.get(node.key);
      if (!p) continue;
      const radius = nodeRadius(node.citations, maxCitations);
      const rings = ringsByKey.get(node.key) ?? {};
      const years = Object.keys(rings).map(Number).sort((a, b) => a - b);
      const maxCount = Math.max(...Object.values(rings), 1);

      // citation rings, inner = earliest year, thickness per year count
      let r = radius * 0.35;
      ctx.beginPath();
      ctx.arc(p.x, p.y, r, 0, 2 * Math.PI);
      ctx.fillStyle = clusterColor(node.cluster);
      ctx.fill();
      const band = radius * 0.65;
      for (const year of years) {
        const t = ringThickness(rings[String(year)], maxCount, band / Math.max(years.length, 1)) + 0.6;
        ctx.beginPath();
        ctx.arc(p.x, p.y, r + t / 2, 0, 2 * Math.PI);
        ctx.strokeStyle = yearColor(year, data.startYear);
        ctx.lineWidth = t;
        ctx.stroke();
        r += t;
      }

      const history = data.histories.get(node.key);
      if (history && history.burst_intervals.length > 0) {
        ctx.beginPath();
        ctx.arc(p.x, p.y, r + 1.5, 0, 2 * Math.PI);
        ctx.strokeStyle = BURST_RING_COLOR;
        ctx.lineWidth = 2;
        ctx.stroke();
        r += 2.5;
      }
      if (hasPurpleRim(node.betweenness)) {
        ctx.beginPath();
        ctx.arc(p.x, p.y, r + rimThickness(node.betweenness) / 2 + 0.5, 0, 2 * Math.PI);
        ctx.strokeStyle = PURPLE_RIM_COLOR;
        ctx.lineWidth = rimThickness(node.betweenness);
        ctx.stroke();
      }
      if (data.highlight?.has(node.key)) {
        ctx.beginPath();
        ctx.arc(p.x, p.y, r + 4, 0, 2 * Math.PI);
        ctx.strokeStyle = "#f5a623";
        ctx.lineWidth = 3;
        ctx.stroke();
      }
      if (state.selectedNode === node.key) {
        ctx.beginPath();
        ctx.arc(p.x, p.y, r + 5, 0, 2 * Math.PI);
        ctx.strokeStyle = "#111";
        ctx.setLineDash([3, 2]);
        ctx.lineWidth = 1.5;
        ctx.stroke();
        ctx.setLineDash([]);
      }
    }

    // cluster labels at weight centers, font size by cluster size
    const maxSize = Math.max(...data.clusters.map((c) => c.size), 1);
    ctx.textAlign = "center";
    for (const cluster of data.clusters) {
      if (isHidden(state, cluster.id)) continue;
      const center = clusterCenter(data.network.nodes, this.positions, cluster.id);
      if (!center) continue;
      const label = data.labels.get(cluster.id) ?? cluster.label;
      ctx.font = `${labelFontSize(cluster.size, maxSize).toFixed(1)}px sans-serif`;
      ctx.fillStyle = cluster.id === state.selectedCluster ? "#c22" : "#333";
      ctx.fillText(`#${cluster.id} ${label}`, center.x, center.y - 6);
    }
  }
}
