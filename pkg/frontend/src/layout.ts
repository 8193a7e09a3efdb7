/**
 * Deterministic force-directed layout. Seeded initial positions (one
 * angular sector per cluster) plus a fixed number of iterations of
 * repulsion, link springs, and cluster cohesion; the same network
 * always lays out identically.
 */
import type { NetworkLink, NetworkNode } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

/** Small deterministic PRNG (mulberry32). */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  seed?: number;
}

export function forceLayout(
  nodes: readonly NetworkNode[],
  links: readonly NetworkLink[],
  options: LayoutOptions,
): Map<string, Point> {
  const { width, height } = options;
  const iterations = options.iterations ?? 150;
  const rng = mulberry32(options.seed ?? 42);
  const ordered = [...nodes].sort((a, b) => (a.key < b.key ? -1 : 1));
  const clusters = [...new Set(ordered.map((n) => n.cluster))].sort((a, b) => a - b);
  const sector = new Map(clusters.map((c, i) => [c, (2 * Math.PI * i) / Math.max(clusters.length, 1)]));

  const index = new Map(ordered.map((n, i) => [n.key, i]));
  const x = new Float64Array(ordered.length);
  const y = new Float64Array(ordered.length);
  const cx = width / 2;
  const cy = height / 2;
  const spread = Math.min(width, height) / 3;
  ordered.forEach((node, i) => {
    const angle = (sector.get(node.cluster) ?? 0) + (rng() - 0.5) * 0.9;
    const radius = spread * (0.55 + 0.45 * rng());
    x[i] = cx + radius * Math.cos(angle);
    y[i] = cy + radius * Math.sin(angle);
  });

  const springs = links
    .map((l) => ({ a: index.get(l.i), b: index.get(l.j), w: l.weight }))
    .filter((s): s is { a: number; b: number; w: number } => s.a !== undefined && s.b !== undefined);

  const repulsion = (spread * spread) / Math.max(ordered.length, 1);
  for (let iter = 0; iter < iterations; iter++) {
    const temperature = 1 - iter / iterations;
    const fx = new Float64Array(ordered.length);
    const fy = new Float64Array(ordered.length);
    for (let i = 0; i < ordered.length; i++) {
      for (let j = i + 1; j < ordered.length; j++) {
        let dx = x[i] - x[j];
        let dy = y[i] - y[j];
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          dx = 0.01 * (1 + (i % 7));
          dy = 0.01 * (1 + (j % 5));
          d2 = dx * dx + dy * dy;
        }
        const force = repulsion / d2;
        fx[i] += dx * force;
        fy[i] += dy * force;
        fx[j] -= dx * force;
        fy[j] -= dy * force;
      }
    }
    for (const spring of springs) {
      const dx = x[spring.a] - x[spring.b];
      const dy = y[spring.a] - y[spring.b];
      const dist = Math.sqrt(dx * dx + dy * dy) || 1;
      const rest = 30 + 90 * (1 - spring.w);
      const force = ((dist - rest) / dist) * 0.05 * (0.3 + spring.w);
      fx[spring.a] -= dx * force;
      fy[spring.a] -= dy * force;
      fx[spring.b] += dx * force;
      fy[spring.b] += dy * force;
    }
    for (let i = 0; i < ordered.length; i++) {
      fx[i] += (cx - x[i]) * 0.002;
      fy[i] += (cy - y[i]) * 0.002;
      const cap = 12 * temperature + 0.5;
      x[i] += Math.max(-cap, Math.min(cap, fx[i]));
      y[i] += Math.max(-cap, Math.min(cap, fy[i]));
      x[i] = Math.max(10, Math.min(width - 10, x[i]));
      y[i] = Math.max(10, Math.min(height - 10, y[i]));
    }
  }

  const out = new Map<string, Point>();
  ordered.forEach((node, i) => out.set(node.key, { x: x[i], y: y[i] }));
  return out;
}

/** Mean position of a cluster's nodes (label anchor). */
export function clusterCenter(
  nodes: readonly NetworkNode[],
  positions: Map<string, Point>,
  cluster: number,
): Point | null {
  let sx = 0;
  let sy = 0;
  let count = 0;
  for (const node of nodes) {
    if (node.cluster !== cluster) continue;
    const p = positions.get(node.key);
    if (!p) continue;
    sx += p.x;
    sy += p.y;
    count++;
  }
  return count ? { x: sx / count, y: sy / count } : null;
}
