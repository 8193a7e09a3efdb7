/**
 * Typed client for the read-only analysis API.
 *
 * Responses are cached by endpoint+params (they are immutable on the
 * server); concurrent refreshes of one view slot carry sequence numbers
 * so a stale response never overwrites a newer one.
 */
import type {
  CitersPayload,
  ClusterRow,
  HistoryPayload,
  LabelsPayload,
  Meta,
  NetworkPayload,
  SummaryPayload,
  TimelinePayload,
} from "./types.js";

export type FetchLike = (url: string) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private cache = new Map<string, Promise<unknown>>();
  private sequences = new Map<string, number>();

  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private get<T>(path: string, params?: Record<string, string | number>): Promise<T> {
    let url = `${this.baseUrl}${path}`;
    if (params && Object.keys(params).length) {
      const query = Object.entries(params)
        .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(String(v))}`)
        .join("&");
      url += `?${query}`;
    }
    const cached = this.cache.get(url);
    if (cached) return cached as Promise<T>;
    const promise = this.fetchFn(url).then(async (response) => {
      if (!response.ok) {
        const body = (await response.json().catch(() => ({}))) as { error?: string };
        throw new ApiError(response.status, body.error ?? `request failed: ${url}`);
      }
      return (await response.json()) as T;
    });
    this.cache.set(url, promise);
    promise.catch(() => this.cache.delete(url)); // do not cache failures
    return promise;
  }

  /**
   * Run a request for a named view slot; resolves to null when a newer
   * request for the same slot started in the meantime.
   */
  async latest<T>(slot: string, request: () => Promise<T>): Promise<T | null> {
    const sequence = (this.sequences.get(slot) ?? 0) + 1;
    this.sequences.set(slot, sequence);
    const result = await request();
    return this.sequences.get(slot) === sequence ? result : null;
  }

  meta(): Promise<Meta> {
    return this.get("/api/meta");
  }

  network(cluster?: number): Promise<NetworkPayload> {
    return cluster === undefined
      ? this.get("/api/network")
      : this.get("/api/network", { cluster });
  }

  clusters(): Promise<ClusterRow[]> {
    return this.get("/api/clusters");
  }

  labels(cluster: number): Promise<LabelsPayload> {
    return this.get(`/api/clusters/${cluster}/labels`);
  }

  summary(cluster: number, ranker: string, k: number): Promise<SummaryPayload> {
    return this.get(`/api/clusters/${cluster}/summary`, { ranker, k });
  }

  citers(cluster: number): Promise<CitersPayload> {
    return this.get(`/api/clusters/${cluster}/citers`);
  }

  history(key: string): Promise<HistoryPayload> {
    return this.get(`/api/nodes/${encodeURIComponent(key)}/history`);
  }

  timeline(): Promise<TimelinePayload> {
    return this.get("/api/timeline");
  }
}
