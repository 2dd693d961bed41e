/** Typed client for the local engine, with the privacy guard built in.
 *
 * Every request the app makes flows through a guarded fetch that records the
 * URL and refuses anything that does not target the engine's own origin.
 * After the initial asset load there is no code path that can reach another
 * host; the integration tests assert the recorder stays clean.
 */

import type {
  AverageResponse,
  CategoryInfo,
  DatasetSummary,
  ElementRow,
  ElementsPage,
  IngestResponse,
  RatingResponse,
  Selection,
  StatsResponse,
  TimelineResponse,
  TreemapResponse,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface RequestRecord {
  method: string;
  url: string;
}

export class NetworkGuardViolation extends Error {}

/** Wrap a transport so that every request is logged and non-engine origins throw. */
export function createGuardedFetch(
  engineBase: string,
  log: RequestRecord[],
  transport: FetchLike = (input, init) => fetch(input, init),
): FetchLike {
  const allowed = new URL(engineBase, "http://invalid.example").origin;
  return (input, init) => {
    const url = new URL(input, engineBase);
    log.push({ method: (init?.method ?? "GET").toUpperCase(), url: url.toString() });
    if (url.origin !== allowed) {
      return Promise.reject(
        new NetworkGuardViolation(`blocked non-engine request to ${url.toString()}`),
      );
    }
    return transport(url.toString(), init);
  };
}

export class EngineError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

function selectionParams(sel: Selection): URLSearchParams {
  const params = new URLSearchParams();
  for (const d of sel.datasets) params.append("dataset", d);
  for (const c of sel.categories) params.append("category", c);
  if (sel.query) params.set("q", sel.query);
  if (sel.timeRange) {
    params.set("from", sel.timeRange[0]);
    params.set("to", sel.timeRange[1]);
  }
  return params;
}

export class EngineApi {
  constructor(
    private base: string,
    private fetchFn: FetchLike,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: BodyInit,
    contentType?: string,
  ): Promise<T> {
    const init: RequestInit = { method, body };
    if (contentType) init.headers = { "content-type": contentType };
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        detail = ((await response.json()) as { detail?: string }).detail ?? detail;
      } catch {
        /* non-JSON error body */
      }
      throw new EngineError(response.status, detail);
    }
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  categories(): Promise<CategoryInfo[]> {
    return this.request("GET", "/api/categories");
  }

  services(): Promise<string[]> {
    return this.request("GET", "/api/services");
  }

  datasets(): Promise<DatasetSummary[]> {
    return this.request("GET", "/api/datasets");
  }

  uploadArchive(name: string, data: ArrayBuffer | Uint8Array, service?: string): Promise<IngestResponse> {
    const params = new URLSearchParams({ name });
    if (service) params.set("service", service);
    const body = data instanceof Uint8Array
      ? data.slice().buffer as ArrayBuffer
      : data;
    return this.request("POST", `/api/datasets?${params}`, body);
  }

  deleteDataset(id: string): Promise<void> {
    return this.request("DELETE", `/api/datasets/${encodeURIComponent(id)}`);
  }

  stats(sel: Selection): Promise<StatsResponse> {
    return this.request("GET", `/api/stats?${selectionParams(sel)}`);
  }

  treemap(sel: Selection, scale: string, width: number, height: number): Promise<TreemapResponse> {
    const params = selectionParams(sel);
    params.set("scale", scale);
    params.set("width", String(width));
    params.set("height", String(height));
    return this.request("GET", `/api/treemap?${params}`);
  }

  timeline(sel: Selection, split: boolean): Promise<TimelineResponse> {
    const params = selectionParams(sel);
    if (split) params.set("split", "true");
    return this.request("GET", `/api/timeline?${params}`);
  }

  elements(sel: Selection, offset: number, limit: number): Promise<ElementsPage> {
    const params = selectionParams(sel);
    params.set("offset", String(offset));
    params.set("limit", String(limit));
    return this.request("GET", `/api/elements?${params}`);
  }

  element(id: string): Promise<ElementRow> {
    return this.request("GET", `/api/elements/${encodeURIComponent(id)}`);
  }

  rate(elementId: string, value: number): Promise<RatingResponse> {
    return this.request(
      "POST",
      "/api/ratings",
      JSON.stringify({ element_id: elementId, value }),
      "application/json",
    );
  }

  average(sel: Selection): Promise<AverageResponse> {
    return this.request("GET", `/api/ratings/average?${selectionParams(sel)}`);
  }
}
