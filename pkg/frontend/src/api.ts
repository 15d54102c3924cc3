import type {
  CategoryNode,
  GraphPayload,
  HealthPayload,
  QueryRequest,
  QueryResponse,
} from "./types.js";

export interface Api {
  health(): Promise<HealthPayload>;
  categories(): Promise<CategoryNode[]>;
  graph(): Promise<GraphPayload>;
  query(req: QueryRequest, signal?: AbortSignal): Promise<QueryResponse>;
}

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

async function getJson(url: string): Promise<unknown> {
  const r = await fetch(url);
  if (!r.ok) {
    throw new ApiError(r.status, await errorDetail(r));
  }
  return r.json();
}

async function errorDetail(r: Response): Promise<string> {
  try {
    const body = (await r.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
    return JSON.stringify(body.detail ?? body);
  } catch {
    return `request failed with status ${r.status}`;
  }
}

/** Request body for a start-vertex query. Kept as a function so tests can
 * pin the wire schema without spinning up DOM plumbing. */
export function buildRequest(start: string, categories: string[]): QueryRequest {
  return { start, categories: [...categories] };
}

export function httpApi(base = ""): Api {
  return {
    health: () => getJson(`${base}/api/health`) as Promise<HealthPayload>,
    categories: () =>
      getJson(`${base}/api/categories`) as Promise<CategoryNode[]>,
    graph: () => getJson(`${base}/api/graph`) as Promise<GraphPayload>,
    async query(req: QueryRequest, signal?: AbortSignal) {
      const r = await fetch(`${base}/api/query`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(req),
        signal,
      });
      if (!r.ok) {
        throw new ApiError(r.status, await errorDetail(r));
      }
      return (await r.json()) as QueryResponse;
    },
  };
}
