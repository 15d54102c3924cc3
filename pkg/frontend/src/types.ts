/** Shapes mirrored from the service API. Field names must match the JSON
 * exactly; the UI never recomputes scores, it only displays them. */

export interface CategoryNode {
  id: string;
  name: string;
  parent: string | null;
  poi_count: number;
  children: CategoryNode[];
}

export interface GraphVertex {
  id: string;
  x: number;
  y: number;
}

export interface GraphPoi {
  vertex: string;
  category: string;
  name: string;
}

export interface GraphPayload {
  directed: boolean;
  vertices: GraphVertex[];
  edges: [string, string][];
  pois: GraphPoi[];
}

export interface QueryFlags {
  init_search: boolean;
  pq_ordering: boolean;
  lower_bounds: boolean;
  caching: boolean;
  path_filter: boolean;
}

export interface QueryRequest {
  start?: string;
  x?: number;
  y?: number;
  categories: string[];
  flags?: QueryFlags;
}

export interface RouteLeg {
  vertices: string[];
  geometry: [number, number][];
}

export interface RouteRecord {
  pois: string[];
  names: string[];
  categories: string[];
  similarities: number[];
  length: number;
  semantic_score: number;
  legs: RouteLeg[];
}

export interface QueryResponse {
  query: {
    start: string;
    categories: string[];
    flags: QueryFlags | null;
  };
  no_route: boolean;
  routes: RouteRecord[];
  counters: Record<string, number>;
  elapsed: number;
}

export interface HealthPayload {
  status: string;
  dataset: string;
  counts: { vertices: number; edges: number; pois: number; categories: number };
}
