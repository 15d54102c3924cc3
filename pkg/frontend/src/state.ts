import type { QueryResponse } from "./types.js";

/** What the user has composed plus what the last query returned. Kept as a
 * plain object updated through these helpers so the invariants (submit only
 * with a start and a non-empty sequence, selection always in bounds) hold
 * in one place. */
export interface UiState {
  start: string | null;
  sequence: string[];
  response: QueryResponse | null;
  selected: number; // index into response.routes, -1 when nothing to select
}

export function initialState(): UiState {
  return { start: null, sequence: [], response: null, selected: -1 };
}

export function canSubmit(s: UiState): boolean {
  return s.start !== null && s.sequence.length > 0;
}

export function setStart(s: UiState, vertexId: string): UiState {
  return { ...s, start: vertexId };
}

export function addCategory(s: UiState, categoryId: string): UiState {
  return { ...s, sequence: [...s.sequence, categoryId] };
}

export function removeCategory(s: UiState, index: number): UiState {
  if (index < 0 || index >= s.sequence.length) return s;
  const sequence = s.sequence.filter((_, i) => i !== index);
  return { ...s, sequence };
}

export function moveCategory(s: UiState, from: number, to: number): UiState {
  const n = s.sequence.length;
  if (from < 0 || from >= n || to < 0 || to >= n || from === to) return s;
  const sequence = [...s.sequence];
  const [item] = sequence.splice(from, 1);
  sequence.splice(to, 0, item);
  return { ...s, sequence };
}

/** A fresh response always resets the selection: first route when there is
 * one, none otherwise (covers the no-route empty state). */
export function setResponse(s: UiState, response: QueryResponse): UiState {
  const selected = response.routes.length > 0 ? 0 : -1;
  return { ...s, response, selected };
}

export function clearResponse(s: UiState): UiState {
  return { ...s, response: null, selected: -1 };
}

export function selectRoute(s: UiState, index: number): UiState {
  const n = s.response ? s.response.routes.length : 0;
  if (index < 0 || index >= n) return s;
  return { ...s, selected: index };
}
