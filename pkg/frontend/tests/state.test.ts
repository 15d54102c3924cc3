import { describe, expect, it } from "vitest";

import {
  addCategory,
  canSubmit,
  clearResponse,
  initialState,
  moveCategory,
  removeCategory,
  selectRoute,
  setResponse,
  setStart,
} from "../src/state.js";
import type { QueryResponse } from "../src/types.js";

import response from "../fixtures/fixture-a-response.json";

const RESP = response as unknown as QueryResponse;

describe("composition state", () => {
  it("cannot submit until both a start and a sequence exist", () => {
    let s = initialState();
    expect(canSubmit(s)).toBe(false);
    s = setStart(s, "v0");
    expect(canSubmit(s)).toBe(false);
    s = addCategory(s, "asian");
    expect(canSubmit(s)).toBe(true);
    s = removeCategory(s, 0);
    expect(canSubmit(s)).toBe(false);
  });

  it("reorders the sequence and keeps out-of-range moves inert", () => {
    let s = initialState();
    s = addCategory(s, "gift");
    s = addCategory(s, "asian");
    s = moveCategory(s, 1, 0);
    expect(s.sequence).toEqual(["asian", "gift"]);
    expect(moveCategory(s, 0, 5).sequence).toEqual(["asian", "gift"]);
    expect(moveCategory(s, -1, 0).sequence).toEqual(["asian", "gift"]);
  });

  it("removal targets exactly the given index", () => {
    let s = initialState();
    for (const c of ["a", "b", "a"]) s = addCategory(s, c);
    s = removeCategory(s, 1);
    expect(s.sequence).toEqual(["a", "a"]);
    expect(removeCategory(s, 7).sequence).toEqual(["a", "a"]);
  });
});

describe("response state", () => {
  it("auto-selects the first route of a fresh response", () => {
    const s = setResponse(initialState(), RESP);
    expect(s.selected).toBe(0);
  });

  it("selects nothing when the response is empty", () => {
    const empty = { ...RESP, no_route: true, routes: [] };
    const s = setResponse(initialState(), empty);
    expect(s.selected).toBe(-1);
  });

  it("keeps the selection inside response bounds", () => {
    let s = setResponse(initialState(), RESP);
    s = selectRoute(s, 1);
    expect(s.selected).toBe(1);
    expect(selectRoute(s, 2).selected).toBe(1);
    expect(selectRoute(s, -1).selected).toBe(1);
  });

  it("clearing the response clears the selection", () => {
    let s = setResponse(initialState(), RESP);
    s = clearResponse(s);
    expect(s.response).toBeNull();
    expect(s.selected).toBe(-1);
  });
});
