import { describe, expect, it } from "vitest";

import {
  decodeState,
  defaultState,
  encodeState,
  hideCluster,
  isHidden,
  selectCluster,
  setLabelMethod,
  setRanker,
  showCluster,
} from "../src/state.js";

describe("view state URL fragment", () => {
  it("round-trips the default state", () => {
    const state = defaultState();
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  it("hidden clusters survive a URL round-trip", () => {
    let state = defaultState();
    state = hideCluster(state, 2);
    state = hideCluster(state, 5);
    const restored = decodeState(encodeState(state));
    expect(restored.hidden).toEqual([2, 5]);
    expect(isHidden(restored, 2)).toBe(true);
    expect(isHidden(restored, 3)).toBe(false);
  });

  it("round-trips every field", () => {
    let state = defaultState();
    state = { ...state, view: "timeline", showArcs: true, yearFrom: 1998, yearTo: 2005 };
    state = hideCluster(state, 1);
    state = selectCluster(state, 4);
    state = { ...state, selectedNode: "SMALL H_1973_J DOC_V24_P265" };
    state = setLabelMethod(state, "index", "mi");
    state = setRanker(state, "gtf_idf", 7);
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  it("ignores malformed fragments gracefully", () => {
    expect(decodeState("#hidden=a,b&k=NaN&view=bogus&years=2008-1996")).toEqual({
      ...defaultState(),
      hidden: [],
    });
    expect(decodeState("")).toEqual(defaultState());
    expect(decodeState("#garbage")).toEqual(defaultState());
  });
});

describe("state transitions", () => {
  it("selecting a hidden cluster unhides it", () => {
    let state = hideCluster(defaultState(), 3);
    expect(isHidden(state, 3)).toBe(true);
    state = selectCluster(state, 3);
    expect(isHidden(state, 3)).toBe(false);
    expect(state.selectedCluster).toBe(3);
  });

  it("decode enforces the hidden/selected invariant", () => {
    const restored = decodeState("#cluster=2&hidden=1,2,3");
    expect(restored.selectedCluster).toBe(2);
    expect(restored.hidden).toEqual([1, 3]);
  });

  it("hiding the selected cluster clears the selection", () => {
    let state = selectCluster(defaultState(), 1);
    state = hideCluster(state, 1);
    expect(state.selectedCluster).toBeNull();
    expect(isHidden(state, 1)).toBe(true);
  });

  it("hide and show are idempotent", () => {
    let state = hideCluster(defaultState(), 1);
    state = hideCluster(state, 1);
    expect(state.hidden).toEqual([1]);
    state = showCluster(showCluster(state, 1), 1);
    expect(state.hidden).toEqual([]);
  });

  it("rejects unknown label methods and rankers", () => {
    const state = defaultState();
    expect(setLabelMethod(state, "body", "llr")).toBe(state);
    expect(setRanker(state, "pagerank", 3)).toBe(state);
    expect(setRanker(state, "gtf", -1)).toBe(state);
  });
});
