import { describe, expect, it } from "vitest";

import { Store, initialState } from "../src/state";
import type { RoundPayload } from "../src/types";

function payload(stage: "topic_selection" | "belief_elicitation"): RoundPayload {
  return {
    session_id: "s1",
    seg: { sx: 0.4, sy: 0.6 },
    threshold: 5,
    round: {
      index: 0,
      stage,
      topic: "T",
      outlet: "CNN",
      user_hive: null,
      selected_conflict: null,
      notes: [],
    },
  };
}

describe("store", () => {
  it("starts at topic selection with the default segmentation point", () => {
    const s = initialState();
    expect(s.stage).toBe("topic_selection");
    expect(s.seg).toEqual({ sx: 0.5, sy: 0.5 });
    expect(s.threshold).toBe(0);
  });

  it("notifies subscribers on set and supports unsubscribe", () => {
    const store = new Store();
    const seen: number[] = [];
    const off = store.subscribe((s) => seen.push(s.threshold));
    store.set({ threshold: 7 });
    off();
    store.set({ threshold: 9 });
    expect(seen).toEqual([7]);
    expect(store.get().threshold).toBe(9);
  });

  it("mirrors the server round stage when applying payloads", () => {
    const store = new Store();
    store.applyRound(payload("belief_elicitation"));
    const s = store.get();
    expect(s.stage).toBe("belief_elicitation");
    expect(s.sessionId).toBe("s1");
    expect(s.seg).toEqual({ sx: 0.4, sy: 0.6 });
    expect(s.error).toBeNull();
  });

  it("clears layouts when a payload has none", () => {
    const store = new Store();
    store.set({ userLayout: [], dataLayout: [] });
    store.applyRound(payload("topic_selection"));
    expect(store.get().userLayout).toBeNull();
    expect(store.get().dataLayout).toBeNull();
  });
});
