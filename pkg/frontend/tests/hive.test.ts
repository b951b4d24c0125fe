import { beforeEach, describe, expect, it, vi } from "vitest";

import { DEFAULT_CONFIG } from "../src/config";
import { layoutHive } from "../src/hexmath";
import { renderHiveBuilder, renderHiveCompare } from "../src/hive";
import type { Category, HiveRecord } from "../src/types";

function hive(partial: Partial<HiveRecord> = {}): HiveRecord {
  return {
    center: "C",
    center_sentiment: "neutral",
    outlet: "CNN",
    candidates: ["A", "B", "D"],
    assignments: {},
    kind: "user",
    seg: null,
    finalized: false,
    ...partial,
  };
}

const names = { C: "Center", A: "Alpha", B: "Beta", D: "Delta" };

function noopHandlers() {
  return {
    onAssign: vi.fn(),
    onCenterCycle: vi.fn(),
    onFinalize: vi.fn(),
    onReveal: vi.fn(),
  };
}

function mouse(type: string): MouseEvent {
  return new MouseEvent(type, { bubbles: true });
}

describe("hive builder", () => {
  let host: HTMLElement;

  beforeEach(() => {
    host = document.createElement("div");
    document.body.innerHTML = "";
    document.body.appendChild(host);
  });

  it("renders unassigned chips in the tray", () => {
    renderHiveBuilder(host, hive(), names, DEFAULT_CONFIG, noopHandlers());
    expect(host.querySelectorAll(".hive-tray .hex-chip")).toHaveLength(3);
    expect(host.querySelector(".hive-tray h3")!.textContent).toContain("3");
  });

  it("assigns a chip via pointer drag onto a region", () => {
    const handlers = noopHandlers();
    renderHiveBuilder(host, hive(), names, DEFAULT_CONFIG, handlers);
    const chip = host.querySelector('.hex-chip[data-topic="A"]')!;
    const zone = host.querySelector('.hive-region[data-region="positive"]')!;
    chip.dispatchEvent(mouse("pointerdown"));
    zone.dispatchEvent(mouse("pointerup"));
    expect(handlers.onAssign).toHaveBeenCalledWith("A", "positive");
  });

  it("a drop outside any region cancels the drag", () => {
    const handlers = noopHandlers();
    renderHiveBuilder(host, hive(), names, DEFAULT_CONFIG, handlers);
    const chip = host.querySelector('.hex-chip[data-topic="A"]')!;
    chip.dispatchEvent(mouse("pointerdown"));
    host.querySelector(".hive-tray")!.dispatchEvent(mouse("pointerup"));
    const zone = host.querySelector('.hive-region[data-region="mixed"]')!;
    zone.dispatchEvent(mouse("pointerup"));
    expect(handlers.onAssign).not.toHaveBeenCalled();
  });

  it("re-dragging an assigned chip moves it to another region", () => {
    const handlers = noopHandlers();
    renderHiveBuilder(
      host,
      hive({ assignments: { A: "positive" } }),
      names,
      DEFAULT_CONFIG,
      handlers,
    );
    const chip = host.querySelector('.hive-region[data-region="positive"] .hex-chip')!;
    chip.dispatchEvent(mouse("pointerdown"));
    host
      .querySelector('.hive-region[data-region="negative"]')!
      .dispatchEvent(mouse("pointerup"));
    expect(handlers.onAssign).toHaveBeenCalledWith("A", "negative");
  });

  it("disables finalize until every candidate is assigned", () => {
    renderHiveBuilder(
      host,
      hive({ assignments: { A: "positive", B: "mixed" } }),
      names,
      DEFAULT_CONFIG,
      noopHandlers(),
    );
    const button = host.querySelector<HTMLButtonElement>(".finalize-button")!;
    expect(button.disabled).toBe(true);
  });

  it("enables finalize when the hive is complete", () => {
    const handlers = noopHandlers();
    renderHiveBuilder(
      host,
      hive({ assignments: { A: "positive", B: "mixed", D: "neutral" } }),
      names,
      DEFAULT_CONFIG,
      handlers,
    );
    const button = host.querySelector<HTMLButtonElement>(".finalize-button")!;
    expect(button.disabled).toBe(false);
    button.click();
    expect(handlers.onFinalize).toHaveBeenCalled();
  });

  it("cycles the center sentiment on click", () => {
    const handlers = noopHandlers();
    renderHiveBuilder(host, hive(), names, DEFAULT_CONFIG, handlers);
    host.querySelector<HTMLButtonElement>(".hex-center")!.click();
    expect(handlers.onCenterCycle).toHaveBeenCalledWith("positive");
  });

  it("shows the reveal control only once finalized", () => {
    renderHiveBuilder(
      host,
      hive({ assignments: { A: "positive", B: "mixed", D: "neutral" }, finalized: true }),
      names,
      DEFAULT_CONFIG,
      noopHandlers(),
    );
    expect(host.querySelector(".finalize-button")).toBeNull();
    expect(host.querySelector(".reveal-button")).not.toBeNull();
  });
});

describe("hive compare", () => {
  it("lists conflicts in red and forwards clicks", () => {
    const host = document.createElement("div");
    const assignments: Record<string, Category> = { A: "positive", B: "mixed", D: "neutral" };
    const finalized = hive({ assignments, finalized: true });
    const onPick = vi.fn();
    renderHiveCompare(
      host,
      {
        userLayout: layoutHive(finalized),
        dataLayout: layoutHive(finalized),
        conflicts: {
          count: 2,
          conflicts: [
            { entity: "A", user_category: "positive", data_category: "mixed" },
            { entity: "C", user_category: "neutral", data_category: "mixed" },
          ],
        },
      },
      names,
      DEFAULT_CONFIG,
      onPick,
    );
    const entries = host.querySelectorAll<HTMLElement>(".conflict-entry");
    expect(entries).toHaveLength(2);
    for (const entry of entries) {
      expect(entry.style.color).not.toBe("");
    }
    entries[0].click();
    expect(onPick).toHaveBeenCalledWith("A");
    expect(host.querySelectorAll(".hive-svg")).toHaveLength(2);
  });
});
