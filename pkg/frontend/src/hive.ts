import type { UiConfig } from "./config";
import { axialToPixel, hexPolygonPoints } from "./hexmath";
import type { Category, ConflictReport, HiveRecord, LayoutCell } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";
const REGIONS: Category[] = ["positive", "negative", "mixed", "neutral"];
const CENTER_CYCLE: Category[] = ["neutral", "positive", "negative", "mixed"];

export interface HiveBuilderHandlers {
  onAssign(topic: string, region: Category): void;
  onCenterCycle(next: Category): void;
  onFinalize(): void;
  onReveal(): void;
}

function hexDiv(topic: string, name: string, color: string | null): HTMLElement {
  const hex = document.createElement("div");
  hex.className = "hex-chip";
  hex.dataset.topic = topic;
  hex.textContent = name;
  if (color) hex.style.background = color;
  return hex;
}

/**
 * Belief-hive construction: a tray of unassigned hexagons and four region
 * zones. Dragging is target-based (pointerdown on a chip, pointerup on a
 * zone), so it works identically under a real pointer and in a headless
 * test DOM. Re-dropping an assigned chip moves it; regions never fill up.
 */
export function renderHiveBuilder(
  host: HTMLElement,
  hive: HiveRecord,
  names: Record<string, string>,
  cfg: UiConfig,
  handlers: HiveBuilderHandlers,
): void {
  host.innerHTML = "";
  const wrap = document.createElement("div");
  wrap.className = "hive-builder";
  const nameOf = (id: string) => names[id] ?? id;

  let dragTopic: string | null = null;
  const startDrag = (ev: Event) => {
    const target = ev.currentTarget as HTMLElement;
    dragTopic = target.dataset.topic ?? null;
    target.classList.add("dragging");
  };

  const tray = document.createElement("div");
  tray.className = "hive-tray";
  const trayTitle = document.createElement("h3");
  const unassigned = hive.candidates.filter((c) => !(c in hive.assignments));
  trayTitle.textContent = `Unassigned topics (${unassigned.length})`;
  tray.appendChild(trayTitle);
  for (const topic of unassigned) {
    const chip = hexDiv(topic, nameOf(topic), null);
    chip.addEventListener("pointerdown", startDrag);
    tray.appendChild(chip);
  }

  const board = document.createElement("div");
  board.className = "hive-board";

  const center = document.createElement("button");
  center.className = "hex-center";
  center.dataset.category = hive.center_sentiment;
  center.textContent = `${nameOf(hive.center)} (${hive.center_sentiment})`;
  center.style.background = cfg.regionColors[hive.center_sentiment];
  center.title = "Click to cycle the center topic's sentiment";
  center.addEventListener("click", () => {
    if (hive.finalized) return;
    const next =
      CENTER_CYCLE[(CENTER_CYCLE.indexOf(hive.center_sentiment) + 1) % CENTER_CYCLE.length];
    handlers.onCenterCycle(next);
  });
  board.appendChild(center);

  for (const region of REGIONS) {
    const zone = document.createElement("div");
    zone.className = `hive-region region-${region}`;
    zone.dataset.region = region;
    zone.style.borderColor = cfg.regionColors[region];
    const title = document.createElement("h4");
    title.textContent = region;
    title.style.color = cfg.regionColors[region];
    zone.appendChild(title);
    for (const topic of hive.candidates) {
      if (hive.assignments[topic] === region) {
        const chip = hexDiv(topic, nameOf(topic), cfg.regionColors[region]);
        if (!hive.finalized) chip.addEventListener("pointerdown", startDrag);
        zone.appendChild(chip);
      }
    }
    zone.addEventListener("pointerup", () => {
      if (dragTopic && !hive.finalized) {
        handlers.onAssign(dragTopic, region);
      }
      dragTopic = null;
    });
    board.appendChild(zone);
  }

  // zones see pointerup first (target phase); this wrap-level cleanup runs
  // on the bubble, covering drops that land outside any region
  wrap.addEventListener("pointerup", () => {
    dragTopic = null;
    wrap.querySelectorAll(".dragging").forEach((el) => el.classList.remove("dragging"));
  });

  const controls = document.createElement("div");
  controls.className = "hive-controls";
  if (!hive.finalized) {
    const finalize = document.createElement("button");
    finalize.className = "finalize-button";
    finalize.textContent = "Lock in my hive";
    finalize.disabled = unassigned.length > 0;
    finalize.addEventListener("click", () => handlers.onFinalize());
    controls.appendChild(finalize);
  } else {
    const reveal = document.createElement("button");
    reveal.className = "reveal-button";
    reveal.textContent = "? Reveal the data hive";
    reveal.addEventListener("click", () => handlers.onReveal());
    controls.appendChild(reveal);
  }

  wrap.appendChild(tray);
  wrap.appendChild(board);
  wrap.appendChild(controls);
  host.appendChild(wrap);
}

/** Render one finalized hive from its server-computed layout cells. */
export function renderHiveSvg(
  cells: LayoutCell[],
  names: Record<string, string>,
  cfg: UiConfig,
  onCellClick?: (entity: string) => void,
): SVGSVGElement {
  const size = 26;
  const svg = document.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  const span = 5.5 * size * Math.sqrt(3);
  svg.setAttribute("viewBox", `${-span} ${-span} ${2 * span} ${2 * span}`);
  svg.setAttribute("class", "hive-svg");
  svg.setAttribute("width", "300");
  svg.setAttribute("height", "300");
  for (const cell of cells) {
    const { x, y } = axialToPixel(cell.q, cell.r, size);
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", cell.is_center ? "hive-cell hive-cell-center" : "hive-cell");
    group.setAttribute("data-entity", cell.entity);
    const polygon = document.createElementNS(SVG_NS, "polygon");
    polygon.setAttribute("points", hexPolygonPoints(x, y, size * 0.94));
    polygon.setAttribute("fill", cfg.regionColors[cell.region]);
    polygon.setAttribute("stroke", cell.is_center ? "#222" : "#fff");
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(x));
    label.setAttribute("y", String(y));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("font-size", "9");
    label.textContent = (names[cell.entity] ?? cell.entity).slice(0, 10);
    group.appendChild(polygon);
    group.appendChild(label);
    if (onCellClick) {
      group.addEventListener("click", () => onCellClick(cell.entity));
    }
    svg.appendChild(group);
  }
  return svg;
}

export interface ComparePayload {
  userLayout: LayoutCell[];
  dataLayout: LayoutCell[];
  conflicts: ConflictReport;
}

/**
 * Side-by-side belief and data hives with the conflict list between them.
 * Conflicting topics are red text; each is clickable to move on to the
 * article review stage.
 */
export function renderHiveCompare(
  host: HTMLElement,
  payload: ComparePayload,
  names: Record<string, string>,
  cfg: UiConfig,
  onConflictPick: (topic: string) => void,
): void {
  host.innerHTML = "";
  const wrap = document.createElement("div");
  wrap.className = "hive-compare";

  const left = document.createElement("div");
  left.className = "hive-pane";
  const leftTitle = document.createElement("h3");
  leftTitle.textContent = "Your belief";
  left.appendChild(leftTitle);
  left.appendChild(renderHiveSvg(payload.userLayout, names, cfg, onConflictPick));

  const middle = document.createElement("div");
  middle.className = "conflict-list";
  const middleTitle = document.createElement("h3");
  middleTitle.textContent = `${payload.conflicts.count} conflict(s)`;
  middle.appendChild(middleTitle);
  const hint = document.createElement("p");
  hint.textContent =
    payload.conflicts.count > 0
      ? "These are differences, not errors. Pick one to see the articles behind it."
      : "Your belief matches the data everywhere. Pick any topic to read its articles.";
  middle.appendChild(hint);
  for (const conflict of payload.conflicts.conflicts) {
    const entry = document.createElement("button");
    entry.className = "conflict-entry";
    entry.dataset.topic = conflict.entity;
    entry.style.color = cfg.conflictTextColor;
    entry.textContent =
      `${names[conflict.entity] ?? conflict.entity}: ` +
      `you said ${conflict.user_category}, data says ${conflict.data_category}`;
    entry.addEventListener("click", () => onConflictPick(conflict.entity));
    middle.appendChild(entry);
  }

  const right = document.createElement("div");
  right.className = "hive-pane";
  const rightTitle = document.createElement("h3");
  rightTitle.textContent = "The data";
  right.appendChild(rightTitle);
  right.appendChild(renderHiveSvg(payload.dataLayout, names, cfg, onConflictPick));

  wrap.appendChild(left);
  wrap.appendChild(middle);
  wrap.appendChild(right);
  host.appendChild(wrap);
}
