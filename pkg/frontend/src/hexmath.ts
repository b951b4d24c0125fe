import type { Category, HiveRecord, LayoutCell } from "./types";

/**
 * Pointy-top axial hexagon geometry. The quadrant rule and slot order match
 * the server's layout exactly (positive east, negative west, mixed north,
 * neutral south; diagonal ties go east/west; slots consumed ring by ring in
 * ascending angle), so a hive reloaded from the summary endpoint can be laid
 * out client-side and agree with server-sent layouts cell for cell.
 */

export interface Point {
  x: number;
  y: number;
}

export function axialToPixel(q: number, r: number, size: number): Point {
  return {
    x: size * Math.sqrt(3) * (q + r / 2),
    y: size * 1.5 * r,
  };
}

export function hexDistance(q: number, r: number): number {
  return Math.max(Math.abs(q), Math.abs(r), Math.abs(-q - r));
}

export function regionOf(q: number, r: number): Category {
  const { x, y } = axialToPixel(q, r, 1);
  if (Math.abs(x) >= Math.abs(y)) {
    return x > 0 ? "positive" : "negative";
  }
  return y < 0 ? "mixed" : "neutral";
}

/** SVG polygon `points` string for a pointy-top hexagon. */
export function hexPolygonPoints(cx: number, cy: number, size: number): string {
  const corners: string[] = [];
  for (let i = 0; i < 6; i++) {
    const angle = (Math.PI / 180) * (60 * i - 30);
    corners.push(`${cx + size * Math.cos(angle)},${cy + size * Math.sin(angle)}`);
  }
  return corners.join(" ");
}

/** Cells at hex distance k, sorted by plane angle from east. */
export function ringCells(k: number): Array<{ q: number; r: number }> {
  const cells: Array<{ q: number; r: number }> = [];
  for (let q = -k; q <= k; q++) {
    for (let r = Math.max(-k, -q - k); r <= Math.min(k, -q + k); r++) {
      if (hexDistance(q, r) === k) cells.push({ q, r });
    }
  }
  const tau = 2 * Math.PI;
  const angle = (c: { q: number; r: number }) => {
    const { x, y } = axialToPixel(c.q, c.r, 1);
    return ((Math.atan2(y, x) % tau) + tau) % tau;
  };
  cells.sort((a, b) => angle(a) - angle(b));
  return cells;
}

function regionSlots(region: Category, needed: number): Array<{ q: number; r: number }> {
  const slots: Array<{ q: number; r: number }> = [];
  for (let k = 1; slots.length < needed; k++) {
    for (const cell of ringCells(k)) {
      if (regionOf(cell.q, cell.r) === region) slots.push(cell);
    }
  }
  return slots.slice(0, needed);
}

const REGION_ORDER: Category[] = ["positive", "negative", "mixed", "neutral"];

/** Client-side replica of the server hive layout (finalized hives only). */
export function layoutHive(hive: HiveRecord): LayoutCell[] {
  const cells: LayoutCell[] = [
    { entity: hive.center, q: 0, r: 0, region: hive.center_sentiment, is_center: true },
  ];
  for (const region of REGION_ORDER) {
    const topics = hive.candidates.filter((c) => hive.assignments[c] === region);
    const slots = regionSlots(region, topics.length);
    topics.forEach((topic, i) => {
      cells.push({ entity: topic, q: slots[i].q, r: slots[i].r, region, is_center: false });
    });
  }
  return cells;
}
