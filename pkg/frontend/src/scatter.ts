import type { UiConfig } from "./config";
import { attract, fisheye } from "./fisheye";
import type { Category, ScatterPoint, Seg } from "./types";

const SIZE = 480;
const SVG_NS = "http://www.w3.org/2000/svg";

export interface ScatterHandlers {
  onSegChange(seg: Seg): void;
  onThresholdChange(threshold: number): void;
  onTopicClick(entity: string): void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function toScreen(scorePos: number, scoreNeg: number): { x: number; y: number } {
  return { x: scorePos * SIZE, y: (1 - scoreNeg) * SIZE };
}

function toScores(x: number, y: number): Seg {
  const clamp = (v: number) => Math.min(1, Math.max(0, v));
  return { sx: clamp(x / SIZE), sy: clamp(1 - y / SIZE) };
}

/** Event coordinates in SVG space; falls back to the viewBox when the
 * element has no layout (headless test DOM). */
function eventPoint(svg: SVGSVGElement, ev: MouseEvent): { x: number; y: number } {
  const rect = svg.getBoundingClientRect();
  const w = rect.width || SIZE;
  const h = rect.height || SIZE;
  return {
    x: ((ev.clientX - rect.left) / w) * SIZE,
    y: ((ev.clientY - rect.top) / h) * SIZE,
  };
}

function quadrantRects(seg: Seg, colors: Record<Category, string>): SVGRectElement[] {
  const { x, y } = toScreen(seg.sx, seg.sy);
  const spec: Array<[Category, number, number, number, number]> = [
    // positive: score_pos >= sx, score_neg < sy  -> right of x, below y
    ["positive", x, y, SIZE - x, SIZE - y],
    // negative: score_pos < sx, score_neg >= sy  -> left of x, above y
    ["negative", 0, 0, x, y],
    // mixed: both high -> right of x, above y
    ["mixed", x, 0, SIZE - x, y],
    // neutral: both low -> left of x, below y
    ["neutral", 0, y, x, SIZE - y],
  ];
  return spec.map(([category, rx, ry, rw, rh]) => {
    const rect = svgEl("rect");
    rect.setAttribute("class", `quadrant quadrant-${category}`);
    rect.setAttribute("x", String(rx));
    rect.setAttribute("y", String(ry));
    rect.setAttribute("width", String(Math.max(0, rw)));
    rect.setAttribute("height", String(Math.max(0, rh)));
    rect.setAttribute("fill", colors[category]);
    rect.setAttribute("fill-opacity", "0.16");
    return rect;
  });
}

export function renderScatter(
  host: HTMLElement,
  data: { points: ScatterPoint[]; seg: Seg; threshold: number; maxTotal: number },
  cfg: UiConfig,
  handlers: ScatterHandlers,
): void {
  host.innerHTML = "";
  const wrap = document.createElement("div");
  wrap.className = "scatter";

  const svg = svgEl("svg");
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  svg.setAttribute("width", String(SIZE));
  svg.setAttribute("height", String(SIZE));
  svg.setAttribute("class", "scatter-svg");

  const quadrantLayer = svgEl("g");
  for (const rect of quadrantRects(data.seg, cfg.regionColors)) quadrantLayer.appendChild(rect);
  svg.appendChild(quadrantLayer);

  // dots
  const dotLayer = svgEl("g");
  const basePositions = data.points.map((p) => toScreen(p.score_pos, p.score_neg));
  const dots: SVGCircleElement[] = data.points.map((p, i) => {
    const dot = svgEl("circle");
    dot.setAttribute("class", "dot");
    dot.setAttribute("data-entity", p.entity);
    dot.setAttribute("data-category", p.category);
    dot.setAttribute("cx", String(basePositions[i].x));
    dot.setAttribute("cy", String(basePositions[i].y));
    dot.setAttribute("r", "6");
    dot.setAttribute("fill", cfg.bucketPalette[Math.min(p.bucket, cfg.bucketPalette.length) - 1]);
    const title = svgEl("title");
    title.textContent = `${p.name}: ${p.total} articles (${p.pos} positive, ${p.neg} negative, ${p.neu} neutral)`;
    dot.appendChild(title);
    dot.addEventListener("click", () => handlers.onTopicClick(p.entity));
    dotLayer.appendChild(dot);
    return dot;
  });
  svg.appendChild(dotLayer);

  // segmentation controller: crosshair + draggable handle
  const segGroup = svgEl("g");
  segGroup.setAttribute("class", "seg-controller");
  const vline = svgEl("line");
  const hline = svgEl("line");
  const handle = svgEl("circle");
  handle.setAttribute("class", "seg-handle");
  handle.setAttribute("r", "9");
  const positionSeg = (seg: Seg) => {
    const { x, y } = toScreen(seg.sx, seg.sy);
    vline.setAttribute("x1", String(x));
    vline.setAttribute("x2", String(x));
    vline.setAttribute("y1", "0");
    vline.setAttribute("y2", String(SIZE));
    hline.setAttribute("x1", "0");
    hline.setAttribute("x2", String(SIZE));
    hline.setAttribute("y1", String(y));
    hline.setAttribute("y2", String(y));
    handle.setAttribute("cx", String(x));
    handle.setAttribute("cy", String(y));
  };
  for (const line of [vline, hline]) {
    line.setAttribute("stroke", "#444");
    line.setAttribute("stroke-dasharray", "4 3");
  }
  handle.setAttribute("fill", "#333");
  positionSeg(data.seg);
  segGroup.appendChild(vline);
  segGroup.appendChild(hline);
  segGroup.appendChild(handle);
  svg.appendChild(segGroup);

  let draggingSeg = false;
  let liveSeg = data.seg;
  handle.addEventListener("pointerdown", (ev) => {
    ev.preventDefault();
    draggingSeg = true;
  });
  svg.addEventListener("pointermove", (ev) => {
    if (draggingSeg) {
      const { x, y } = eventPoint(svg, ev as MouseEvent);
      liveSeg = toScores(x, y);
      positionSeg(liveSeg);
      quadrantLayer.innerHTML = "";
      for (const rect of quadrantRects(liveSeg, cfg.regionColors)) quadrantLayer.appendChild(rect);
    } else {
      applyFisheye(ev as MouseEvent);
    }
  });
  svg.addEventListener("pointerup", () => {
    if (!draggingSeg) return;
    draggingSeg = false;
    handlers.onSegChange(liveSeg);
  });

  // fish-eye magnification with nearest-dot attraction under the cursor
  const applyFisheye = (ev: MouseEvent) => {
    const focus = eventPoint(svg, ev);
    const { positions } = attract(
      focus,
      basePositions.map((p) => fisheye(p, focus, cfg.fisheye.radius, cfg.fisheye.distortion)),
      cfg.fisheye.snapRadius,
      cfg.fisheye.attraction,
    );
    positions.forEach((pos, i) => {
      dots[i].setAttribute("cx", String(pos.x));
      dots[i].setAttribute("cy", String(pos.y));
    });
  };
  svg.addEventListener("pointerleave", () => {
    basePositions.forEach((pos, i) => {
      dots[i].setAttribute("cx", String(pos.x));
      dots[i].setAttribute("cy", String(pos.y));
    });
  });

  // utility panel: threshold filter + color legend
  const utility = document.createElement("div");
  utility.className = "scatter-utility";

  const label = document.createElement("label");
  label.textContent = "Article threshold ";
  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "0";
  slider.max = String(Math.max(data.maxTotal, data.threshold));
  slider.step = "1";
  slider.value = String(data.threshold);
  slider.className = "threshold-slider";
  const value = document.createElement("span");
  value.className = "threshold-value";
  value.textContent = String(data.threshold);
  slider.addEventListener("input", () => {
    value.textContent = slider.value;
  });
  slider.addEventListener("change", () => handlers.onThresholdChange(Number(slider.value)));
  label.appendChild(slider);
  label.appendChild(value);
  utility.appendChild(label);

  const legend = document.createElement("div");
  legend.className = "color-legend";
  const caption = document.createElement("span");
  caption.textContent = "articles: ";
  legend.appendChild(caption);
  cfg.bucketPalette.forEach((color, i) => {
    const swatch = document.createElement("span");
    swatch.className = "legend-swatch";
    swatch.style.background = color;
    swatch.title = i < cfg.bucketPalette.length - 1 ? `< ${10 ** (i + 1)}` : `>= ${10 ** i}`;
    legend.appendChild(swatch);
  });
  utility.appendChild(legend);

  wrap.appendChild(svg);
  wrap.appendChild(utility);
  host.appendChild(wrap);
}
