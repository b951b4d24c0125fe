/**
 * Fish-eye magnification with a nearest-dot attraction assist. Both are
 * pure geometry so they can be unit tested without a DOM.
 */

export interface XY {
  x: number;
  y: number;
}

/**
 * Radial fish-eye (Sarkar–Brown): points inside the focus circle are pushed
 * outward, magnifying the neighborhood of the focus. Points on or outside
 * the radius are untouched; the focus itself is a fixed point.
 */
export function fisheye(point: XY, focus: XY, radius: number, distortion: number): XY {
  const dx = point.x - focus.x;
  const dy = point.y - focus.y;
  const d = Math.sqrt(dx * dx + dy * dy);
  if (d >= radius || d === 0) return point;
  const t = d / radius;
  const scaled = ((distortion + 1) * t) / (distortion * t + 1);
  const k = (scaled * radius) / d;
  return { x: focus.x + dx * k, y: focus.y + dy * k };
}

/**
 * Attraction assist: the dot nearest the cursor (within `snapRadius`) is
 * pulled toward it by `attraction` (0..1). Returns the index of the
 * attracted dot, or -1, plus the displaced positions.
 */
export function attract(
  cursor: XY,
  dots: XY[],
  snapRadius: number,
  attraction: number,
): { index: number; positions: XY[] } {
  let best = -1;
  let bestDist = Infinity;
  dots.forEach((dot, i) => {
    const d = Math.hypot(dot.x - cursor.x, dot.y - cursor.y);
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  });
  if (best === -1 || bestDist > snapRadius) {
    return { index: -1, positions: dots };
  }
  const positions = dots.slice();
  const dot = dots[best];
  positions[best] = {
    x: dot.x + (cursor.x - dot.x) * attraction,
    y: dot.y + (cursor.y - dot.y) * attraction,
  };
  return { index: best, positions };
}
