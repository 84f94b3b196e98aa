/** Small color helpers: a diverging map for signed fields (Wigner values)
 * and a sequential map for non-negative ones (fidelities, probabilities). */

export type Rgb = [number, number, number];

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

function ramp(stops: Rgb[], t: number): Rgb {
  const clamped = Math.min(1, Math.max(0, t));
  const pos = clamped * (stops.length - 1);
  const lo = Math.min(stops.length - 2, Math.floor(pos));
  const frac = pos - lo;
  return [
    lerp(stops[lo][0], stops[lo + 1][0], frac),
    lerp(stops[lo][1], stops[lo + 1][1], frac),
    lerp(stops[lo][2], stops[lo + 1][2], frac),
  ];
}

const DIVERGING: Rgb[] = [
  [33, 102, 172],
  [146, 197, 222],
  [247, 247, 247],
  [244, 165, 130],
  [178, 24, 43],
];

const SEQUENTIAL: Rgb[] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

export function rgbString([r, g, b]: Rgb): string {
  return `rgb(${Math.round(r)},${Math.round(g)},${Math.round(b)})`;
}

/** Map a signed value to the diverging palette, symmetric about zero. */
export function diverging(value: number, absMax: number): string {
  const span = absMax > 0 ? absMax : 1;
  return rgbString(ramp(DIVERGING, 0.5 + 0.5 * (value / span)));
}

export function sequential(value: number, lo: number, hi: number): string {
  const span = hi > lo ? hi - lo : 1;
  return rgbString(ramp(SEQUENTIAL, (value - lo) / span));
}

export function darken([r, g, b]: Rgb, factor: number): Rgb {
  return [r * factor, g * factor, b * factor];
}

export function divergingRgb(value: number, absMax: number): Rgb {
  const span = absMax > 0 ? absMax : 1;
  return ramp(DIVERGING, 0.5 + 0.5 * (value / span));
}

export const SERIES_COLORS = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
];
