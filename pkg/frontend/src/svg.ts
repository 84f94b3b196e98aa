/** Tiny SVG document builder: pure string assembly, deterministic output. */

export type Attrs = Record<string, string | number>;

function formatNumber(v: number): string {
  // Fixed short form keeps output byte-stable across runs.
  return Number.isInteger(v) ? String(v) : v.toFixed(2).replace(/\.?0+$/, "");
}

export function tag(name: string, attrs: Attrs, children: string[] = []): string {
  const parts = Object.entries(attrs).map(
    ([k, v]) => `${k}="${typeof v === "number" ? formatNumber(v) : v}"`,
  );
  const open = parts.length > 0 ? `<${name} ${parts.join(" ")}` : `<${name}`;
  if (children.length === 0) {
    return `${open}/>`;
  }
  return `${open}>${children.join("")}</${name}>`;
}

export function text(content: string, attrs: Attrs): string {
  return tag("text", { "font-family": "sans-serif", ...attrs }, [escapeXml(content)]);
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function document(width: number, height: number, children: string[]): string {
  return tag(
    "svg",
    {
      xmlns: "http://www.w3.org/2000/svg",
      width,
      height,
      viewBox: `0 0 ${width} ${height}`,
    },
    [tag("rect", { x: 0, y: 0, width, height, fill: "white" }), ...children],
  );
}

export interface Scale {
  (value: number): number;
  readonly domain: [number, number];
  readonly range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const fn = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  Object.defineProperty(fn, "domain", { value: domain });
  Object.defineProperty(fn, "range", { value: range });
  return fn;
}

export function ticks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step * 10, step * 5, step * 2, step];
  const chosen = candidates.find((s) => span / s >= count - 1) ?? step;
  const first = Math.ceil(lo / chosen) * chosen;
  const out: number[] = [];
  for (let v = first; v <= hi + chosen * 1e-9; v += chosen) {
    out.push(Math.abs(v) < chosen * 1e-9 ? 0 : Number(v.toPrecision(12)));
  }
  return out;
}

export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 1000 || abs < 0.001) return v.toExponential(1);
  return String(Number(v.toPrecision(4)));
}

export interface Frame {
  x0: number;
  y0: number;
  width: number;
  height: number;
}

/** Axes, tick marks, and labels around a plot frame. */
export function axes(
  frame: Frame,
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
): string[] {
  const { x0, y0, width, height } = frame;
  const parts: string[] = [
    tag("rect", {
      x: x0,
      y: y0,
      width,
      height,
      fill: "none",
      stroke: "#333",
      "stroke-width": 1,
    }),
  ];
  for (const v of ticks(xScale.domain[0], xScale.domain[1])) {
    const px = xScale(v);
    parts.push(
      tag("line", { x1: px, y1: y0 + height, x2: px, y2: y0 + height + 4, stroke: "#333" }),
      text(tickLabel(v), {
        x: px,
        y: y0 + height + 16,
        "font-size": 10,
        "text-anchor": "middle",
      }),
    );
  }
  for (const v of ticks(yScale.domain[0], yScale.domain[1])) {
    const py = yScale(v);
    parts.push(
      tag("line", { x1: x0 - 4, y1: py, x2: x0, y2: py, stroke: "#333" }),
      text(tickLabel(v), {
        x: x0 - 6,
        y: py + 3,
        "font-size": 10,
        "text-anchor": "end",
      }),
    );
  }
  parts.push(
    text(xLabel, {
      x: x0 + width / 2,
      y: y0 + height + 30,
      "font-size": 12,
      "text-anchor": "middle",
    }),
    text(yLabel, {
      x: x0 - 34,
      y: y0 + height / 2,
      "font-size": 12,
      "text-anchor": "middle",
      transform: `rotate(-90 ${x0 - 34} ${y0 + height / 2})`,
    }),
  );
  return parts;
}
