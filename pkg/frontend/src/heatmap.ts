import { GridData } from "./csv.js";
import { diverging, sequential } from "./color.js";
import { axes, Frame, linearScale, tag, text } from "./svg.js";

export interface HeatmapOptions {
  frame: Frame;
  xLabel: string;
  yLabel: string;
  title?: string;
  /** Symmetric diverging palette about zero (for signed fields). */
  signed?: boolean;
  id?: string;
}

function cellColor(value: number, lo: number, hi: number, signed: boolean): string {
  if (signed) {
    return diverging(value, Math.max(Math.abs(lo), Math.abs(hi)));
  }
  return sequential(value, lo, hi);
}

/** Run-length merged heatmap: horizontal runs of equal color share one rect. */
export function heatmapPanel(grid: GridData, options: HeatmapOptions): string {
  const { frame } = options;
  const signed = options.signed ?? false;
  const flat = grid.values.flat();
  const lo = Math.min(...flat);
  const hi = Math.max(...flat);
  const nx = grid.x.length;
  const ny = grid.y.length;
  const cellW = frame.width / nx;
  const cellH = frame.height / ny;
  const xScale = linearScale([grid.x[0], grid.x[nx - 1]], [frame.x0, frame.x0 + frame.width]);
  const yScale = linearScale([grid.y[0], grid.y[ny - 1]], [frame.y0 + frame.height, frame.y0]);

  const cells: string[] = [];
  for (let i = 0; i < ny; i += 1) {
    const rowY = frame.y0 + frame.height - (i + 1) * cellH;
    let runStart = 0;
    let runColor = cellColor(grid.values[i][0], lo, hi, signed);
    for (let j = 1; j <= nx; j += 1) {
      const color = j < nx ? cellColor(grid.values[i][j], lo, hi, signed) : "";
      if (color !== runColor) {
        cells.push(
          tag("rect", {
            x: frame.x0 + runStart * cellW,
            y: rowY,
            width: (j - runStart) * cellW + 0.5,
            height: cellH + 0.5,
            fill: runColor,
          }),
        );
        runStart = j;
        runColor = color;
      }
    }
  }

  const parts = [
    tag("g", { id: options.id ?? "heatmap" }, cells),
    ...axes(frame, xScale, yScale, options.xLabel, options.yLabel),
  ];
  if (options.title) {
    parts.push(
      text(options.title, {
        x: frame.x0 + frame.width / 2,
        y: frame.y0 - 8,
        "font-size": 13,
        "text-anchor": "middle",
      }),
    );
  }
  return parts.join("");
}
