import { GridData } from "./csv.js";
import { diverging } from "./color.js";
import { axes, Frame, linearScale, tag, text } from "./svg.js";

export interface ContourOptions {
  frame: Frame;
  xLabel: string;
  yLabel: string;
  title?: string;
  bands?: number;
  id?: string;
}

/** Marching-squares segments of one iso-level, in grid coordinates. */
export function isoSegments(
  grid: GridData,
  level: number,
): [number, number, number, number][] {
  const segments: [number, number, number, number][] = [];
  const { x, y, values } = grid;
  const cross = (a: number, b: number): number => (level - a) / (b - a);
  for (let i = 0; i < y.length - 1; i += 1) {
    for (let j = 0; j < x.length - 1; j += 1) {
      const v00 = values[i][j];
      const v01 = values[i][j + 1];
      const v11 = values[i + 1][j + 1];
      const v10 = values[i + 1][j];
      const points: [number, number][] = [];
      if (v00 >= level !== v01 >= level) {
        points.push([x[j] + cross(v00, v01) * (x[j + 1] - x[j]), y[i]]);
      }
      if (v01 >= level !== v11 >= level) {
        points.push([x[j + 1], y[i] + cross(v01, v11) * (y[i + 1] - y[i])]);
      }
      if (v11 >= level !== v10 >= level) {
        points.push([x[j] + cross(v10, v11) * (x[j + 1] - x[j]), y[i + 1]]);
      }
      if (v10 >= level !== v00 >= level) {
        points.push([x[j], y[i] + cross(v00, v10) * (y[i + 1] - y[i])]);
      }
      // Saddle cells yield four crossings; pair them in order found.
      for (let k = 0; k + 1 < points.length; k += 2) {
        segments.push([points[k][0], points[k][1], points[k + 1][0], points[k + 1][1]]);
      }
    }
  }
  return segments;
}

/** Banded (filled-contour style) view with the zero level drawn on top. */
export function contourPanel(grid: GridData, options: ContourOptions): string {
  const { frame } = options;
  const bands = options.bands ?? 12;
  const flat = grid.values.flat();
  const absMax = Math.max(...flat.map(Math.abs)) || 1;
  const nx = grid.x.length;
  const ny = grid.y.length;
  const cellW = frame.width / nx;
  const cellH = frame.height / ny;
  const xScale = linearScale([grid.x[0], grid.x[nx - 1]], [frame.x0, frame.x0 + frame.width]);
  const yScale = linearScale([grid.y[0], grid.y[ny - 1]], [frame.y0 + frame.height, frame.y0]);

  const quantize = (v: number): number => {
    const band = Math.round(((v / absMax) * 0.5 + 0.5) * (bands - 1));
    return (band / (bands - 1) - 0.5) * 2 * absMax;
  };

  const cells: string[] = [];
  for (let i = 0; i < ny; i += 1) {
    const rowY = frame.y0 + frame.height - (i + 1) * cellH;
    let runStart = 0;
    let runColor = diverging(quantize(grid.values[i][0]), absMax);
    for (let j = 1; j <= nx; j += 1) {
      const color = j < nx ? diverging(quantize(grid.values[i][j]), absMax) : "";
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

  const zeroLines: string[] = [];
  if (Math.min(...flat) < 0 && Math.max(...flat) > 0) {
    for (const [ax, ay, bx, by] of isoSegments(grid, 0)) {
      zeroLines.push(
        tag("line", {
          x1: xScale(ax),
          y1: yScale(ay),
          x2: xScale(bx),
          y2: yScale(by),
          stroke: "#222",
          "stroke-width": 0.7,
        }),
      );
    }
  }

  const parts = [
    tag("g", { id: options.id ?? "contour" }, [...cells, ...zeroLines]),
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
