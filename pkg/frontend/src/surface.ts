import { GridData } from "./csv.js";
import { darken, divergingRgb, rgbString } from "./color.js";
import { Frame, tag, text } from "./svg.js";

export interface SurfaceOptions {
  frame: Frame;
  title?: string;
  id?: string;
  /** Cap on grid points per axis; larger inputs are decimated. */
  maxCells?: number;
}

function decimate(grid: GridData, maxCells: number): GridData {
  const stride = Math.max(
    1,
    Math.ceil(Math.max(grid.x.length, grid.y.length) / maxCells),
  );
  if (stride === 1) return grid;
  const pick = (arr: number[]) => arr.filter((_, i) => i % stride === 0);
  return {
    x: pick(grid.x),
    y: pick(grid.y),
    values: grid.values.filter((_, i) => i % stride === 0).map(pick),
  };
}

/**
 * Isometric surface: the grid is projected with a fixed oblique camera and
 * quads are painted back to front, colored by value on the diverging scale.
 */
export function surfacePanel(grid: GridData, options: SurfaceOptions): string {
  const data = decimate(grid, options.maxCells ?? 90);
  const { frame } = options;
  const nx = data.x.length;
  const ny = data.y.length;
  const flat = data.values.flat();
  const absMax = Math.max(...flat.map(Math.abs)) || 1;

  // Unit-square parameterization; value axis scaled to a fixed visual height.
  const cos30 = Math.cos(Math.PI / 6);
  const sin30 = Math.sin(Math.PI / 6);
  const zHeight = 0.55;
  const project = (i: number, j: number): [number, number] => {
    const u = j / (nx - 1 || 1);
    const v = i / (ny - 1 || 1);
    const z = (data.values[i][j] / absMax) * zHeight;
    const px = (u - v) * cos30;
    const py = (u + v) * sin30 - z;
    return [px, py];
  };

  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (let i = 0; i < ny; i += 1) {
    for (let j = 0; j < nx; j += 1) {
      const [px, py] = project(i, j);
      minX = Math.min(minX, px);
      maxX = Math.max(maxX, px);
      minY = Math.min(minY, py);
      maxY = Math.max(maxY, py);
    }
  }
  const scale = Math.min(frame.width / (maxX - minX), frame.height / (maxY - minY));
  const toPixel = ([px, py]: [number, number]): string => {
    const sx = frame.x0 + (px - minX) * scale;
    const sy = frame.y0 + (py - minY) * scale;
    return `${sx.toFixed(2)},${sy.toFixed(2)}`;
  };

  // Painter's algorithm: cells farther from the camera (smaller u+v) first.
  const quads: string[] = [];
  for (let i = ny - 2; i >= 0; i -= 1) {
    for (let j = 0; j < nx - 1; j += 1) {
      const corners: [number, number][] = [
        project(i, j),
        project(i, j + 1),
        project(i + 1, j + 1),
        project(i + 1, j),
      ];
      const value =
        (data.values[i][j] +
          data.values[i][j + 1] +
          data.values[i + 1][j] +
          data.values[i + 1][j + 1]) /
        4;
      const fill = divergingRgb(value, absMax);
      quads.push(
        tag("polygon", {
          points: corners.map(toPixel).join(" "),
          fill: rgbString(fill),
          stroke: rgbString(darken(fill, 0.8)),
          "stroke-width": 0.4,
        }),
      );
    }
  }

  const parts = [tag("g", { id: options.id ?? "surface" }, quads)];
  if (options.title) {
    parts.push(
      text(options.title, {
        x: frame.x0 + frame.width / 2,
        y: frame.y0 - 6,
        "font-size": 13,
        "text-anchor": "middle",
      }),
    );
  }
  return parts.join("");
}
