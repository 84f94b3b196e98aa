import { columnIndex, Table } from "./csv.js";
import { SERIES_COLORS } from "./color.js";
import { axes, Frame, linearScale, tag, text } from "./svg.js";

export interface CurveOptions {
  frame: Frame;
  xColumn: string;
  yColumn: string;
  /** Optional column whose distinct values split the rows into series. */
  seriesColumn?: string;
  title?: string;
}

export function curvePanel(table: Table, options: CurveOptions): string {
  const xi = columnIndex(table, options.xColumn);
  const yi = columnIndex(table, options.yColumn);
  const groups = new Map<string, number[][]>();
  if (options.seriesColumn) {
    const si = columnIndex(table, options.seriesColumn);
    for (const row of table.rows) {
      const key = String(row[si]);
      if (!groups.has(key)) groups.set(key, []);
      groups.get(key)!.push(row);
    }
  } else {
    groups.set("", [...table.rows]);
  }

  const xs = table.rows.map((r) => r[xi]);
  const ys = table.rows.map((r) => r[yi]);
  const { frame } = options;
  const xScale = linearScale(
    [Math.min(...xs), Math.max(...xs)],
    [frame.x0, frame.x0 + frame.width],
  );
  const pad = (Math.max(...ys) - Math.min(...ys)) * 0.05 || 0.05;
  const yScale = linearScale(
    [Math.min(...ys) - pad, Math.max(...ys) + pad],
    [frame.y0 + frame.height, frame.y0],
  );

  const parts: string[] = [];
  let colorIdx = 0;
  const sortedKeys = [...groups.keys()].sort((a, b) => Number(a) - Number(b));
  for (const key of sortedKeys) {
    const rows = groups.get(key)!.slice().sort((a, b) => a[xi] - b[xi]);
    const points = rows
      .map((r) => `${xScale(r[xi]).toFixed(2)},${yScale(r[yi]).toFixed(2)}`)
      .join(" ");
    const color = SERIES_COLORS[colorIdx % SERIES_COLORS.length];
    parts.push(
      tag("polyline", {
        points,
        fill: "none",
        stroke: color,
        "stroke-width": 1.6,
      }),
    );
    if (key !== "") {
      parts.push(
        text(`${options.seriesColumn}=${key}`, {
          x: frame.x0 + frame.width - 8,
          y: frame.y0 + 14 + 14 * colorIdx,
          "font-size": 11,
          "text-anchor": "end",
          fill: color,
        }),
      );
    }
    colorIdx += 1;
  }

  const out = [
    tag("g", { id: "curve" }, parts),
    ...axes(frame, xScale, yScale, options.xColumn, options.yColumn),
  ];
  if (options.title) {
    out.push(
      text(options.title, {
        x: frame.x0 + frame.width / 2,
        y: frame.y0 - 8,
        "font-size": 13,
        "text-anchor": "middle",
      }),
    );
  }
  return out.join("");
}
