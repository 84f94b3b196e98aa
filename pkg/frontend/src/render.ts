import { parseCsv, SchemaError, Table, toGrid } from "./csv.js";
import { contourPanel } from "./contour.js";
import { curvePanel } from "./curve.js";
import { heatmapPanel } from "./heatmap.js";
import { surfacePanel } from "./surface.js";
import { document } from "./svg.js";

export type FigureKind = "heatmap" | "curve" | "surface" | "wigner-pair";

export interface FigureRequest {
  kind: FigureKind;
  /** One CSV for heatmap/curve/surface; generated + reference for wigner-pair. */
  inputs: string[];
  title?: string;
  xColumn?: string;
  yColumn?: string;
  valueColumn?: string;
  seriesColumn?: string;
}

const MARGIN = { left: 64, right: 24, top: 40, bottom: 48 };

function defaultColumns(table: Table, request: FigureRequest): [string, string, string] {
  const x = request.xColumn ?? table.columns[0];
  const y = request.yColumn ?? table.columns[1];
  const v = request.valueColumn ?? table.columns[table.columns.length - 1];
  return [x, y, v];
}

/** Render one figure to an SVG string; pure function of the CSV contents. */
export function render(request: FigureRequest, csvTexts: string[]): string {
  if (csvTexts.length !== request.inputs.length) {
    throw new SchemaError("one CSV text required per input path");
  }
  switch (request.kind) {
    case "heatmap":
      return renderHeatmap(request, parseCsv(csvTexts[0]));
    case "curve":
      return renderCurve(request, parseCsv(csvTexts[0]));
    case "surface":
      return renderSurface(request, parseCsv(csvTexts[0]));
    case "wigner-pair": {
      if (csvTexts.length !== 2) {
        throw new SchemaError("wigner-pair needs two inputs: generated, reference");
      }
      return renderWignerPair(request, parseCsv(csvTexts[0]), parseCsv(csvTexts[1]));
    }
    default:
      throw new SchemaError(`unknown figure kind: ${String(request.kind)}`);
  }
}

function renderHeatmap(request: FigureRequest, table: Table): string {
  const width = 720;
  const height = 560;
  const [x, y, v] = defaultColumns(table, request);
  const grid = toGrid(table, x, y, v);
  const flat = grid.values.flat();
  const signed = Math.min(...flat) < 0;
  const panel = heatmapPanel(grid, {
    frame: {
      x0: MARGIN.left,
      y0: MARGIN.top,
      width: width - MARGIN.left - MARGIN.right,
      height: height - MARGIN.top - MARGIN.bottom,
    },
    xLabel: x,
    yLabel: y,
    title: request.title,
    signed,
  });
  return document(width, height, [panel]);
}

function renderCurve(request: FigureRequest, table: Table): string {
  const width = 720;
  const height = 480;
  const panel = curvePanel(table, {
    frame: {
      x0: MARGIN.left,
      y0: MARGIN.top,
      width: width - MARGIN.left - MARGIN.right,
      height: height - MARGIN.top - MARGIN.bottom,
    },
    xColumn: request.xColumn ?? table.columns[0],
    yColumn: request.yColumn ?? table.columns[table.columns.length - 1],
    seriesColumn: request.seriesColumn,
    title: request.title,
  });
  return document(width, height, [panel]);
}

function renderSurface(request: FigureRequest, table: Table): string {
  const width = 720;
  const height = 600;
  const [x, y, v] = defaultColumns(table, request);
  const grid = toGrid(table, x, y, v);
  const panel = surfacePanel(grid, {
    frame: {
      x0: MARGIN.left,
      y0: MARGIN.top,
      width: width - MARGIN.left - MARGIN.right,
      height: height - MARGIN.top - MARGIN.bottom,
    },
    title: request.title,
  });
  return document(width, height, [panel]);
}

function renderWignerPair(request: FigureRequest, generated: Table, reference: Table): string {
  const width = 960;
  const height = 860;
  const [x, y, v] = defaultColumns(generated, request);
  const gridGen = toGrid(generated, x, y, v);
  const gridRef = toGrid(reference, x, y, v);
  const panelW = (width - 3 * MARGIN.left) / 2;
  const panelH = (height - 3 * MARGIN.top - MARGIN.bottom) / 2;
  const frames = [
    { x0: MARGIN.left, y0: MARGIN.top, width: panelW, height: panelH },
    { x0: 2 * MARGIN.left + panelW, y0: MARGIN.top, width: panelW, height: panelH },
    { x0: MARGIN.left, y0: 2 * MARGIN.top + panelH, width: panelW, height: panelH },
    {
      x0: 2 * MARGIN.left + panelW,
      y0: 2 * MARGIN.top + panelH,
      width: panelW,
      height: panelH,
    },
  ];
  const panels = [
    surfacePanel(gridGen, { frame: frames[0], title: "generated", id: "panel-gen-surface" }),
    surfacePanel(gridRef, { frame: frames[1], title: "reference", id: "panel-ref-surface" }),
    contourPanel(gridGen, {
      frame: frames[2],
      xLabel: x,
      yLabel: y,
      id: "panel-gen-contour",
    }),
    contourPanel(gridRef, {
      frame: frames[3],
      xLabel: x,
      yLabel: y,
      id: "panel-ref-contour",
    }),
  ];
  const parts = [...panels];
  if (request.title) {
    parts.push(
      `<text font-family="sans-serif" x="${width / 2}" y="20" font-size="15" text-anchor="middle">${request.title}</text>`,
    );
  }
  return document(width, height, parts);
}

