/**
 * Reader for the CSV contract produced by the simulation CLI:
 * optional `# provenance:` comment lines, a one-line header, numeric rows.
 */

export interface Table {
  columns: string[];
  rows: number[][];
  provenance: string | null;
}

export class SchemaError extends Error {}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  let provenance: string | null = null;
  let start = 0;
  while (start < lines.length && lines[start].startsWith("#")) {
    if (lines[start].startsWith("# provenance:")) {
      provenance = lines[start].slice(1).trim();
    }
    start += 1;
  }
  if (start >= lines.length) {
    throw new SchemaError("CSV has no header line");
  }
  const columns = lines[start].split(",").map((c) => c.trim());
  if (columns.some((c) => c.length === 0)) {
    throw new SchemaError(`malformed header: ${lines[start]}`);
  }
  const rows: number[][] = [];
  for (const line of lines.slice(start + 1)) {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new SchemaError(
        `row has ${cells.length} cells, header has ${columns.length}: ${line}`,
      );
    }
    rows.push(
      cells.map((cell) => {
        const value = Number(cell);
        if (Number.isNaN(value)) {
          throw new SchemaError(`non-numeric cell '${cell}' in row: ${line}`);
        }
        return value;
      }),
    );
  }
  return { columns, rows, provenance };
}

export function columnIndex(table: Table, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(
      `column '${name}' not found (have: ${table.columns.join(", ")})`,
    );
  }
  return idx;
}

export interface GridData {
  /** Ascending unique x values. */
  x: number[];
  /** Ascending unique y values. */
  y: number[];
  /** values[i][j] at (y[i], x[j]). */
  values: number[][];
}

/** Pivot (x, y, value) triples into a dense rectangular grid. */
export function toGrid(table: Table, xName: string, yName: string, vName: string): GridData {
  const xi = columnIndex(table, xName);
  const yi = columnIndex(table, yName);
  const vi = columnIndex(table, vName);
  const xs = [...new Set(table.rows.map((r) => r[xi]))].sort((a, b) => a - b);
  const ys = [...new Set(table.rows.map((r) => r[yi]))].sort((a, b) => a - b);
  if (xs.length * ys.length !== table.rows.length) {
    throw new SchemaError(
      `rows (${table.rows.length}) do not fill a ${xs.length} x ${ys.length} grid`,
    );
  }
  const xPos = new Map(xs.map((v, i) => [v, i]));
  const yPos = new Map(ys.map((v, i) => [v, i]));
  const values = ys.map(() => new Array<number>(xs.length).fill(Number.NaN));
  for (const row of table.rows) {
    values[yPos.get(row[yi])!][xPos.get(row[xi])!] = row[vi];
  }
  for (const rowVals of values) {
    if (rowVals.some((v) => Number.isNaN(v))) {
      throw new SchemaError("grid has holes (duplicate or missing points)");
    }
  }
  return { x: xs, y: ys, values };
}
