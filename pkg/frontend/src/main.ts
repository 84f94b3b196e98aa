#!/usr/bin/env node
/**
 * render <kind> <in.csv> [<in2.csv>] <out.svg> [--title ...] [--x COL]
 *        [--y COL] [--value COL] [--series COL]
 *
 * Kinds: heatmap | curve | surface | wigner-pair (two inputs: generated,
 * reference).  Output is SVG; rendering is a pure function of the inputs.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { FigureKind, FigureRequest, render } from "./render.js";
import { SchemaError } from "./csv.js";

const KINDS: FigureKind[] = ["heatmap", "curve", "surface", "wigner-pair"];

interface Cli {
  request: FigureRequest;
  output: string;
}

export function parseArgs(argv: string[]): Cli {
  const positional: string[] = [];
  const options: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 1) {
    const arg = argv[i];
    if (arg.startsWith("--")) {
      const value = argv[i + 1];
      if (value === undefined) {
        throw new Error(`missing value for ${arg}`);
      }
      options[arg.slice(2)] = value;
      i += 1;
    } else {
      positional.push(arg);
    }
  }
  if (positional.length < 3) {
    throw new Error("usage: render <kind> <in.csv> [<in2.csv>] <out.svg> [--title ...]");
  }
  const kind = positional[0] as FigureKind;
  if (!KINDS.includes(kind)) {
    throw new Error(`unknown kind '${positional[0]}' (expected ${KINDS.join(", ")})`);
  }
  const inputs = positional.slice(1, -1);
  const expected = kind === "wigner-pair" ? 2 : 1;
  if (inputs.length !== expected) {
    throw new Error(`${kind} takes ${expected} input file(s), got ${inputs.length}`);
  }
  return {
    request: {
      kind,
      inputs,
      title: options.title,
      xColumn: options.x,
      yColumn: options.y,
      valueColumn: options.value,
      seriesColumn: options.series,
    },
    output: positional[positional.length - 1],
  };
}

export function main(argv: string[]): number {
  let cli: Cli;
  try {
    cli = parseArgs(argv);
  } catch (err) {
    console.error((err as Error).message);
    return 2;
  }
  try {
    const texts = cli.request.inputs.map((path) => readFileSync(path, "utf8"));
    const svg = render(cli.request, texts);
    writeFileSync(cli.output, svg);
    console.log(`wrote ${cli.output}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema mismatch: ${err.message}`);
      return 1;
    }
    console.error((err as Error).message);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
