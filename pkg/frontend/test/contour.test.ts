import { describe, expect, it } from "vitest";
import { isoSegments } from "../src/contour.js";
import { GridData } from "../src/csv.js";

function radialGrid(size: number, radius: number): GridData {
  const axis = Array.from({ length: size }, (_, i) => -2 + (4 * i) / (size - 1));
  return {
    x: axis,
    y: axis,
    values: axis.map((y) => axis.map((x) => radius * radius - x * x - y * y)),
  };
}

describe("isoSegments", () => {
  it("finds no crossings for a level outside the range", () => {
    expect(isoSegments(radialGrid(21, 1.0), 100)).toHaveLength(0);
  });

  it("traces a circle at the zero level", () => {
    const grid = radialGrid(81, 1.0);
    const segments = isoSegments(grid, 0);
    expect(segments.length).toBeGreaterThan(40);
    for (const [ax, ay, bx, by] of segments) {
      for (const [px, py] of [
        [ax, ay],
        [bx, by],
      ]) {
        expect(Math.hypot(px, py)).toBeCloseTo(1.0, 1);
      }
    }
  });

  it("segment endpoints interpolate the level exactly on edges", () => {
    const grid: GridData = {
      x: [0, 1],
      y: [0, 1],
      values: [
        [-1, 1],
        [-1, 1],
      ],
    };
    const segments = isoSegments(grid, 0);
    expect(segments).toHaveLength(1);
    const [ax, , bx] = segments[0];
    expect(ax).toBeCloseTo(0.5, 12);
    expect(bx).toBeCloseTo(0.5, 12);
  });
});
