import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";
import { SchemaError } from "../src/csv.js";
import { render } from "../src/render.js";
import { parseArgs } from "../src/main.js";

const golden = (name: string): string =>
  readFileSync(join(__dirname, "..", "golden", name), "utf8");

const FIDELITY_MAP = golden("fidelity_map.csv");
const CURVE = golden("max_fidelity_curve.csv");
const WIGNER_SCQ = golden("wigner_scq.csv");
const WIGNER_SCS = golden("wigner_scs.csv");

describe("render kinds", () => {
  it("heatmap renders from a fidelity surface", () => {
    const svg = render(
      { kind: "heatmap", inputs: ["f.csv"], title: "fidelity" },
      [FIDELITY_MAP],
    );
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("fidelity");
    expect(svg).toContain('id="heatmap"');
    expect(svg).toContain("<rect");
  });

  it("curve renders series split by dimension", () => {
    const svg = render(
      {
        kind: "curve",
        inputs: ["c.csv"],
        xColumn: "beta",
        yColumn: "f_max",
        seriesColumn: "n",
      },
      [CURVE],
    );
    expect(svg).toContain("<polyline");
    expect(svg).toContain("n=3");
    expect(svg).toContain("n=6");
  });

  it("surface renders an isometric projection", () => {
    const svg = render({ kind: "surface", inputs: ["w.csv"] }, [WIGNER_SCQ]);
    expect(svg).toContain('id="surface"');
    expect(svg).toContain("<polygon");
  });

  it("wigner-pair lays out four panels", () => {
    const svg = render(
      { kind: "wigner-pair", inputs: ["gen.csv", "ref.csv"], title: "comparison" },
      [WIGNER_SCQ, WIGNER_SCS],
    );
    for (const id of [
      "panel-gen-surface",
      "panel-ref-surface",
      "panel-gen-contour",
      "panel-ref-contour",
    ]) {
      expect(svg).toContain(`id="${id}"`);
    }
    // the negative interference fringes put a zero contour in both panels
    expect(svg).toContain("<line");
  });
});

describe("determinism", () => {
  it("identical input gives byte-identical output", () => {
    const request = {
      kind: "wigner-pair" as const,
      inputs: ["a", "b"],
      title: "t",
    };
    const first = render(request, [WIGNER_SCQ, WIGNER_SCS]);
    const second = render(request, [WIGNER_SCQ, WIGNER_SCS]);
    expect(second).toBe(first);
  });

  it("emits no NaN coordinates for any kind", () => {
    const outputs = [
      render({ kind: "heatmap", inputs: ["a"] }, [FIDELITY_MAP]),
      render({ kind: "curve", inputs: ["a"], seriesColumn: "n" }, [CURVE]),
      render({ kind: "surface", inputs: ["a"] }, [WIGNER_SCQ]),
      render({ kind: "wigner-pair", inputs: ["a", "b"] }, [WIGNER_SCQ, WIGNER_SCS]),
    ];
    for (const svg of outputs) {
      expect(svg).not.toContain("NaN");
    }
  });
});

describe("schema failures", () => {
  it("reports non-grid input to heatmap", () => {
    const scattered = "x,y,v\n0,0,1\n1,0,2\n0.5,1,3\n";
    expect(() => render({ kind: "heatmap", inputs: ["s.csv"] }, [scattered])).toThrow(
      SchemaError,
    );
  });

  it("requires two inputs for wigner-pair", () => {
    expect(() =>
      render({ kind: "wigner-pair", inputs: ["one.csv"] }, [WIGNER_SCQ]),
    ).toThrow(SchemaError);
  });

  it("reports missing columns by name", () => {
    expect(() =>
      render(
        { kind: "curve", inputs: ["c.csv"], xColumn: "missing" },
        [CURVE],
      ),
    ).toThrow(/missing/);
  });
});

describe("argument parsing", () => {
  it("accepts kind, inputs, output, and options", () => {
    const cli = parseArgs([
      "wigner-pair",
      "gen.csv",
      "ref.csv",
      "out.svg",
      "--title",
      "Wigner comparison",
    ]);
    expect(cli.request.kind).toBe("wigner-pair");
    expect(cli.request.inputs).toEqual(["gen.csv", "ref.csv"]);
    expect(cli.output).toBe("out.svg");
    expect(cli.request.title).toBe("Wigner comparison");
  });

  it("rejects unknown kinds", () => {
    expect(() => parseArgs(["piechart", "a.csv", "out.svg"])).toThrow(/unknown kind/);
  });

  it("rejects wrong input counts", () => {
    expect(() => parseArgs(["heatmap", "a.csv", "b.csv", "out.svg"])).toThrow(
      /takes 1 input/,
    );
  });
});
