import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  ceilingSvg,
  convergenceSvg,
  PlotDataError,
  render,
  scalingFit,
  scalingSvg,
  shrinkageSvg,
} from "../src/render.js";
import { parseSweep, parseTrace, SchemaError } from "../src/schema.js";
import {
  RESULT_JSON_TEXT,
  SWEEP_EXACT2_TEXT,
  SWEEP_SLOPE,
  SWEEP_TEXT,
  SWEEP_WITH_FAILURE_TEXT,
  TRACE_NO_MIN_TEXT,
  TRACE_TEXT,
  tmpWith,
} from "./fixtures.js";

const TRACE = parseTrace(TRACE_TEXT);
const SWEEP = parseSweep(SWEEP_TEXT);

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe("convergenceSvg", () => {
  it("marks one point per epoch with a known gap", () => {
    const svg = convergenceSvg(TRACE);
    expect(svg).toContain("<svg");
    expect(svg).toContain("cumulative queries");
    expect(count(svg, "<circle")).toBe(TRACE.length);
    expect(count(svg, "<polyline")).toBe(1);
  });

  it("refuses a trace without ground truth", () => {
    expect(() => convergenceSvg(parseTrace(TRACE_NO_MIN_TEXT))).toThrow(
      PlotDataError,
    );
  });
});

describe("ceilingSvg", () => {
  it("draws the per-epoch ceiling series", () => {
    const svg = ceilingSvg(TRACE);
    expect(svg).toContain("Ceiling level per epoch");
    expect(count(svg, "<circle")).toBe(TRACE.length);
    expect(svg).toContain(">5<");
  });

  it("needs at least one epoch", () => {
    expect(() => ceilingSvg([])).toThrow(PlotDataError);
  });
});

describe("shrinkageSvg", () => {
  it("shades the target band and bins every epoch", () => {
    const svg = shrinkageSvg(TRACE, 64);
    expect(svg).toContain("target band [1/3, 3/4]");
    expect(svg).toContain('fill="#74c69d"');
    // survivors 32,28,33,31,30 of 64 all land inside [1/3, 3/4]
    expect(svg).toContain("100% inside the band");
    expect(svg).toContain("5 epochs at 64 samples each");
  });

  it("rejects a nonpositive denominator", () => {
    expect(() => shrinkageSvg(TRACE, 0)).toThrow(PlotDataError);
  });
});

describe("scaling", () => {
  it("fits the acceptance sweep slope", () => {
    expect(scalingFit(SWEEP).slope).toBeCloseTo(SWEEP_SLOPE, 9);
    expect(scalingSvg(SWEEP)).toContain("slope = 2.16");
  });

  it("annotates an exact power law as 2.00", () => {
    expect(scalingSvg(parseSweep(SWEEP_EXACT2_TEXT))).toContain(
      "slope = 2.00",
    );
  });

  it("skips failed rows before fitting", () => {
    const fit = scalingFit(parseSweep(SWEEP_WITH_FAILURE_TEXT));
    expect(fit.slope).toBeCloseTo(SWEEP_SLOPE, 9);
  });

  it("needs two completed runs", () => {
    const one = parseSweep("value,total_queries,final_subopt,epochs\n0.2,100,0.1,2\n0.1,,,\n");
    expect(() => scalingFit(one)).toThrow("at least 2 completed runs");
  });
});

describe("render", () => {
  it("writes the figure and is byte-identical across runs", () => {
    const dir = tmpWith({ "sweep.csv": SWEEP_TEXT });
    const out = join(dir, "figs", "scaling.svg");
    const first = render({
      kind: "scaling",
      inputCsv: join(dir, "sweep.csv"),
      outputPath: out,
    });
    const second = render({
      kind: "scaling",
      inputCsv: join(dir, "sweep.csv"),
      outputPath: out,
    });
    expect(second).toBe(first);
    expect(readFileSync(out, "utf-8")).toBe(first);
  });

  it("takes the shrinkage denominator from the sidecar", () => {
    const dir = tmpWith({
      "trace.csv": TRACE_TEXT,
      "result.json": RESULT_JSON_TEXT,
    });
    const svg = render({
      kind: "shrinkage",
      inputCsv: join(dir, "trace.csv"),
      outputPath: join(dir, "shrinkage.svg"),
    });
    expect(svg).toContain("64 samples each");
  });

  it("prefers an explicit sample count over the sidecar", () => {
    const dir = tmpWith({
      "trace.csv": TRACE_TEXT,
      "result.json": RESULT_JSON_TEXT,
    });
    const svg = render({
      kind: "shrinkage",
      inputCsv: join(dir, "trace.csv"),
      outputPath: join(dir, "shrinkage.svg"),
      sampleCount: 128,
    });
    expect(svg).toContain("128 samples each");
  });

  it("explains how to supply a missing denominator", () => {
    const dir = tmpWith({ "trace.csv": TRACE_TEXT });
    expect(() =>
      render({
        kind: "shrinkage",
        inputCsv: join(dir, "trace.csv"),
        outputPath: join(dir, "shrinkage.svg"),
      }),
    ).toThrow(/--samples/);
  });

  it("propagates schema mismatches", () => {
    const dir = tmpWith({ "sweep.csv": SWEEP_TEXT });
    expect(() =>
      render({
        kind: "convergence",
        inputCsv: join(dir, "sweep.csv"),
        outputPath: join(dir, "out.svg"),
      }),
    ).toThrow(SchemaError);
  });
});
