import { describe, expect, it } from "vitest";

import { histogram, linearFit, logLogSlope } from "../src/stats.js";
import { SWEEP_SLOPE } from "./fixtures.js";

describe("linearFit", () => {
  it("recovers an exact line", () => {
    const fit = linearFit([0, 1, 2, 3], [1, 3, 5, 7]);
    expect(fit.slope).toBeCloseTo(2, 12);
    expect(fit.intercept).toBeCloseTo(1, 12);
  });

  it("averages noise symmetrically around the true line", () => {
    const fit = linearFit([0, 1, 2, 3], [1.1, 2.9, 5.1, 6.9]);
    expect(fit.slope).toBeCloseTo(1.96, 10);
    expect(fit.intercept).toBeCloseTo(1.06, 10);
  });

  it("rejects degenerate input", () => {
    expect(() => linearFit([1, 2], [1])).toThrow("equal-length");
    expect(() => linearFit([1], [1])).toThrow("at least 2");
    expect(() => linearFit([2, 2, 2], [1, 2, 3])).toThrow("distinct");
  });
});

describe("logLogSlope", () => {
  it("matches the acceptance sweep regression", () => {
    const fit = logLogSlope([0.2, 0.1, 0.05], [269462, 897747, 5345463]);
    expect(fit.slope).toBeCloseTo(SWEEP_SLOPE, 9);
  });

  it("is exactly 2 when queries quadruple per halved eps", () => {
    const fit = logLogSlope([0.2, 0.1, 0.05], [1000, 4000, 16000]);
    expect(fit.slope).toBeCloseTo(2, 12);
  });
});

describe("histogram", () => {
  it("bins values with the top edge in the last bin", () => {
    const counts = histogram([0, 0.083, 1.0], 0, 1, 12);
    expect(counts[0]).toBe(2);
    expect(counts[11]).toBe(1);
    expect(counts.reduce((a, b) => a + b, 0)).toBe(3);
  });

  it("ignores values outside the range", () => {
    const counts = histogram([-0.1, 0.5, 1.2], 0, 1, 4);
    expect(counts).toEqual([0, 0, 1, 0]);
  });

  it("rejects an empty range", () => {
    expect(() => histogram([1], 1, 1, 4)).toThrow("range");
  });
});
