/**
 * The four figure kinds.
 *
 * convergence  trace.csv   optimality gap vs cumulative queries, log-log
 * ceiling      trace.csv   ceiling level per epoch
 * shrinkage    trace.csv   survivor-fraction histogram vs the [1/3, 3/4] band
 * scaling      sweep.csv   total queries vs 1/eps, log-log, fitted slope
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname, resolve } from "node:path";

import {
  readSweep,
  readTrace,
  sampleCountNear,
  SweepRow,
  TraceRow,
} from "./schema.js";
import { histogram, LineFit, logLogSlope } from "./stats.js";
import { makeShell } from "./svg.js";

export const PLOT_KINDS = [
  "convergence",
  "ceiling",
  "shrinkage",
  "scaling",
] as const;

export type PlotKind = (typeof PLOT_KINDS)[number];

export interface PlotSpec {
  kind: PlotKind;
  inputCsv: string;
  outputPath: string;
  /** Shrinkage denominator override; defaults to n_t from result.json. */
  sampleCount?: number;
}

/** Input parsed fine but holds nothing the requested kind can draw. */
export class PlotDataError extends Error {}

const LINE = "#4361ee";
const FIT = "#e63946";
const BAND = "#74c69d";

function dot(x: number, y: number, color: string): string {
  return (
    `<circle cx="${x.toFixed(1)}" cy="${y.toFixed(1)}" r="2.6" ` +
    `fill="${color}"/>\n`
  );
}

function path(points: Array<[number, number]>, color: string): string {
  const joined = points
    .map(([x, y]) => `${x.toFixed(1)},${y.toFixed(1)}`)
    .join(" ");
  return (
    `<polyline fill="none" stroke="${color}" stroke-width="1.4" ` +
    `points="${joined}"/>\n`
  );
}

export function convergenceSvg(rows: TraceRow[]): string {
  const pts = rows
    .filter(
      (r) => r.suboptIfKnown !== null && r.suboptIfKnown > 0 && r.queriesCum > 0,
    )
    .map((r) => ({ queries: r.queriesCum, gap: r.suboptIfKnown as number }));
  if (pts.length === 0) {
    throw new PlotDataError(
      "convergence needs positive subopt_if_known values; " +
        "the run's function must have a known minimum",
    );
  }
  const qs = pts.map((p) => p.queries);
  const gaps = pts.map((p) => p.gap);
  const shell = makeShell({
    title: "Optimality gap vs cumulative queries",
    subtitle: `${pts.length} epochs with known-gap ground truth`,
    x: {
      label: "cumulative queries",
      min: Math.min(...qs) / 1.3,
      max: Math.max(...qs) * 1.3,
      log: true,
    },
    y: {
      label: "f(best) - f*",
      min: Math.min(...gaps) / 1.6,
      max: Math.max(...gaps) * 1.6,
      log: true,
    },
  });
  let marks = path(
    pts.map((p) => [shell.x(p.queries), shell.y(p.gap)]),
    LINE,
  );
  for (const p of pts) marks += dot(shell.x(p.queries), shell.y(p.gap), LINE);
  return shell.svg(marks);
}

export function ceilingSvg(rows: TraceRow[]): string {
  if (rows.length === 0) {
    throw new PlotDataError("ceiling needs at least one epoch");
  }
  const epochs = rows.map((r) => r.epoch);
  const levels = rows.map((r) => r.cT);
  const lo = Math.min(...levels);
  const hi = Math.max(...levels);
  const pad = (hi - lo || Math.abs(hi) || 1) * 0.08;
  const shell = makeShell({
    title: "Ceiling level per epoch",
    subtitle: `${rows.length} epochs`,
    x: {
      label: "epoch",
      min: Math.min(...epochs) - 0.5,
      max: Math.max(...epochs) + 0.5,
      ticks: epochs.length <= 12 ? epochs : undefined,
    },
    y: { label: "ceiling C_t", min: lo - pad, max: hi + pad },
  });
  let marks = path(
    rows.map((r) => [shell.x(r.epoch), shell.y(r.cT)]),
    LINE,
  );
  for (const r of rows) marks += dot(shell.x(r.epoch), shell.y(r.cT), LINE);
  return shell.svg(marks);
}

const SHRINKAGE_BINS = 12;
const BAND_LO = 1 / 3;
const BAND_HI = 3 / 4;

export function shrinkageSvg(rows: TraceRow[], sampleCount: number): string {
  if (rows.length === 0) {
    throw new PlotDataError("shrinkage needs at least one epoch");
  }
  if (!(Number.isFinite(sampleCount) && sampleCount > 0)) {
    throw new PlotDataError(
      `per-epoch sample count must be positive, got ${sampleCount}`,
    );
  }
  const fractions = rows.map((r) => r.survivors / sampleCount);
  const counts = histogram(fractions, 0, 1, SHRINKAGE_BINS);
  const inBand = fractions.filter((f) => f >= BAND_LO && f <= BAND_HI).length;
  const share = ((100 * inBand) / fractions.length).toFixed(0);
  const yMax = Math.max(1, ...counts) * 1.15;
  const shell = makeShell({
    title: "Survivor fraction per epoch",
    subtitle:
      `${rows.length} epochs at ${sampleCount} samples each; ` +
      `${share}% inside the band`,
    x: { label: "survivors / samples", min: 0, max: 1 },
    y: {
      label: "epochs",
      min: 0,
      max: yMax,
      ticks: niceIntegerTicks(yMax),
    },
  });
  const top = shell.area.top;
  let marks =
    `<rect x="${shell.x(BAND_LO).toFixed(1)}" y="${top}" ` +
    `width="${(shell.x(BAND_HI) - shell.x(BAND_LO)).toFixed(1)}" ` +
    `height="${shell.area.height}" fill="${BAND}" opacity="0.3"/>\n`;
  marks +=
    `<text x="${shell.x((BAND_LO + BAND_HI) / 2).toFixed(1)}" ` +
    `y="${top + 14}" text-anchor="middle" font-size="9" ` +
    `fill="#2d6a4f">target band [1/3, 3/4]</text>\n`;
  for (let i = 0; i < SHRINKAGE_BINS; i++) {
    if (counts[i] === 0) continue;
    const x0 = shell.x(i / SHRINKAGE_BINS) + 0.5;
    const x1 = shell.x((i + 1) / SHRINKAGE_BINS) - 0.5;
    const yTop = shell.y(counts[i]);
    marks +=
      `<rect x="${x0.toFixed(1)}" y="${yTop.toFixed(1)}" ` +
      `width="${(x1 - x0).toFixed(1)}" ` +
      `height="${(shell.y(0) - yTop).toFixed(1)}" fill="${LINE}" ` +
      `opacity="0.85"/>\n`;
  }
  return shell.svg(marks);
}

function niceIntegerTicks(max: number): number[] {
  const step = Math.max(1, Math.ceil(max / 5));
  const ticks: number[] = [];
  for (let v = 0; v <= max; v += step) ticks.push(v);
  return ticks;
}

export function scalingPoints(
  rows: SweepRow[],
): Array<{ eps: number; queries: number }> {
  return rows
    .filter((r) => r.totalQueries !== null && r.totalQueries > 0 && r.value > 0)
    .map((r) => ({ eps: r.value, queries: r.totalQueries as number }));
}

/** The regression the annotation reports: ln(queries) on ln(1/eps). */
export function scalingFit(rows: SweepRow[]): LineFit {
  const pts = scalingPoints(rows);
  if (pts.length < 2) {
    throw new PlotDataError(
      `scaling needs at least 2 completed runs, got ${pts.length}`,
    );
  }
  return logLogSlope(
    pts.map((p) => p.eps),
    pts.map((p) => p.queries),
  );
}

export function scalingSvg(rows: SweepRow[]): string {
  const pts = scalingPoints(rows);
  const fit = scalingFit(rows);
  const invEps = pts.map((p) => 1 / p.eps);
  const queries = pts.map((p) => p.queries);
  const shell = makeShell({
    title: "Query cost scaling",
    subtitle: `${pts.length} runs; least-squares fit in log-log space`,
    x: {
      label: "1 / eps",
      min: Math.min(...invEps) / 1.3,
      max: Math.max(...invEps) * 1.3,
      log: true,
    },
    y: {
      label: "total queries",
      min: Math.min(...queries) / 1.6,
      max: Math.max(...queries) * 1.6,
      log: true,
    },
  });
  const lineAt = (x: number) => Math.exp(fit.intercept + fit.slope * Math.log(x));
  const xLo = Math.min(...invEps) / 1.15;
  const xHi = Math.max(...invEps) * 1.15;
  let marks = path(
    [
      [shell.x(xLo), shell.y(lineAt(xLo))],
      [shell.x(xHi), shell.y(lineAt(xHi))],
    ],
    FIT,
  );
  for (const p of pts) {
    marks += dot(shell.x(1 / p.eps), shell.y(p.queries), LINE);
  }
  marks +=
    `<text x="${shell.area.left + 12}" y="${shell.area.top + 18}" ` +
    `font-size="12" font-weight="600" fill="${FIT}">` +
    `slope = ${fit.slope.toFixed(2)}</text>\n`;
  return shell.svg(marks);
}

export function buildSvg(spec: Omit<PlotSpec, "outputPath">): string {
  switch (spec.kind) {
    case "convergence":
      return convergenceSvg(readTrace(spec.inputCsv));
    case "ceiling":
      return ceilingSvg(readTrace(spec.inputCsv));
    case "shrinkage": {
      const rows = readTrace(spec.inputCsv);
      const count = spec.sampleCount ?? sampleCountNear(spec.inputCsv);
      if (count === null || count === undefined) {
        throw new PlotDataError(
          "shrinkage needs the per-epoch sample count: pass --samples " +
            "or keep result.json beside the trace",
        );
      }
      return shrinkageSvg(rows, count);
    }
    case "scaling":
      return scalingSvg(readSweep(spec.inputCsv));
  }
}

/** Builds the figure and writes it to spec.outputPath; returns the SVG. */
export function render(spec: PlotSpec): string {
  const svg = buildSvg(spec);
  mkdirSync(dirname(resolve(spec.outputPath)), { recursive: true });
  writeFileSync(spec.outputPath, svg);
  return svg;
}
