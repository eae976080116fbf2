/**
 * CSV schemas written by the epiwalk CLI.
 *
 * Two inputs exist: trace.csv (one row per optimizer epoch, written by
 * `epiwalk run`) and sweep.csv (one row per swept run, written by
 * `epiwalk sweep`).  This module owns the column contracts and turns raw
 * text into typed rows; everything downstream works on TraceRow/SweepRow.
 */

import { existsSync, readFileSync } from "node:fs";
import { dirname, join, resolve } from "node:path";
import Papa from "papaparse";

export const TRACE_COLUMNS = [
  "epoch",
  "C_t",
  "cut_level",
  "survivors",
  "theta_hat",
  "give_ups",
  "queries_cum",
  "subopt_if_known",
  "wall_ms",
] as const;

export const SWEEP_COLUMNS = [
  "value",
  "total_queries",
  "final_subopt",
  "epochs",
] as const;

export interface TraceRow {
  epoch: number;
  cT: number;
  cutLevel: number;
  survivors: number;
  /** null when the epoch fit no whitening map (written as "nan"). */
  thetaHat: number | null;
  giveUps: number;
  queriesCum: number;
  /** null when the run's function has no known minimum. */
  suboptIfKnown: number | null;
  wallMs: number | null;
}

export interface SweepRow {
  value: number;
  /** null on rows where the swept run failed (written as empty cells). */
  totalQueries: number | null;
  finalSubopt: number | null;
  epochs: number | null;
}

/** Input does not match the documented CSV contract. */
export class SchemaError extends Error {}

export function checkColumns(
  found: readonly string[],
  expected: readonly string[],
  label: string,
): void {
  const same =
    found.length === expected.length &&
    expected.every((col, i) => col === found[i]);
  if (same) return;
  const missing = expected.filter((col) => !found.includes(col));
  const extra = found.filter(
    (col) => !(expected as readonly string[]).includes(col),
  );
  let message =
    `${label}: column mismatch\n` +
    `  expected: ${expected.join(",")}\n` +
    `  found:    ${found.join(",")}`;
  if (missing.length > 0) message += `\n  missing:  ${missing.join(",")}`;
  if (extra.length > 0) message += `\n  unexpected: ${extra.join(",")}`;
  throw new SchemaError(message);
}

/** "" marks a failed sweep row, "nan" unknowable ground truth; both → null. */
function cell(raw: string | undefined): number | null {
  if (raw === undefined || raw === "") return null;
  const value = Number(raw);
  return Number.isFinite(value) ? value : null;
}

function need(
  raw: string | undefined,
  column: string,
  rowIndex: number,
  label: string,
): number {
  const value = cell(raw);
  if (value === null) {
    throw new SchemaError(
      `${label}: row ${rowIndex + 1}: column "${column}" ` +
        `must be numeric, got "${raw ?? ""}"`,
    );
  }
  return value;
}

function parseTable(
  text: string,
  expected: readonly string[],
  label: string,
): Record<string, string>[] {
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    const where = first.row === undefined ? "" : ` (row ${first.row + 1})`;
    throw new SchemaError(`${label}: ${first.message}${where}`);
  }
  checkColumns(parsed.meta.fields ?? [], expected, label);
  return parsed.data;
}

export function parseTrace(text: string, label = "trace"): TraceRow[] {
  return parseTable(text, TRACE_COLUMNS, label).map((row, i) => ({
    epoch: need(row.epoch, "epoch", i, label),
    cT: need(row.C_t, "C_t", i, label),
    cutLevel: need(row.cut_level, "cut_level", i, label),
    survivors: need(row.survivors, "survivors", i, label),
    thetaHat: cell(row.theta_hat),
    giveUps: need(row.give_ups, "give_ups", i, label),
    queriesCum: need(row.queries_cum, "queries_cum", i, label),
    suboptIfKnown: cell(row.subopt_if_known),
    wallMs: cell(row.wall_ms),
  }));
}

export function parseSweep(text: string, label = "sweep"): SweepRow[] {
  return parseTable(text, SWEEP_COLUMNS, label).map((row, i) => ({
    value: need(row.value, "value", i, label),
    totalQueries: cell(row.total_queries),
    finalSubopt: cell(row.final_subopt),
    epochs: cell(row.epochs),
  }));
}

function readText(path: string): string {
  if (!existsSync(path)) throw new SchemaError(`input not found: ${path}`);
  return readFileSync(path, "utf-8");
}

export function readTrace(path: string): TraceRow[] {
  return parseTrace(readText(path), path);
}

export function readSweep(path: string): SweepRow[] {
  return parseSweep(readText(path), path);
}

/**
 * Per-epoch sample count from the result.json the CLI writes beside
 * trace.csv.  The trace schema has no such column, and the survivor
 * fraction needs it as the denominator.  Returns null when the sidecar is
 * missing or unreadable; callers fall back to an explicit --samples value.
 */
export function sampleCountNear(tracePath: string): number | null {
  const sidecar = join(dirname(resolve(tracePath)), "result.json");
  if (!existsSync(sidecar)) return null;
  try {
    const doc = JSON.parse(readFileSync(sidecar, "utf-8"));
    const count = doc?.config_echo?.n_t;
    return typeof count === "number" && Number.isInteger(count) && count > 0
      ? count
      : null;
  } catch {
    return null;
  }
}
