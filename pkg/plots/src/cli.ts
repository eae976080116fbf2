#!/usr/bin/env node
/** plots --kind <kind> --in <csv> --out <svg> */

import { realpathSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { PLOT_KINDS, PlotKind, render } from "./render.js";

const USAGE = `usage: plots --kind <kind> --in <csv> --out <svg>

Render an SVG figure from an epiwalk CSV artifact.

  --kind      one of: ${PLOT_KINDS.join(" | ")}
  --in        input CSV: trace.csv for convergence/ceiling/shrinkage,
              sweep.csv for scaling
  --out       output SVG path (parent directories are created)
  --samples   shrinkage only: per-epoch sample count; defaults to
              config_echo.n_t from the result.json beside the trace
  -h, --help  show this message
`;

function fail(message: string): number {
  console.error(`error: ${message}`);
  console.error(USAGE);
  return 1;
}

export function main(argv: string[]): number {
  let values: {
    kind?: string;
    in?: string;
    out?: string;
    samples?: string;
    help?: boolean;
  };
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        in: { type: "string" },
        out: { type: "string" },
        samples: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
      strict: true,
    }));
  } catch (err) {
    return fail((err as Error).message);
  }
  if (values.help) {
    console.log(USAGE);
    return 0;
  }
  for (const flag of ["kind", "in", "out"] as const) {
    if (!values[flag]) return fail(`--${flag} is required`);
  }
  if (!(PLOT_KINDS as readonly string[]).includes(values.kind as string)) {
    return fail(
      `unknown kind "${values.kind}"; expected ${PLOT_KINDS.join(" | ")}`,
    );
  }
  let sampleCount: number | undefined;
  if (values.samples !== undefined) {
    sampleCount = Number(values.samples);
    if (!Number.isInteger(sampleCount) || sampleCount < 1) {
      return fail(`--samples must be a positive integer, got ${values.samples}`);
    }
  }
  try {
    render({
      kind: values.kind as PlotKind,
      inputCsv: values.in as string,
      outputPath: values.out as string,
      sampleCount,
    });
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
  console.log(`wrote ${values.out}`);
  return 0;
}

function invokedDirectly(): boolean {
  if (!process.argv[1]) return false;
  try {
    return import.meta.url === pathToFileURL(realpathSync(process.argv[1])).href;
  } catch {
    return false;
  }
}

if (invokedDirectly()) {
  process.exit(main(process.argv.slice(2)));
}
