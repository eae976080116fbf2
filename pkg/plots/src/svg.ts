/**
 * Minimal SVG chart scaffolding shared by the four plot kinds.
 *
 * makeShell() lays out a single titled plot area with axes, ticks, and a
 * grid, and hands back data-to-pixel mappers; the kind builders only emit
 * their marks.  Output depends on nothing but the inputs, so repeated
 * renders are byte-identical.
 */

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Tick positions at multiples of 1/2/5 x 10^k covering [min, max]. */
export function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = 10 ** Math.floor(Math.log10(rough));
  const step =
    [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= max + step * 0.01; v += step) ticks.push(v);
  return ticks;
}

/** Decade ticks for a log axis, with 2x/5x mantissas when decades are few. */
export function logTicks(min: number, max: number): number[] {
  if (!(min > 0) || !(max > min)) {
    throw new Error("log axis needs 0 < min < max");
  }
  const hiDecade = Math.floor(Math.log10(max) + 1e-9);
  const decades: number[] = [];
  for (let k = Math.ceil(Math.log10(min) - 1e-9); k <= hiDecade; k++) {
    decades.push(10 ** k);
  }
  if (decades.length >= 4) return decades;
  const ticks: number[] = [];
  for (let k = Math.floor(Math.log10(min)); k <= hiDecade; k++) {
    for (const m of [1, 2, 5]) {
      const v = m * 10 ** k;
      if (v >= min * (1 - 1e-9) && v <= max * (1 + 1e-9)) ticks.push(v);
    }
  }
  return ticks.length >= 2 ? ticks : [min, max];
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const magnitude = Math.abs(v);
  if (magnitude >= 1e4 || magnitude < 1e-3) {
    return v.toExponential().replace("e+", "e");
  }
  if (Number.isInteger(v)) return String(v);
  return String(Number(v.toPrecision(3)));
}

export interface AxisSpec {
  label: string;
  min: number;
  max: number;
  log?: boolean;
  /** Overrides the computed ticks. */
  ticks?: number[];
  fmt?: (v: number) => string;
}

export interface Shell {
  /** Data value to pixel coordinate. */
  x(v: number): number;
  y(v: number): number;
  area: { left: number; top: number; width: number; height: number };
  /** Wraps the marks in the full document; marks are clipped to the area. */
  svg(body: string): string;
}

const W = 640;
const H = 360;
const ML = 66;
const MR = 24;
const MT = 46;
const MB = 50;

function mapper(
  axis: AxisSpec,
  r0: number,
  r1: number,
): (v: number) => number {
  const lo = axis.log ? Math.log10(axis.min) : axis.min;
  const hi = axis.log ? Math.log10(axis.max) : axis.max;
  const span = hi - lo || 1;
  return (v: number) => {
    const t = ((axis.log ? Math.log10(v) : v) - lo) / span;
    return r0 + t * (r1 - r0);
  };
}

function axisTicks(axis: AxisSpec, count: number): number[] {
  if (axis.ticks) return axis.ticks;
  return axis.log
    ? logTicks(axis.min, axis.max)
    : niceTicks(axis.min, axis.max, count);
}

export function makeShell(opts: {
  title: string;
  subtitle?: string;
  x: AxisSpec;
  y: AxisSpec;
}): Shell {
  const pw = W - ML - MR;
  const ph = H - MT - MB;
  const x = mapper(opts.x, ML, ML + pw);
  const y = mapper(opts.y, MT + ph, MT);
  const xTicks = axisTicks(opts.x, 6);
  const yTicks = axisTicks(opts.y, 5);
  const xFmt = opts.x.fmt ?? fmtTick;
  const yFmt = opts.y.fmt ?? fmtTick;

  const svg = (body: string): string => {
    let s =
      `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" ` +
      `font-family="Helvetica, Arial, sans-serif">\n`;
    s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;
    s +=
      `<text x="${ML}" y="18" font-size="13" font-weight="600" ` +
      `fill="#222">${esc(opts.title)}</text>\n`;
    if (opts.subtitle) {
      s += `<text x="${ML}" y="34" font-size="10" fill="#888">${esc(
        opts.subtitle,
      )}</text>\n`;
    }
    s +=
      `<defs><clipPath id="plot"><rect x="${ML}" y="${MT}" ` +
      `width="${pw}" height="${ph}"/></clipPath></defs>\n`;

    for (const v of yTicks) {
      const py = y(v).toFixed(1);
      s +=
        `<line x1="${ML}" y1="${py}" x2="${ML + pw}" y2="${py}" ` +
        `stroke="#eee" stroke-width="0.7"/>\n`;
    }

    s += `<g clip-path="url(#plot)">\n${body}</g>\n`;

    s +=
      `<line x1="${ML}" y1="${MT}" x2="${ML}" y2="${MT + ph}" ` +
      `stroke="#333" stroke-width="0.8"/>\n`;
    s +=
      `<line x1="${ML}" y1="${MT + ph}" x2="${ML + pw}" y2="${MT + ph}" ` +
      `stroke="#333" stroke-width="0.8"/>\n`;

    for (const v of xTicks) {
      const px = x(v).toFixed(1);
      s +=
        `<line x1="${px}" y1="${MT + ph}" x2="${px}" y2="${MT + ph + 4}" ` +
        `stroke="#333" stroke-width="0.6"/>\n`;
      s +=
        `<text x="${px}" y="${MT + ph + 15}" text-anchor="middle" ` +
        `font-size="9" fill="#555">${esc(xFmt(v))}</text>\n`;
    }
    s +=
      `<text x="${ML + pw / 2}" y="${H - 8}" text-anchor="middle" ` +
      `font-size="11" fill="#333">${esc(opts.x.label)}</text>\n`;

    for (const v of yTicks) {
      const py = y(v);
      s +=
        `<line x1="${ML - 4}" y1="${py.toFixed(1)}" x2="${ML}" ` +
        `y2="${py.toFixed(1)}" stroke="#333" stroke-width="0.6"/>\n`;
      s +=
        `<text x="${ML - 7}" y="${(py + 3).toFixed(1)}" text-anchor="end" ` +
        `font-size="9" fill="#555">${esc(yFmt(v))}</text>\n`;
    }
    s +=
      `<text x="16" y="${MT + ph / 2}" text-anchor="middle" font-size="11" ` +
      `fill="#333" transform="rotate(-90,16,${MT + ph / 2})">` +
      `${esc(opts.y.label)}</text>\n`;

    s += `</svg>\n`;
    return s;
  };

  return { x, y, area: { left: ML, top: MT, width: pw, height: ph }, svg };
}
