/** Least-squares line fit and histogram binning for the plot builders. */

export interface LineFit {
  slope: number;
  intercept: number;
}

/** Ordinary least squares fit of y against x. */
export function linearFit(xs: number[], ys: number[]): LineFit {
  if (xs.length !== ys.length) {
    throw new Error("fit needs equal-length x and y");
  }
  if (xs.length < 2) {
    throw new Error(`fit needs at least 2 points, got ${xs.length}`);
  }
  const n = xs.length;
  const meanX = xs.reduce((a, b) => a + b, 0) / n;
  const meanY = ys.reduce((a, b) => a + b, 0) / n;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < n; i++) {
    sxx += (xs[i] - meanX) ** 2;
    sxy += (xs[i] - meanX) * (ys[i] - meanY);
  }
  if (sxx === 0) throw new Error("fit needs at least 2 distinct x values");
  const slope = sxy / sxx;
  return { slope, intercept: meanY - slope * meanX };
}

/**
 * Log-log scaling exponent: slope of ln(queries) against ln(1/eps).
 * Matches the regression the acceptance sweep reports.
 */
export function logLogSlope(epsValues: number[], queries: number[]): LineFit {
  return linearFit(
    epsValues.map((e) => Math.log(1.0 / e)),
    queries.map((q) => Math.log(q)),
  );
}

/** Counts per equal-width bin over [lo, hi]; hi lands in the last bin. */
export function histogram(
  values: number[],
  lo: number,
  hi: number,
  bins: number,
): number[] {
  if (!(hi > lo) || bins < 1) throw new Error("bad histogram range");
  const counts = new Array<number>(bins).fill(0);
  for (const v of values) {
    if (v < lo || v > hi) continue;
    const index = Math.min(bins - 1, Math.floor(((v - lo) / (hi - lo)) * bins));
    counts[index] += 1;
  }
  return counts;
}
