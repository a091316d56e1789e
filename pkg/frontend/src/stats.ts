/** Small aggregation helpers used at the plotting level (means, fits). */

export function mean(xs: number[]): number {
  return xs.reduce((a, b) => a + b, 0) / xs.length;
}

export function variance(xs: number[]): number {
  const m = mean(xs);
  return xs.reduce((a, b) => a + (b - m) * (b - m), 0) / (xs.length - 1);
}

export function sem(xs: number[]): number {
  if (xs.length < 2) return 0;
  return Math.sqrt(variance(xs) / xs.length);
}

/** Ordinary least squares y = a + b x. */
export function linearFit(
  x: number[],
  y: number[]
): { intercept: number; slope: number } {
  const mx = mean(x);
  const my = mean(y);
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < x.length; i++) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const slope = sxy / sxx;
  return { intercept: my - slope * mx, slope };
}

/** Least-squares slope of y = b x (no intercept). */
export function originSlope(x: number[], y: number[]): number {
  let sxy = 0;
  let sxx = 0;
  for (let i = 0; i < x.length; i++) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
  }
  return sxy / sxx;
}

export function groupBy<T>(
  items: T[],
  key: (item: T) => number
): Map<number, T[]> {
  const out = new Map<number, T[]>();
  for (const item of items) {
    const k = key(item);
    const bucket = out.get(k);
    if (bucket) bucket.push(item);
    else out.set(k, [item]);
  }
  return out;
}

export function histogram(
  values: number[],
  bins: number,
  lo: number,
  hi: number
): { centers: number[]; density: number[] } {
  const counts = new Array(bins).fill(0);
  const width = (hi - lo) / bins;
  for (const v of values) {
    const b = Math.floor((v - lo) / width);
    if (b >= 0 && b < bins) counts[b] += 1;
  }
  const norm = values.length * width;
  return {
    centers: counts.map((_, i) => lo + (i + 0.5) * width),
    density: counts.map((c) => c / norm),
  };
}
