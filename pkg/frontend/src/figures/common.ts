/** Shared plumbing for the individual figure modules. */

import { join } from "path";
import { Table, column, listSizes, sizeArtifact } from "../csv.js";
import { groupBy, mean, sem } from "../stats.js";
import type { RenderedFigure } from "../render.js";

export interface FigureSpec {
  name: string;
  description: string;
  /** Resolved input paths, or null when the experiment output is absent. */
  inputs(inDir: string): string[] | null;
  render(inDir: string): RenderedFigure;
}

/** Sizes under in/<experiment> that contain the given artifact. */
export function sizesWith(inDir: string, experiment: string, file: string): number[] {
  const dir = join(inDir, experiment);
  return listSizes(dir).filter((L) => sizeArtifact(dir, L, file) !== null);
}

export function artifactPath(
  inDir: string,
  experiment: string,
  size: number,
  file: string
): string {
  return join(inDir, experiment, String(size), file);
}

/** [min, max] with padding; fallback domain when no finite data. */
export function extent(
  values: number[],
  fallback: [number, number],
  pad = 0.05
): [number, number] {
  const finite = values.filter(Number.isFinite);
  if (!finite.length) return fallback;
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const span = hi - lo;
  return [lo - pad * span, hi + pad * span];
}

export interface GroupStat {
  key: number;
  mean: number;
  sem: number;
}

/** Mean and standard error of `value` per distinct `key`, keys ascending. */
export function meanSemBy(table: Table, key: string, value: string): GroupStat[] {
  const keys = column(table, key);
  const vals = column(table, value);
  const pairs = keys.map((k, i) => ({ k, v: vals[i] }));
  const grouped = groupBy(pairs, (p) => p.k);
  return [...grouped.entries()]
    .sort((a, b) => a[0] - b[0])
    .map(([k, items]) => {
      const vs = items.map((p) => p.v).filter(Number.isFinite);
      return {
        key: k,
        mean: vs.length ? mean(vs) : NaN,
        sem: sem(vs),
      };
    });
}
