/** Builds a miniature experiment results tree for figure tests. */

import { mkdtempSync, mkdirSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";

function csv(header: string[], rows: (number | string)[][]): string {
  return [header.join(","), ...rows.map((r) => r.join(","))].join("\n") + "\n";
}

export function makeResultsTree(): string {
  const root = mkdtempSync(join(tmpdir(), "figdata-"));

  // spectrum/4/spectrum.csv
  const spectrumRows: (number | string)[][] = [];
  for (const delta of [0.02, 0.08]) {
    for (let i = 0; i < 16; i++) {
      const special = i < 2;
      spectrumRows.push([
        0,
        delta,
        special ? (i === 0 ? 2.6 : -2.6) : (i - 8) * 0.05 * delta * 10,
        special ? 0.05 : 0.8,
        special ? "True" : "False",
      ]);
    }
  }
  write(root, "spectrum/4/spectrum.csv", csv(
    ["realization_id", "delta", "phi", "entropy", "is_special"],
    spectrumRows
  ));

  // heff/4/validation.csv
  const valRows: (number | string)[][] = [];
  for (const delta of [0.005, 0.01, 0.02]) {
    for (let r = 0; r < 3; r++) {
      valRows.push([r, 100 + r, delta, delta * 10 + 0.01 * r, delta * 2 + 0.005 * r]);
    }
  }
  write(root, "heff/4/validation.csv", csv(
    ["realization_id", "seed", "delta", "bulk_distance", "special_distance"],
    valRows
  ));

  // stats/<L>/stats.csv + bulk_eigs.csv + heatmaps
  for (const L of [4, 5]) {
    const rows: (number | string)[][] = [];
    for (let r = 0; r < 4; r++) {
      rows.push([
        L, r, 10 + r, 0.1, 1e-12, 3.5 + 0.1 * r, 0.59 + 0.01 * r,
        1.0 + 0.05 * r, 5 * Math.pow(2, L), 0.25 * L * L * Math.pow(2, L),
      ]);
    }
    write(root, `stats/${L}/stats.csv`, csv(
      ["L", "realization_id", "seed", "trace_per_dim", "trace_identity",
       "e0_realization", "r_mean", "kld_mean", "diag_sq_sum", "offdiag_sq_sum"],
      rows
    ));
    const eigs = Array.from({ length: 200 }, (_, i) => [((i % 40) - 20) * 0.3]);
    write(root, `stats/${L}/bulk_eigs.csv`, csv(["eigenvalue"], eigs));
    const n = Math.pow(2, L);
    const header = Array.from({ length: n }, (_, j) => `c${j}`);
    const mat = Array.from({ length: n }, (_, i) =>
      Array.from({ length: n }, (_, j) => (i === j ? 2.0 : 0.1))
    );
    write(root, `stats/${L}/heatmap_computational.csv`, csv(header, mat));
    write(root, `stats/${L}/heatmap_g0.csv`, csv(header, mat));
  }

  // critical/<L>/gap.csv + special_blocks.csv, plus summary.json
  for (const L of [4, 5, 6]) {
    const gapRows: (number | string)[][] = [];
    const blockRows: (number | string)[][] = [];
    const theta = Math.asin(Math.pow(2, -L / 2));
    for (let r = 0; r < 4; r++) {
      gapRows.push([L, r, 50 + r, 1.2 / L + 0.01 * r, 4.0, ""]);
      blockRows.push([L, 50 + r, 0.1, 0.02 * r, -0.01 * r, 0.5 * r, theta]);
    }
    write(root, `critical/${L}/gap.csv`, csv(
      ["L", "realization_id", "seed", "delta_c_gap", "e0", "error"], gapRows
    ));
    write(root, `critical/${L}/special_blocks.csv`, csv(
      ["L", "seed", "b0", "bx", "by", "bz", "theta"], blockRows
    ));
  }
  write(root, "critical/summary.json", JSON.stringify({
    loglog_fit: { slope: -1.0, intercept: 0.18, r_value: -0.99 },
  }));

  // dynamics/4/dynamics.csv
  const dynRows: (number | string)[][] = [];
  for (const delta of [0.01, 0.08]) {
    for (let t = 0; t <= 12; t++) {
      const p0 = Math.pow(Math.sin((2 * t + 1) * Math.asin(0.25)), 2);
      dynRows.push([delta, t, p0, 0.01, 1 - p0, 0.01]);
    }
  }
  write(root, "dynamics/4/dynamics.csv", csv(
    ["delta", "t", "p0_mean", "p0_sem", "pxbar_mean", "pxbar_sem"], dynRows
  ));

  return root;
}

export function write(root: string, rel: string, content: string): void {
  const path = join(root, rel);
  mkdirSync(join(path, ".."), { recursive: true });
  writeFileSync(path, content);
}

export { csv };
