/** Noise-averaged target and x-bar dynamics with the noiseless overlay. */

import { loadTable, column } from "../csv.js";
import { Panel, linScale, svgDocument, SERIES_COLORS } from "../svg.js";
import { groupBy } from "../stats.js";
import { noiselessTargetProbability } from "../model.js";
import { extent, sizesWith, artifactPath, FigureSpec } from "./common.js";
import type { RenderedFigure } from "../render.js";

const W = 880;
const H = 400;

const COLS = ["delta", "t", "p0_mean", "p0_sem", "pxbar_mean", "pxbar_sem"];

export const fig11: FigureSpec = {
  name: "fig11",
  description: "target-state dynamics across the noise regimes",

  inputs(inDir) {
    const sizes = sizesWith(inDir, "dynamics", "dynamics.csv");
    if (!sizes.length) return null;
    const L = sizes[sizes.length - 1];
    return [artifactPath(inDir, "dynamics", L, "dynamics.csv")];
  },

  render(inDir): RenderedFigure {
    const sizes = sizesWith(inDir, "dynamics", "dynamics.csv");
    if (!sizes.length) throw new Error("dynamics experiment output not found");
    const L = sizes[sizes.length - 1];
    const N = Math.pow(2, L);
    const table = loadTable(
      artifactPath(inDir, "dynamics", L, "dynamics.csv"),
      COLS
    );
    const rows = table.rows.map((r) => ({
      delta: Number(r.delta),
      t: Number(r.t),
      p0: Number(r.p0_mean),
      p0s: Number(r.p0_sem),
      px: Number(r.pxbar_mean),
      pxs: Number(r.pxbar_sem),
    }));
    const byDelta = [...groupBy(rows, (r) => r.delta).entries()].sort(
      (a, b) => a[0] - b[0]
    );
    const tAll = rows.map((r) => r.t);
    const tDomain = extent([0, ...tAll], [0, 50], 0.02);

    const pw = (W - 180) / 2;
    const ph = H - 100;
    const mkPanel = (x: number, title: string, yLabel: string) =>
      new Panel({
        x,
        y: 40,
        width: pw,
        height: ph,
        title: `${title}, L = ${L}`,
        xLabel: "step t",
        yLabel,
        xScale: linScale(tDomain, [0, pw]),
        yScale: linScale([0, 1.05], [0, ph], 4),
      });
    const pa = mkPanel(60, "target probability", "⟨P0⟩");
    const pb = mkPanel(150 + pw, "x̄ probability", "⟨Px̄⟩");

    byDelta.forEach(([delta, rs], i) => {
      const color = SERIES_COLORS[i % SERIES_COLORS.length];
      const sorted = [...rs].sort((a, b) => a.t - b.t);
      const t = sorted.map((r) => r.t);
      pa.band(t, sorted.map((r) => r.p0 - r.p0s), sorted.map((r) => r.p0 + r.p0s), color);
      pa.line(t, sorted.map((r) => r.p0), { color });
      pb.band(t, sorted.map((r) => r.px - r.pxs), sorted.map((r) => r.px + r.pxs), color);
      pb.line(t, sorted.map((r) => r.px), { color });
    });

    const tMax = Math.round(tDomain[1]);
    const steps = Array.from({ length: tMax + 1 }, (_, t) => t);
    pa.line(steps, steps.map((t) => noiselessTargetProbability(t, L)), {
      color: "#000",
      dash: "3,3",
      width: 1,
    });
    pa.hLine(1 / N, { color: "#888", dash: "2,2" });
    pa.legend(
      byDelta
        .map(([delta], i) => ({
          label: `δ = ${delta}`,
          color: SERIES_COLORS[i % SERIES_COLORS.length],
        }))
        .concat([
          { label: "noiseless sin²((2t+1)θ)", color: "#000" },
          { label: "1/N", color: "#888" },
        ]),
      0.5,
      0.3
    );
    return {
      name: "fig11",
      svg: svgDocument(W, H, [pa.render(), pb.render()]),
      width: W,
    };
  },
};
