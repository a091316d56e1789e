/** Spectral-statistics diagnostics: r-ratio and KL divergence vs size. */

import { loadTable, column } from "../csv.js";
import { Panel, linScale, svgDocument } from "../svg.js";
import { mean } from "../stats.js";
import { extent, sizesWith, artifactPath, FigureSpec } from "./common.js";
import type { RenderedFigure } from "../render.js";

const W = 780;
const H = 360;

const COLS = ["L", "realization_id", "r_mean", "kld_mean"];

interface SizeStats {
  L: number;
  r: number[];
  kld: number[];
}

function load(inDir: string): SizeStats[] {
  return sizesWith(inDir, "stats", "stats.csv").map((L) => {
    const t = loadTable(artifactPath(inDir, "stats", L, "stats.csv"), COLS);
    return { L, r: column(t, "r_mean"), kld: column(t, "kld_mean") };
  });
}

export const fig5: FigureSpec = {
  name: "fig5",
  description: "level-spacing ratio and KLd vs system size",

  inputs(inDir) {
    const sizes = sizesWith(inDir, "stats", "stats.csv");
    if (!sizes.length) return null;
    return sizes.map((L) => artifactPath(inDir, "stats", L, "stats.csv"));
  },

  render(inDir): RenderedFigure {
    const data = load(inDir);
    if (!data.length) throw new Error("stats experiment output not found");
    const sizes = data.map((d) => d.L);
    const xDomain = extent(sizes, [5, 11], 0.12);

    const panelWidth = (W - 170) / 2;
    const left = new Panel({
      x: 60,
      y: 40,
      width: panelWidth,
      height: H - 100,
      title: "level spacing ratio",
      xLabel: "L",
      yLabel: "⟨r⟩",
      xScale: linScale(xDomain, [0, panelWidth], 4),
      yScale: linScale([0.3, 0.7], [0, H - 100]),
    });
    const right = new Panel({
      x: 120 + panelWidth,
      y: 40,
      width: panelWidth,
      height: H - 100,
      title: "KL divergence of eigenvectors",
      xLabel: "L",
      yLabel: "⟨KLd⟩",
      xScale: linScale(xDomain, [0, panelWidth], 4),
      yScale: linScale([0.6, 1.5], [0, H - 100]),
    });

    for (const { L, r, kld } of data) {
      left.scatter(r.map(() => L), r, { color: "#1f77b4", r: 1.5, opacity: 0.35 });
      right.scatter(kld.map(() => L), kld, { color: "#1f77b4", r: 1.5, opacity: 0.35 });
      if (r.length) left.scatter([L], [mean(r)], { color: "#d62728", r: 4 });
      if (kld.length) right.scatter([L], [mean(kld)], { color: "#d62728", r: 4 });
    }
    left.hLine(0.5996, { color: "#2ca02c", dash: "5,3" });
    left.hLine(0.3863, { color: "#9467bd", dash: "5,3" });
    left.legend(
      [
        { label: "per realization", color: "#1f77b4", marker: true },
        { label: "ensemble mean", color: "#d62728", marker: true },
        { label: "GUE 0.5996", color: "#2ca02c", dash: "5,3" },
        { label: "Poisson 0.3863", color: "#9467bd", dash: "5,3" },
      ],
      0.5,
      0.55
    );
    right.hLine(1.0, { color: "#2ca02c", dash: "5,3" });
    right.legend(
      [
        { label: "per realization", color: "#1f77b4", marker: true },
        { label: "ensemble mean", color: "#d62728", marker: true },
        { label: "GUE 1.0", color: "#2ca02c", dash: "5,3" },
      ],
      0.5,
      0.06
    );
    return {
      name: "fig5",
      svg: svgDocument(W, H, [left.render(), right.render()]),
      width: W,
    };
  },
};
