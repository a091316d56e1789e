/** H_eff magnitude heatmaps in the computational and G0 eigenbases. */

import { loadTable } from "../csv.js";
import { Panel, linScale, svgDocument, viridis, colorbar } from "../svg.js";
import { sizesWith, artifactPath, FigureSpec } from "./common.js";
import type { RenderedFigure } from "../render.js";

const W = 860;
const H = 440;
const FILES = ["heatmap_computational.csv", "heatmap_g0.csv"] as const;
const TITLES = ["computational basis", "noiseless eigenbasis"];

function toMatrix(path: string): number[][] {
  const t = loadTable(path, ["c0"]);
  return t.rows.map((row) => t.columns.map((c) => Math.abs(Number(row[c]))));
}

export const fig10: FigureSpec = {
  name: "fig10",
  description: "effective-Hamiltonian element-magnitude heatmaps",

  inputs(inDir) {
    const sizes = sizesWith(inDir, "stats", FILES[0]);
    const usable = sizes.filter(
      (L) => sizesWith(inDir, "stats", FILES[1]).includes(L)
    );
    if (!usable.length) return null;
    const L = usable[usable.length - 1];
    return FILES.map((f) => artifactPath(inDir, "stats", L, f));
  },

  render(inDir): RenderedFigure {
    const paths = this.inputs(inDir);
    if (!paths) throw new Error("stats heatmap output not found");
    const body: string[] = [];
    const pw = (W - 260) / 2;
    const ph = H - 110;
    let vmax = 0;
    const mats = paths.map(toMatrix);
    for (const m of mats) {
      for (const row of m) for (const v of row) vmax = Math.max(vmax, v);
    }
    if (vmax === 0) vmax = 1;
    mats.forEach((m, i) => {
      const panel = new Panel({
        x: 60 + i * (pw + 80),
        y: 45,
        width: pw,
        height: ph,
        title: `|H_eff| in the ${TITLES[i]}`,
        xScale: linScale([0, Math.max(1, m[0]?.length ?? 1)], [0, pw], 4),
        yScale: linScale([0, Math.max(1, m.length)], [0, ph], 4),
      });
      panel.heatmap(m, vmax, viridis);
      body.push(panel.render());
    });
    body.push(colorbar(W - 80, 45, 14, ph, viridis, "|element|", 0, vmax));
    return { name: "fig10", svg: svgDocument(W, H, body), width: W };
  },
};
