/** Quasienergy fan: eigenphases vs noise strength, colored by entropy. */

import { loadTable, column } from "../csv.js";
import { Panel, linScale, svgDocument, viridis, colorbar } from "../svg.js";
import { extent, sizesWith, artifactPath, FigureSpec } from "./common.js";
import type { RenderedFigure } from "../render.js";

const W = 560;
const H = 420;

function resolve(inDir: string): string | null {
  const sizes = sizesWith(inDir, "spectrum", "spectrum.csv");
  if (!sizes.length) return null;
  return artifactPath(inDir, "spectrum", sizes[sizes.length - 1], "spectrum.csv");
}

export const fig3: FigureSpec = {
  name: "fig3",
  description: "noisy Floquet spectrum vs delta, entropy-colored",

  inputs(inDir) {
    const p = resolve(inDir);
    return p ? [p] : null;
  },

  render(inDir): RenderedFigure {
    const path = resolve(inDir);
    if (!path) throw new Error("spectrum experiment output not found");
    const sizes = sizesWith(inDir, "spectrum", "spectrum.csv");
    const L = sizes[sizes.length - 1];
    const table = loadTable(path, [
      "realization_id",
      "delta",
      "phi",
      "entropy",
      "is_special",
    ]);
    const delta = column(table, "delta");
    const phi = column(table, "phi");
    const entropy = column(table, "entropy");
    const special = column(table, "is_special");

    const sPage = (L / 2) * Math.log(2) - 0.5;
    const panel = new Panel({
      x: 60,
      y: 40,
      width: W - 170,
      height: H - 100,
      title: `noisy Grover quasienergies, L = ${L}`,
      xLabel: "noise strength δ",
      yLabel: "quasienergy φ",
      xScale: linScale(extent(delta, [0, 0.2]), [0, W - 170]),
      yScale: linScale([-Math.PI, Math.PI], [0, H - 100]),
    });

    const bulkIdx = special.map((s, i) => (s ? -1 : i)).filter((i) => i >= 0);
    panel.coloredScatter(
      bulkIdx.map((i) => delta[i]),
      bulkIdx.map((i) => phi[i]),
      bulkIdx.map((i) => viridis(entropy[i] / sPage)),
      1.4
    );
    const specIdx = special.map((s, i) => (s ? i : -1)).filter((i) => i >= 0);
    panel.scatter(
      specIdx.map((i) => delta[i]),
      specIdx.map((i) => phi[i]),
      { color: "#d62728", r: 2.2 }
    );
    panel.legend([{ label: "special states", color: "#d62728", marker: true }]);

    const body = [
      panel.render(),
      colorbar(W - 90, 40, 14, H - 100, viridis, "S / S_Page", 0, 1),
    ];
    return { name: "fig3", svg: svgDocument(W, H, body), width: W };
  },
};
