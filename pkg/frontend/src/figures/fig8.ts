/** Special-state validation: dressed-block distance vs delta. */

import { loadTable } from "../csv.js";
import { Panel, linScale, svgDocument, SERIES_COLORS } from "../svg.js";
import {
  extent,
  sizesWith,
  artifactPath,
  meanSemBy,
  FigureSpec,
} from "./common.js";
import type { RenderedFigure } from "../render.js";

const W = 520;
const H = 380;

const COLS = ["realization_id", "seed", "delta", "bulk_distance", "special_distance"];

export const fig8: FigureSpec = {
  name: "fig8",
  description: "special-sector validation distance vs delta",

  inputs(inDir) {
    const sizes = sizesWith(inDir, "heff", "validation.csv");
    if (!sizes.length) return null;
    return sizes.map((L) => artifactPath(inDir, "heff", L, "validation.csv"));
  },

  render(inDir): RenderedFigure {
    const sizes = sizesWith(inDir, "heff", "validation.csv");
    if (!sizes.length) throw new Error("heff experiment output not found");
    const bySize = sizes.map((L) => ({
      L,
      stats: meanSemBy(
        loadTable(artifactPath(inDir, "heff", L, "validation.csv"), COLS),
        "delta",
        "special_distance"
      ),
    }));

    const allX = bySize.flatMap((s) => s.stats.map((g) => g.key));
    const allY = bySize.flatMap((s) => s.stats.map((g) => g.mean));
    const panel = new Panel({
      x: 60,
      y: 40,
      width: W - 100,
      height: H - 100,
      title: "special-state quasienergy distance",
      xLabel: "noise strength δ",
      yLabel: "d_special(φ/δ, E_eff)",
      xScale: linScale(extent([0, ...allX], [0, 0.02]), [0, W - 100]),
      yScale: linScale(extent([0, ...allY], [0, 1]), [0, H - 100]),
    });

    bySize.forEach(({ L, stats }, i) => {
      const color = SERIES_COLORS[i % SERIES_COLORS.length];
      const x = stats.map((g) => g.key);
      const y = stats.map((g) => g.mean);
      panel.line(x, y, { color });
      panel.scatter(x, y, { color, r: 3 });
      panel.errorBars(x, y, stats.map((g) => g.sem), { color });
    });
    panel.legend(
      bySize.map(({ L }, i) => ({
        label: `L = ${L}`,
        color: SERIES_COLORS[i % SERIES_COLORS.length],
      })),
      0.06,
      0.06
    );
    return { name: "fig8", svg: svgDocument(W, H, [panel.render()]), width: W };
  },
};
