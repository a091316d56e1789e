/** Special-block statistics: component variances and dressed-gap means. */

import { loadTable, column } from "../csv.js";
import { Panel, linScale, logScale, svgDocument, SERIES_COLORS } from "../svg.js";
import { mean, variance, originSlope } from "../stats.js";
import { extent, sizesWith, artifactPath, FigureSpec } from "./common.js";
import type { RenderedFigure } from "../render.js";

const W = 880;
const H = 400;

const COLS = ["L", "seed", "b0", "bx", "by", "bz", "theta"];
const DELTAS = [0.01, 0.02, 0.05];

interface SizeBlocks {
  L: number;
  bx: number[];
  by: number[];
  bz: number[];
  theta: number;
}

function load(inDir: string): SizeBlocks[] {
  return sizesWith(inDir, "critical", "special_blocks.csv").map((L) => {
    const t = loadTable(
      artifactPath(inDir, "critical", L, "special_blocks.csv"),
      COLS
    );
    const thetas = column(t, "theta");
    return {
      L,
      bx: column(t, "bx").filter(Number.isFinite),
      by: column(t, "by").filter(Number.isFinite),
      bz: column(t, "bz").filter(Number.isFinite),
      theta: thetas.length ? thetas[0] : Math.asin(Math.pow(2, -L / 2)),
    };
  });
}

export const fig9: FigureSpec = {
  name: "fig9",
  description: "special-block component variances and gap statistic",

  inputs(inDir) {
    const sizes = sizesWith(inDir, "critical", "special_blocks.csv");
    if (!sizes.length) return null;
    return sizes.map((L) => artifactPath(inDir, "critical", L, "special_blocks.csv"));
  },

  render(inDir): RenderedFigure {
    const data = load(inDir);
    if (!data.length) throw new Error("critical experiment output not found");
    const withVar = data.filter((d) => d.bz.length >= 2);
    const Ls = withVar.map((d) => d.L);
    const varX = withVar.map((d) => variance(d.bx));
    const varY = withVar.map((d) => variance(d.by));
    const varZ = withVar.map((d) => variance(d.bz));

    const pw = (W - 180) / 2;
    const ph = H - 100;
    const xDomain: [number, number] = Ls.length
      ? [Math.min(...Ls) * 0.95, Math.max(...Ls) * 1.05]
      : [5, 11];

    const allVars = varX.concat(varY, varZ).filter((v) => v > 0);
    const pa = new Panel({
      x: 65,
      y: 40,
      width: pw,
      height: ph,
      title: "(a) block component variances",
      xLabel: "L",
      yLabel: "Var",
      xScale: linScale(xDomain, [0, pw], 4),
      yScale: logScale(
        allVars.length
          ? [Math.min(...allVars) * 0.5, Math.max(...allVars) * 2]
          : [1e-4, 10],
        [0, ph]
      ),
    });
    if (Ls.length) {
      pa.scatter(Ls, varZ, { color: "#1f77b4", r: 3.5 });
      pa.scatter(Ls, varX, { color: "#d62728", r: 3.5, shape: "square" });
      pa.scatter(Ls, varY, { color: "#2ca02c", r: 3.5 });
      if (Ls.length >= 2) {
        const cz = originSlope(Ls, varZ);
        const invN = Ls.map((L) => Math.pow(2, -L));
        const cx = originSlope(invN, varX);
        pa.line(Ls, Ls.map((L) => cz * L), { color: "#1f77b4", dash: "5,3" });
        pa.line(Ls, Ls.map((L) => cx * Math.pow(2, -L)), {
          color: "#d62728",
          dash: "5,3",
        });
        pa.annotate(0.05, 0.1, `Var(bz) fit ${cz.toFixed(2)}·L`, "#1f77b4");
        pa.annotate(0.05, 0.18, `Var(bx) fit ${cx.toFixed(1)}/N`, "#d62728");
      }
    }
    pa.legend(
      [
        { label: "Var(bz)", color: "#1f77b4", marker: true },
        { label: "Var(bx)", color: "#d62728", marker: true },
        { label: "Var(by)", color: "#2ca02c", marker: true },
      ],
      0.68,
      0.4
    );

    // (b) dressed-gap statistic <Δ²> = 4[(2θ - δ by)² + δ²bx² + δ²bz²]
    const gapMeans = DELTAS.map((delta) =>
      data.map((d) => {
        const vals = d.bx.map((_, i) => {
          const a = 2 * d.theta - delta * d.by[i];
          return 4 * (a * a + delta * delta * (d.bx[i] * d.bx[i] + d.bz[i] * d.bz[i]));
        });
        return vals.length ? mean(vals) : NaN;
      })
    );
    const sizesAll = data.map((d) => d.L);
    const pb = new Panel({
      x: 155 + pw,
      y: 40,
      width: pw,
      height: ph,
      title: "(b) dressed special gap ⟨Δ²⟩",
      xLabel: "L",
      yLabel: "⟨Δ²⟩",
      xScale: linScale(extent(sizesAll, [5, 11], 0.08), [0, pw], 4),
      yScale: logScale(
        (() => {
          const flat = gapMeans.flat().filter((v) => Number.isFinite(v) && v > 0);
          return flat.length
            ? ([Math.min(...flat) * 0.5, Math.max(...flat) * 2] as [number, number])
            : ([1e-4, 1] as [number, number]);
        })(),
        [0, ph]
      ),
    });
    gapMeans.forEach((ys, i) => {
      const color = SERIES_COLORS[i % SERIES_COLORS.length];
      pb.line(sizesAll, ys, { color });
      pb.scatter(sizesAll, ys, { color, r: 3 });
    });
    pb.legend(
      DELTAS.map((d, i) => ({
        label: `δ = ${d}`,
        color: SERIES_COLORS[i % SERIES_COLORS.length],
      })),
      0.68,
      0.06
    );
    return {
      name: "fig9",
      svg: svgDocument(W, H, [pa.render(), pb.render()]),
      width: W,
    };
  },
};
