/** H_eff structure: element growth fits, E0 vs size, bulk density shape. */

import { loadTable, column } from "../csv.js";
import { Panel, linScale, logScale, svgDocument } from "../svg.js";
import { mean, sem, originSlope, histogram } from "../stats.js";
import { e0ClosedForm, gaussianDensity, semicircleDensity } from "../model.js";
import { extent, sizesWith, artifactPath, FigureSpec } from "./common.js";
import type { RenderedFigure } from "../render.js";

const W = 1020;
const H = 380;

const COLS = ["L", "e0_realization", "diag_sq_sum", "offdiag_sq_sum"];

export const fig6: FigureSpec = {
  name: "fig6",
  description: "element growth, E0 scaling and bulk density",

  inputs(inDir) {
    const sizes = sizesWith(inDir, "stats", "stats.csv");
    if (!sizes.length) return null;
    const paths = sizes.map((L) => artifactPath(inDir, "stats", L, "stats.csv"));
    const eigSizes = sizesWith(inDir, "stats", "bulk_eigs.csv");
    if (eigSizes.length) {
      paths.push(
        artifactPath(inDir, "stats", eigSizes[eigSizes.length - 1], "bulk_eigs.csv")
      );
    }
    return paths;
  },

  render(inDir): RenderedFigure {
    const sizes = sizesWith(inDir, "stats", "stats.csv");
    if (!sizes.length) throw new Error("stats experiment output not found");
    const perSize = sizes.map((L) => {
      const t = loadTable(artifactPath(inDir, "stats", L, "stats.csv"), COLS);
      const N = Math.pow(2, L);
      return {
        L,
        // raw sums persisted; the L / L^2 scaling laws hold for sums per state
        diag: column(t, "diag_sq_sum").filter(Number.isFinite).map((v) => v / N),
        offdiag: column(t, "offdiag_sq_sum").filter(Number.isFinite).map((v) => v / N),
        e0mc: column(t, "e0_realization").filter(Number.isFinite),
      };
    });
    const withData = perSize.filter((d) => d.e0mc.length > 0);

    const pw = (W - 260) / 3;
    const ph = H - 100;
    const body: string[] = [];

    // (a) diagonal vs off-diagonal squared-sum growth, log-log
    const Ls = withData.map((d) => d.L);
    const diagMeans = withData.map((d) => mean(d.diag));
    const offMeans = withData.map((d) => mean(d.offdiag));
    const aDomain: [number, number] =
      Ls.length > 0 ? [Math.min(...Ls) * 0.9, Math.max(...Ls) * 1.1] : [5, 11];
    const aRange = extent([...diagMeans, ...offMeans].filter((v) => v > 0), [1, 100]);
    const pa = new Panel({
      x: 60,
      y: 40,
      width: pw,
      height: ph,
      title: "(a) H_eff element growth",
      xLabel: "L",
      yLabel: "Σ|element|² / N",
      xScale: logScale(aDomain, [0, pw], Ls),
      yScale: logScale([Math.max(aRange[0], 1e-3), aRange[1]], [0, ph]),
    });
    if (Ls.length) {
      pa.scatter(Ls, diagMeans, { color: "#1f77b4", r: 3.5 });
      pa.scatter(Ls, offMeans, { color: "#d62728", r: 3.5, shape: "square" });
      if (Ls.length >= 2) {
        const bFit = originSlope(Ls, diagMeans);
        const aFit = originSlope(Ls.map((L) => L * L), offMeans);
        pa.line(Ls, Ls.map((L) => bFit * L), { color: "#1f77b4", dash: "5,3" });
        pa.line(Ls, Ls.map((L) => aFit * L * L), { color: "#d62728", dash: "5,3" });
        pa.annotate(0.05, 0.12, `diag fit ${bFit.toFixed(2)}·L`, "#1f77b4");
        pa.annotate(0.05, 0.2, `offdiag fit ${aFit.toFixed(2)}·L²`, "#d62728");
      }
    }
    body.push(pa.render());

    // (b) Monte-Carlo E0 vs the closed form
    const e0Means = withData.map((d) => mean(d.e0mc));
    const e0Sems = withData.map((d) => sem(d.e0mc));
    const bDomain = extent(Ls, [5, 11], 0.12);
    const pb = new Panel({
      x: 150 + pw,
      y: 40,
      width: pw,
      height: ph,
      title: "(b) energy scale E0",
      xLabel: "L",
      yLabel: "E0",
      xScale: linScale(bDomain, [0, pw], 4),
      yScale: linScale(
        extent(e0Means.concat([0], [bDomain[0], bDomain[1]].map(e0ClosedForm)), [0, 8]),
        [0, ph]
      ),
    });
    const smooth = Array.from({ length: 50 }, (_, i) =>
      bDomain[0] + ((bDomain[1] - bDomain[0]) * i) / 49
    );
    pb.line(smooth, smooth.map(e0ClosedForm), { color: "#2ca02c" });
    if (Ls.length) {
      pb.scatter(Ls, e0Means, { color: "#1f77b4", r: 3.5 });
      pb.errorBars(Ls, e0Means, e0Sems, { color: "#1f77b4" });
    }
    pb.legend(
      [
        { label: "Monte Carlo", color: "#1f77b4", marker: true },
        { label: "√((2L²+10L+5)/8)", color: "#2ca02c" },
      ],
      0.06,
      0.06
    );
    body.push(pb.render());

    // (c) pooled bulk density vs Gaussian and semicircle
    const eigSizes = sizesWith(inDir, "stats", "bulk_eigs.csv");
    const pc = new Panel({
      x: 240 + 2 * pw,
      y: 40,
      width: pw,
      height: ph,
      title: "(c) bulk density",
      xLabel: "E",
      yLabel: "ρ(E)",
      xScale: linScale([-25, 25], [0, pw], 4),
      yScale: linScale([0, 0.08], [0, ph], 4),
    });
    if (eigSizes.length) {
      const Lmax = eigSizes[eigSizes.length - 1];
      const eigs = column(
        loadTable(artifactPath(inDir, "stats", Lmax, "bulk_eigs.csv"), ["eigenvalue"]),
        "eigenvalue"
      ).filter(Number.isFinite);
      const e0 = e0ClosedForm(Lmax);
      const lim = Math.ceil(4 * e0);
      const pc2 = new Panel({
        x: 240 + 2 * pw,
        y: 40,
        width: pw,
        height: ph,
        title: `(c) bulk density, L = ${Lmax}`,
        xLabel: "E",
        yLabel: "ρ(E)",
        xScale: linScale([-lim, lim], [0, pw], 4),
        yScale: linScale([0, 1.25 * gaussianDensity(0, e0)], [0, ph], 4),
      });
      if (eigs.length) {
        const hist = histogram(eigs, 60, -lim, lim);
        pc2.scatter(hist.centers, hist.density, { color: "#1f77b4", r: 2 });
      }
      const xs = Array.from({ length: 200 }, (_, i) => -lim + (2 * lim * i) / 199);
      pc2.line(xs, xs.map((x) => gaussianDensity(x, e0)), { color: "#2ca02c" });
      pc2.line(xs, xs.map((x) => semicircleDensity(x, e0)), {
        color: "#d62728",
        dash: "5,3",
      });
      pc2.legend(
        [
          { label: "pooled eigenvalues", color: "#1f77b4", marker: true },
          { label: "Gaussian(E0)", color: "#2ca02c" },
          { label: "semicircle", color: "#d62728", dash: "5,3" },
        ],
        0.55,
        0.06
      );
      body.push(pc2.render());
    } else {
      body.push(pc.render());
    }
    return { name: "fig6", svg: svgDocument(W, H, body), width: W };
  },
};
