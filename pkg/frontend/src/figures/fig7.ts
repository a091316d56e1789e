/** Gap-closing critical noise vs size with both analytic predictions. */

import { join } from "path";
import { existsSync } from "fs";
import { loadTable, column, loadJson } from "../csv.js";
import { Panel, logScale, svgDocument } from "../svg.js";
import { mean, sem, linearFit } from "../stats.js";
import { e0ClosedForm } from "../model.js";
import { sizesWith, artifactPath, FigureSpec } from "./common.js";
import type { RenderedFigure } from "../render.js";

const W = 560;
const H = 420;

const COLS = ["L", "realization_id", "seed", "delta_c_gap", "e0", "error"];

export const fig7: FigureSpec = {
  name: "fig7",
  description: "critical noise delta_c,gap vs L with predictions",

  inputs(inDir) {
    const sizes = sizesWith(inDir, "critical", "gap.csv");
    if (!sizes.length) return null;
    return sizes.map((L) => artifactPath(inDir, "critical", L, "gap.csv"));
  },

  render(inDir): RenderedFigure {
    const sizes = sizesWith(inDir, "critical", "gap.csv");
    if (!sizes.length) throw new Error("critical experiment output not found");
    const perSize = sizes.map((L) => ({
      L,
      values: column(
        loadTable(artifactPath(inDir, "critical", L, "gap.csv"), COLS),
        "delta_c_gap"
      ).filter(Number.isFinite),
    }));
    const withData = perSize.filter((d) => d.values.length > 0);

    const Ls = withData.map((d) => d.L);
    const means = withData.map((d) => mean(d.values));
    const allVals = withData.flatMap((d) => d.values);
    const xDomain: [number, number] = sizes.length
      ? [Math.min(...sizes) * 0.92, Math.max(...sizes) * 1.08]
      : [5, 13];
    const preds = sizes.map((L) => Math.PI / (3 * e0ClosedForm(L)));
    const yVals = allVals.concat(
      sizes.map((L) => Math.PI / (2 * e0ClosedForm(L))),
      preds
    );
    const yDomain: [number, number] = yVals.length
      ? [Math.min(...yVals) * 0.8, Math.max(...yVals) * 1.25]
      : [0.05, 0.4];

    const panel = new Panel({
      x: 65,
      y: 40,
      width: W - 110,
      height: H - 100,
      title: "gap-closing critical noise",
      xLabel: "L",
      yLabel: "δ_c,gap",
      xScale: logScale(xDomain, [0, W - 110], sizes),
      yScale: logScale(yDomain, [0, H - 100]),
    });

    for (const { L, values } of withData) {
      panel.scatter(values.map(() => L), values, {
        color: "#9ecae1",
        r: 1.8,
        opacity: 0.7,
      });
    }
    if (Ls.length) {
      panel.scatter(Ls, means, { color: "#1f77b4", r: 4 });
      panel.errorBars(Ls, means, withData.map((d) => sem(d.values)), {
        color: "#1f77b4",
      });
    }

    // log-log best fit: prefer the persisted summary, else refit here
    let slope: number | null = null;
    let intercept = 0;
    const summaryPath = join(inDir, "critical", "summary.json");
    if (existsSync(summaryPath)) {
      const summary = loadJson(summaryPath) as Record<string, any>;
      if (summary.loglog_fit) {
        slope = Number(summary.loglog_fit.slope);
        intercept = Number(summary.loglog_fit.intercept);
      }
    }
    if (slope === null && Ls.length >= 2) {
      const fit = linearFit(Ls.map(Math.log), means.map(Math.log));
      slope = fit.slope;
      intercept = fit.intercept;
    }
    if (slope !== null && Ls.length >= 2) {
      panel.line(
        Ls,
        Ls.map((L) => Math.exp(intercept + slope! * Math.log(L))),
        { color: "#1f77b4", dash: "5,3" }
      );
      panel.annotate(0.05, 0.1, `best fit slope ${slope.toFixed(2)}`, "#1f77b4");
    }
    panel.line(sizes, sizes.map((L) => Math.PI / (2 * e0ClosedForm(L))), {
      color: "#2ca02c",
    });
    panel.line(sizes, preds, { color: "#d62728" });
    panel.legend(
      [
        { label: "per realization", color: "#9ecae1", marker: true },
        { label: "ensemble mean", color: "#1f77b4", marker: true },
        { label: "π / (2E0)", color: "#2ca02c" },
        { label: "π / (3E0)", color: "#d62728" },
      ],
      0.58,
      0.72
    );
    return { name: "fig7", svg: svgDocument(W, H, [panel.render()]), width: W };
  },
};
