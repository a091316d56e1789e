/** Writes each figure as SVG plus a rasterized PNG at 2x width. */

import { writeFileSync, mkdirSync } from "fs";
import { join } from "path";
import { Resvg } from "@resvg/resvg-js";

export interface RenderedFigure {
  name: string;
  svg: string;
  width: number;
}

export function writeFigure(outDir: string, fig: RenderedFigure): string[] {
  mkdirSync(outDir, { recursive: true });
  const svgPath = join(outDir, `${fig.name}.svg`);
  const pngPath = join(outDir, `${fig.name}.png`);
  writeFileSync(svgPath, fig.svg);
  const png = new Resvg(fig.svg, {
    fitTo: { mode: "width", value: fig.width * 2 },
  }).render();
  writeFileSync(pngPath, png.asPng());
  return [svgPath, pngPath];
}
