/**
 * Minimal deterministic SVG plotting kit: linear/log axes, lines, markers,
 * error bands, heatmap cells, colorbars and legends. No external renderer;
 * figures are plain SVG strings so re-rendering the same CSVs reproduces
 * byte-identical output.
 */

const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return "0";
  const s = v.toPrecision(6);
  return String(Number(s));
}

function tickLabel(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e4 || a < 1e-3)) return v.toExponential(0);
  return String(Number(v.toPrecision(4)));
}

export interface Scale {
  map(v: number): number;
  ticks(): number[];
  domain: [number, number];
  isLog: boolean;
}

export function linScale(
  domain: [number, number],
  range: [number, number],
  tickHint = 5
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const map = (v: number) => r0 + ((v - d0) / span) * (r1 - r0);
  const ticks = () => {
    const raw = span / tickHint;
    const pow = Math.pow(10, Math.floor(Math.log10(Math.abs(raw))));
    const step = [1, 2, 5, 10].map((m) => m * pow).find((s) => span / s <= tickHint + 1) ?? pow * 10;
    const out: number[] = [];
    for (let t = Math.ceil(d0 / step) * step; t <= d1 + step * 1e-9; t += step) {
      out.push(Math.abs(t) < step * 1e-9 ? 0 : t);
    }
    return out;
  };
  return { map, ticks, domain, isLog: false };
}

export function logScale(
  domain: [number, number],
  range: [number, number],
  explicitTicks?: number[]
): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const l0 = Math.log(d0);
  const l1 = Math.log(d1);
  const map = (v: number) => r0 + ((Math.log(v) - l0) / (l1 - l0 || 1)) * (r1 - r0);
  const ticks = () => {
    if (explicitTicks) return explicitTicks;
    const out: number[] = [];
    const e0 = Math.floor(Math.log10(d0));
    const e1 = Math.ceil(Math.log10(d1));
    for (let e = e0; e <= e1; e++) {
      for (const m of [1, 2, 5]) {
        const t = m * Math.pow(10, e);
        if (t >= d0 * 0.999 && t <= d1 * 1.001) out.push(t);
      }
    }
    return out;
  };
  return { map, ticks, domain, isLog: true };
}

export interface SeriesStyle {
  color?: string;
  width?: number;
  dash?: string;
  opacity?: number;
}

export interface MarkerStyle extends SeriesStyle {
  r?: number;
  shape?: "circle" | "square";
}

export interface LegendEntry {
  label: string;
  color: string;
  dash?: string;
  marker?: boolean;
}

export interface PanelOpts {
  x: number;
  y: number;
  width: number;
  height: number;
  title?: string;
  xLabel?: string;
  yLabel?: string;
  xScale: Scale;
  yScale: Scale;
}

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export class Panel {
  private els: string[] = [];
  constructor(public readonly opts: PanelOpts) {}

  private px(v: number): number {
    return this.opts.x + this.opts.xScale.map(v);
  }

  private py(v: number): number {
    return this.opts.y + this.opts.height - this.opts.yScale.map(v);
  }

  line(x: number[], y: number[], style: SeriesStyle = {}): void {
    const pts: string[] = [];
    for (let i = 0; i < x.length; i++) {
      if (!Number.isFinite(x[i]) || !Number.isFinite(y[i])) continue;
      pts.push(`${fmt(this.px(x[i]))},${fmt(this.py(y[i]))}`);
    }
    if (pts.length < 2) return;
    const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
    const op = style.opacity !== undefined ? ` opacity="${style.opacity}"` : "";
    this.els.push(
      `<polyline points="${pts.join(" ")}" fill="none" stroke="${style.color ?? "#000"}" stroke-width="${style.width ?? 1.5}"${dash}${op}/>`
    );
  }

  scatter(x: number[], y: number[], style: MarkerStyle = {}): void {
    const r = style.r ?? 2.5;
    const op = style.opacity !== undefined ? ` opacity="${style.opacity}"` : "";
    for (let i = 0; i < x.length; i++) {
      if (!Number.isFinite(x[i]) || !Number.isFinite(y[i])) continue;
      const cx = this.px(x[i]);
      const cy = this.py(y[i]);
      if (style.shape === "square") {
        this.els.push(
          `<rect x="${fmt(cx - r)}" y="${fmt(cy - r)}" width="${fmt(2 * r)}" height="${fmt(2 * r)}" fill="${style.color ?? "#000"}"${op}/>`
        );
      } else {
        this.els.push(
          `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${r}" fill="${style.color ?? "#000"}"${op}/>`
        );
      }
    }
  }

  /** Per-point colored scatter (e.g. entropy coloring). */
  coloredScatter(
    x: number[],
    y: number[],
    colors: string[],
    r = 1.6
  ): void {
    for (let i = 0; i < x.length; i++) {
      if (!Number.isFinite(x[i]) || !Number.isFinite(y[i])) continue;
      this.els.push(
        `<circle cx="${fmt(this.px(x[i]))}" cy="${fmt(this.py(y[i]))}" r="${r}" fill="${colors[i]}"/>`
      );
    }
  }

  band(x: number[], lo: number[], hi: number[], color: string, opacity = 0.25): void {
    const fwd: string[] = [];
    const bwd: string[] = [];
    for (let i = 0; i < x.length; i++) {
      if (![x[i], lo[i], hi[i]].every(Number.isFinite)) continue;
      fwd.push(`${fmt(this.px(x[i]))},${fmt(this.py(hi[i]))}`);
      bwd.push(`${fmt(this.px(x[i]))},${fmt(this.py(lo[i]))}`);
    }
    if (fwd.length < 2) return;
    this.els.push(
      `<polygon points="${fwd.concat(bwd.reverse()).join(" ")}" fill="${color}" opacity="${opacity}"/>`
    );
  }

  errorBars(x: number[], y: number[], err: number[], style: SeriesStyle = {}): void {
    const color = style.color ?? "#000";
    for (let i = 0; i < x.length; i++) {
      if (![x[i], y[i], err[i]].every(Number.isFinite)) continue;
      const cx = this.px(x[i]);
      this.els.push(
        `<line x1="${fmt(cx)}" y1="${fmt(this.py(y[i] - err[i]))}" x2="${fmt(cx)}" y2="${fmt(this.py(y[i] + err[i]))}" stroke="${color}" stroke-width="1"/>`
      );
    }
  }

  /** Matrix heatmap filling the whole panel; values in [0, vmax]. */
  heatmap(matrix: number[][], vmax: number, colormap: (t: number) => string): void {
    const nr = matrix.length;
    const nc = matrix[0]?.length ?? 0;
    if (!nr || !nc) return;
    const cw = this.opts.width / nc;
    const ch = this.opts.height / nr;
    for (let i = 0; i < nr; i++) {
      for (let j = 0; j < nc; j++) {
        const t = Math.max(0, Math.min(1, matrix[i][j] / vmax));
        this.els.push(
          `<rect x="${fmt(this.opts.x + j * cw)}" y="${fmt(this.opts.y + i * ch)}" width="${fmt(cw + 0.5)}" height="${fmt(ch + 0.5)}" fill="${colormap(t)}"/>`
        );
      }
    }
  }

  hLine(value: number, style: SeriesStyle = {}): void {
    const yPix = this.py(value);
    const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
    this.els.push(
      `<line x1="${fmt(this.opts.x)}" y1="${fmt(yPix)}" x2="${fmt(this.opts.x + this.opts.width)}" y2="${fmt(yPix)}" stroke="${style.color ?? "#888"}" stroke-width="${style.width ?? 1}"${dash}/>`
    );
  }

  vLine(value: number, style: SeriesStyle = {}): void {
    const xPix = this.px(value);
    const dash = style.dash ? ` stroke-dasharray="${style.dash}"` : "";
    this.els.push(
      `<line x1="${fmt(xPix)}" y1="${fmt(this.opts.y)}" x2="${fmt(xPix)}" y2="${fmt(this.opts.y + this.opts.height)}" stroke="${style.color ?? "#888"}" stroke-width="${style.width ?? 1}"${dash}/>`
    );
  }

  annotate(xFrac: number, yFrac: number, text: string, color = "#333"): void {
    const xPix = this.opts.x + xFrac * this.opts.width;
    const yPix = this.opts.y + yFrac * this.opts.height;
    this.els.push(
      `<text x="${fmt(xPix)}" y="${fmt(yPix)}" font-size="11" fill="${color}" ${FONT}>${esc(text)}</text>`
    );
  }

  legend(entries: LegendEntry[], xFrac = 0.62, yFrac = 0.06): void {
    let yPix = this.opts.y + yFrac * this.opts.height + 6;
    const xPix = this.opts.x + xFrac * this.opts.width;
    for (const e of entries) {
      if (e.marker) {
        this.els.push(`<circle cx="${fmt(xPix + 9)}" cy="${fmt(yPix - 3)}" r="3" fill="${e.color}"/>`);
      } else {
        const dash = e.dash ? ` stroke-dasharray="${e.dash}"` : "";
        this.els.push(
          `<line x1="${fmt(xPix)}" y1="${fmt(yPix - 3)}" x2="${fmt(xPix + 18)}" y2="${fmt(yPix - 3)}" stroke="${e.color}" stroke-width="2"${dash}/>`
        );
      }
      this.els.push(
        `<text x="${fmt(xPix + 23)}" y="${fmt(yPix)}" font-size="10" fill="#222" ${FONT}>${esc(e.label)}</text>`
      );
      yPix += 14;
    }
  }

  private axes(): string[] {
    const o = this.opts;
    const out: string[] = [];
    out.push(
      `<rect x="${fmt(o.x)}" y="${fmt(o.y)}" width="${fmt(o.width)}" height="${fmt(o.height)}" fill="none" stroke="#333" stroke-width="1"/>`
    );
    for (const t of o.xScale.ticks()) {
      const xPix = o.x + o.xScale.map(t);
      if (xPix < o.x - 0.5 || xPix > o.x + o.width + 0.5) continue;
      out.push(
        `<line x1="${fmt(xPix)}" y1="${fmt(o.y + o.height)}" x2="${fmt(xPix)}" y2="${fmt(o.y + o.height + 4)}" stroke="#333"/>`,
        `<text x="${fmt(xPix)}" y="${fmt(o.y + o.height + 15)}" font-size="10" text-anchor="middle" fill="#222" ${FONT}>${tickLabel(t)}</text>`
      );
    }
    for (const t of o.yScale.ticks()) {
      const yPix = o.y + o.height - o.yScale.map(t);
      if (yPix < o.y - 0.5 || yPix > o.y + o.height + 0.5) continue;
      out.push(
        `<line x1="${fmt(o.x - 4)}" y1="${fmt(yPix)}" x2="${fmt(o.x)}" y2="${fmt(yPix)}" stroke="#333"/>`,
        `<text x="${fmt(o.x - 6)}" y="${fmt(yPix + 3)}" font-size="10" text-anchor="end" fill="#222" ${FONT}>${tickLabel(t)}</text>`
      );
    }
    if (o.title) {
      out.push(
        `<text x="${fmt(o.x + o.width / 2)}" y="${fmt(o.y - 6)}" font-size="12" text-anchor="middle" fill="#111" ${FONT}>${esc(o.title)}</text>`
      );
    }
    if (o.xLabel) {
      out.push(
        `<text x="${fmt(o.x + o.width / 2)}" y="${fmt(o.y + o.height + 30)}" font-size="11" text-anchor="middle" fill="#111" ${FONT}>${esc(o.xLabel)}</text>`
      );
    }
    if (o.yLabel) {
      const xPix = o.x - 38;
      const yPix = o.y + o.height / 2;
      out.push(
        `<text x="${fmt(xPix)}" y="${fmt(yPix)}" font-size="11" text-anchor="middle" fill="#111" transform="rotate(-90 ${fmt(xPix)} ${fmt(yPix)})" ${FONT}>${esc(o.xLabel ? o.yLabel : o.yLabel)}</text>`
      );
    }
    return out;
  }

  render(): string {
    return this.axes().concat(this.els).join("\n");
  }
}

/** Perceptual colormap (viridis anchor interpolation). */
export function viridis(t: number): string {
  const anchors: [number, number, number][] = [
    [68, 1, 84],
    [59, 82, 139],
    [33, 145, 140],
    [94, 201, 98],
    [253, 231, 37],
  ];
  const x = Math.max(0, Math.min(1, t)) * (anchors.length - 1);
  const i = Math.min(anchors.length - 2, Math.floor(x));
  const f = x - i;
  const c = anchors[i].map((a, k) => Math.round(a + f * (anchors[i + 1][k] - a)));
  return `rgb(${c[0]},${c[1]},${c[2]})`;
}

export function colorbar(
  x: number,
  y: number,
  width: number,
  height: number,
  colormap: (t: number) => string,
  label: string,
  vmin: number,
  vmax: number
): string {
  const steps = 32;
  const out: string[] = [];
  for (let i = 0; i < steps; i++) {
    const t = i / (steps - 1);
    out.push(
      `<rect x="${fmt(x)}" y="${fmt(y + height * (1 - (i + 1) / steps))}" width="${fmt(width)}" height="${fmt(height / steps + 0.5)}" fill="${colormap(t)}"/>`
    );
  }
  out.push(
    `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(width)}" height="${fmt(height)}" fill="none" stroke="#333"/>`,
    `<text x="${fmt(x + width + 4)}" y="${fmt(y + height + 3)}" font-size="9" fill="#222" ${FONT}>${tickLabel(vmin)}</text>`,
    `<text x="${fmt(x + width + 4)}" y="${fmt(y + 8)}" font-size="9" fill="#222" ${FONT}>${tickLabel(vmax)}</text>`,
    `<text x="${fmt(x + width / 2)}" y="${fmt(y - 6)}" font-size="10" text-anchor="middle" fill="#111" ${FONT}>${esc(label)}</text>`
  );
  return out.join("\n");
}

export function svgDocument(
  width: number,
  height: number,
  body: string[]
): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="#ffffff"/>`,
    ...body,
    "</svg>",
  ].join("\n");
}

/** A qualitative cycle for per-delta / per-size series. */
export const SERIES_COLORS = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];
