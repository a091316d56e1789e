import { FigureSpec } from "./common.js";
import { fig3 } from "./fig3.js";
import { fig4 } from "./fig4.js";
import { fig5 } from "./fig5.js";
import { fig6 } from "./fig6.js";
import { fig7 } from "./fig7.js";
import { fig8 } from "./fig8.js";
import { fig9 } from "./fig9.js";
import { fig10 } from "./fig10.js";
import { fig11 } from "./fig11.js";

export const FIGURES: FigureSpec[] = [
  fig3,
  fig4,
  fig5,
  fig6,
  fig7,
  fig8,
  fig9,
  fig10,
  fig11,
];

export function figureByName(name: string): FigureSpec | undefined {
  return FIGURES.find((f) => f.name === name);
}

export type { FigureSpec } from "./common.js";
