export { FIGURES, figureByName } from "./figures/index.js";
export type { FigureSpec } from "./figures/index.js";
export { writeFigure } from "./render.js";
export { loadTable, column, loadJson, listSizes, SchemaError } from "./csv.js";
export * from "./model.js";
export * from "./stats.js";
