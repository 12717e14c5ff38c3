export { loadSweepCsv, numeric, SchemaError, SWEEP_COLUMNS } from "./csv.js";
export type { SweepRow, WarnFn } from "./csv.js";
export { FIGURE_KINDS, render } from "./figure.js";
export type { FigureKind, FigureRecipe } from "./figure.js";
export { renderSvg, PALETTE } from "./svg.js";
export type { Series } from "./svg.js";
export { main } from "./cli.js";
