/**
 * Figure recipes: pure CSV consumers, no physics. Each kind fixes which sweep
 * columns land on the axes:
 *
 *  - separation_curves: concurrence vs detector separation, one curve per
 *    series value (typically the energy gap).
 *  - horizon_distance_panel: concurrence vs horizon distance of detector A.
 *  - decomposition_panel: P_A, P_B and |X| vs horizon distance on shared axes.
 */

import { writeFileSync } from "node:fs";
import { loadSweepCsv, numeric, SchemaError, type SweepRow, type WarnFn } from "./csv.js";
import { renderSvg, type Series } from "./svg.js";

export const FIGURE_KINDS = [
  "separation_curves",
  "horizon_distance_panel",
  "decomposition_panel",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureRecipe {
  kind: FigureKind;
  /** sweep CSV files; rows from every file are pooled */
  inputs: string[];
  /** column whose distinct values label the curves (or the panel, for the
   * decomposition kind, whose three curves are fixed quantities) */
  seriesColumn: string;
  /** output SVG path */
  output: string;
}

const AXIS_LABEL: Record<string, string> = {
  gap_sigma: "Ωσ",
  dA_over_sigma: "d(horizon, A)/σ",
  dAB_over_sigma: "d(A, B)/σ",
  l_over_sigma: "ℓ/σ",
  mass: "M",
  lambda_tilde: "λ̃",
  delta_phi: "Δφ",
  concurrence: "C/λ̃²",
};

function seriesLabel(column: string, value: string): string {
  const name = AXIS_LABEL[column] ?? column;
  return `${name} = ${value}`;
}

function groupBySeries(
  rows: SweepRow[],
  xColumn: string,
  yColumn: string,
  seriesColumn: string,
): Series[] {
  const groups = new Map<string, Array<[number, number]>>();
  for (const row of rows) {
    const key = (row as Record<string, string>)[seriesColumn];
    if (key === undefined) {
      throw new SchemaError(`referenced column "${seriesColumn}" does not exist`);
    }
    const point: [number, number] = [numeric(row, xColumn), numeric(row, yColumn)];
    const bucket = groups.get(key);
    if (bucket) {
      bucket.push(point);
    } else {
      groups.set(key, [point]);
    }
  }
  const keys = [...groups.keys()].sort((a, b) => Number(a) - Number(b));
  return keys.map((key) => {
    const points = groups.get(key)!;
    points.sort((p, q) => p[0] - q[0]);
    return { label: seriesLabel(seriesColumn, key), points };
  });
}

function buildSeries(recipe: FigureRecipe, rows: SweepRow[]): {
  series: Series[];
  xLabel: string;
  yLabel: string;
  title: string;
} {
  switch (recipe.kind) {
    case "separation_curves":
      return {
        series: groupBySeries(rows, "dAB_over_sigma", "concurrence", recipe.seriesColumn),
        xLabel: AXIS_LABEL.dAB_over_sigma,
        yLabel: AXIS_LABEL.concurrence,
        title: "Harvested concurrence vs detector separation",
      };
    case "horizon_distance_panel":
      return {
        series: groupBySeries(rows, "dA_over_sigma", "concurrence", recipe.seriesColumn),
        xLabel: AXIS_LABEL.dA_over_sigma,
        yLabel: AXIS_LABEL.concurrence,
        title: "Harvested concurrence vs horizon distance",
      };
    case "decomposition_panel": {
      const quantities: Array<[string, string]> = [
        ["P_A", "P_A/λ̃²"],
        ["P_B", "P_B/λ̃²"],
        ["abs_X", "|X|/λ̃²"],
      ];
      const series = quantities.map(([column, label]) => {
        const points = rows
          .map((row): [number, number] => [numeric(row, "dA_over_sigma"), numeric(row, column)])
          .sort((p, q) => p[0] - q[0]);
        return { label, points };
      });
      const tags = new Set(
        rows.map((row) => (row as Record<string, string>)[recipe.seriesColumn]),
      );
      if (tags.has(undefined as unknown as string)) {
        throw new SchemaError(`referenced column "${recipe.seriesColumn}" does not exist`);
      }
      const suffix =
        tags.size === 1
          ? ` (${seriesLabel(recipe.seriesColumn, [...tags][0]!)})`
          : "";
      return {
        series,
        xLabel: AXIS_LABEL.dA_over_sigma,
        yLabel: "per-coupling² matrix elements",
        title: `Probability and correlation decomposition${suffix}`,
      };
    }
  }
}

/** Render one recipe to its SVG file and return the SVG text. */
export function render(recipe: FigureRecipe, warn?: WarnFn): string {
  if (!FIGURE_KINDS.includes(recipe.kind)) {
    throw new SchemaError(`unknown figure kind "${recipe.kind}"`);
  }
  if (recipe.inputs.length === 0) {
    throw new SchemaError("recipe needs at least one input CSV");
  }
  const rows = recipe.inputs.flatMap((path) => loadSweepCsv(path, warn));
  if (rows.length === 0) {
    throw new SchemaError("no plottable rows: every input row is empty or marked as an error");
  }
  const { series, xLabel, yLabel, title } = buildSeries(recipe, rows);
  if (series.length === 0 || series.every((s) => s.points.length === 0)) {
    throw new SchemaError("recipe produced no series");
  }
  const svg = renderSvg(series, xLabel, yLabel, title);
  writeFileSync(recipe.output, svg, "utf8");
  return svg;
}
