#!/usr/bin/env node
/**
 * Batch figure renderer for btzharvest sweep CSVs.
 *
 *   btzharvest-figures --kind separation_curves \
 *       --input fig1_gap001.csv --input fig1_gap01.csv \
 *       --series-column gap_sigma --output fig1.svg
 */

import { parseArgs } from "node:util";
import { FIGURE_KINDS, render, type FigureKind } from "./figure.js";
import { SchemaError } from "./csv.js";

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        input: { type: "string", multiple: true },
        "series-column": { type: "string" },
        output: { type: "string" },
        help: { type: "boolean", default: false },
      },
      allowPositionals: false,
    });
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 2;
  }
  const values = parsed.values;
  if (values.help) {
    console.log(
      "usage: btzharvest-figures --kind KIND --input CSV [--input CSV ...] " +
        "--series-column COLUMN --output SVG\n" +
        `kinds: ${FIGURE_KINDS.join(", ")}`,
    );
    return 0;
  }
  const missing = ["kind", "input", "series-column", "output"].filter(
    (key) => (values as Record<string, unknown>)[key] === undefined,
  );
  if (missing.length > 0) {
    console.error(`missing required flags: ${missing.map((f) => `--${f}`).join(", ")}`);
    return 2;
  }
  if (!FIGURE_KINDS.includes(values.kind as FigureKind)) {
    console.error(`unknown kind "${values.kind}"; expected one of ${FIGURE_KINDS.join(", ")}`);
    return 2;
  }
  try {
    render({
      kind: values.kind as FigureKind,
      inputs: values.input as string[],
      seriesColumn: values["series-column"] as string,
      output: values.output as string,
    });
    console.log(`wrote ${values.output}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 2;
    }
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
