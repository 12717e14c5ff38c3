/**
 * Loader for the sweep CSV schema emitted by the btzharvest CLI.
 *
 * One row per grid point; rows whose status is not "ok" carry NaN payloads
 * and are skipped (with a warning) rather than plotted.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export const SWEEP_COLUMNS = [
  "l_over_sigma",
  "mass",
  "zeta",
  "gap_sigma",
  "dA_over_sigma",
  "dAB_over_sigma",
  "delta_phi",
  "lambda_tilde",
  "P_A",
  "P_B",
  "re_X",
  "im_X",
  "abs_X",
  "concurrence",
  "negativity",
  "n_terms_used",
  "est_error",
  "status",
] as const;

export type SweepColumn = (typeof SWEEP_COLUMNS)[number];

export type SweepRow = Record<SweepColumn, string>;

export class SchemaError extends Error {}

export type WarnFn = (message: string) => void;

/** Parse one CSV file, enforce the schema, and drop marked error rows. */
export function loadSweepCsv(
  path: string,
  warn: WarnFn = (m) => console.warn(m),
): SweepRow[] {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`${path}: malformed CSV (${first.message})`);
  }
  const header = parsed.meta.fields ?? [];
  for (const column of SWEEP_COLUMNS) {
    if (!header.includes(column)) {
      throw new SchemaError(`${path}: missing required column "${column}"`);
    }
  }
  const rows: SweepRow[] = [];
  for (const [index, raw] of parsed.data.entries()) {
    if (raw.status !== "ok") {
      warn(`${path}: skipping row ${index + 1} with status "${raw.status}"`);
      continue;
    }
    rows.push(raw as SweepRow);
  }
  return rows;
}

/** Numeric accessor with an explicit column-name failure mode. */
export function numeric(row: SweepRow, column: string): number {
  const cell = (row as Record<string, string>)[column];
  if (cell === undefined) {
    throw new SchemaError(`referenced column "${column}" does not exist`);
  }
  const value = Number(cell);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`column "${column}" holds non-numeric cell "${cell}"`);
  }
  return value;
}
