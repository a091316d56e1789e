/**
 * Schema-checked loading of the experiment CSV/JSON artifacts.
 *
 * Figures never recompute physics; they consume the persisted files and
 * fail fast (naming the column) when a schema does not match.
 */

import { readFileSync, readdirSync, existsSync } from "fs";
import { join } from "path";
import Papa from "papaparse";

export type Cell = number | string | boolean | null;

export interface Table {
  path: string;
  columns: string[];
  rows: Record<string, Cell>[];
}

export class SchemaError extends Error {}

export function loadTable(path: string, required: string[]): Table {
  const text = readFileSync(path, "utf-8");
  const parsed = Papa.parse<Record<string, Cell>>(text.trim(), {
    header: true,
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  const columns = parsed.meta.fields ?? [];
  for (const col of required) {
    if (!columns.includes(col)) {
      throw new SchemaError(`${path}: missing required column '${col}'`);
    }
  }
  return { path, columns, rows: parsed.data };
}

export function column(table: Table, name: string): number[] {
  if (!table.columns.includes(name)) {
    throw new SchemaError(`${table.path}: missing required column '${name}'`);
  }
  return table.rows.map((r) => Number(r[name]));
}

export function loadJson(path: string): Record<string, unknown> {
  return JSON.parse(readFileSync(path, "utf-8"));
}

/** Numeric per-size subdirectories of an experiment directory, ascending. */
export function listSizes(dir: string): number[] {
  if (!existsSync(dir)) return [];
  return readdirSync(dir, { withFileTypes: true })
    .filter((e) => e.isDirectory() && /^\d+$/.test(e.name))
    .map((e) => Number(e.name))
    .sort((a, b) => a - b);
}

/** Path of a per-size artifact, or null when the size directory lacks it. */
export function sizeArtifact(
  dir: string,
  size: number,
  file: string
): string | null {
  const p = join(dir, String(size), file);
  return existsSync(p) ? p : null;
}
