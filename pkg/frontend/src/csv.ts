/**
 * Reading of run-directory artifacts: CSV tables with `#`-comment provenance
 * lines and JSON summaries. No physics is computed here — files are taken
 * as-is from the simulation package.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";

export interface Table {
  /** column names from the header row */
  columns: string[];
  /** row-major numeric data */
  rows: number[][];
  /** `#`-prefixed comment lines (provenance), without the marker */
  comments: string[];
}

export class MissingColumnError extends Error {
  constructor(file: string, column: string, present: string[]) {
    super(`${file}: missing column "${column}" (have: ${present.join(", ")})`);
    this.name = "MissingColumnError";
  }
}

export function parseCsv(text: string, name = "<csv>"): Table {
  const comments: string[] = [];
  const lines = text.split("\n").filter((l) => l.trim().length > 0);
  let headerIdx = 0;
  while (headerIdx < lines.length && lines[headerIdx].startsWith("#")) {
    comments.push(lines[headerIdx].slice(1).trim());
    headerIdx += 1;
  }
  if (headerIdx >= lines.length) {
    throw new Error(`${name}: no header row found`);
  }
  const columns = lines[headerIdx].split(",").map((c) => c.trim());
  const rows = lines.slice(headerIdx + 1).map((line, i) => {
    const cells = line.split(",").map(Number);
    if (cells.length !== columns.length || cells.some(Number.isNaN)) {
      throw new Error(`${name}: malformed data row ${i + 1}: ${line}`);
    }
    return cells;
  });
  return { columns, rows, comments };
}

export function readCsv(dir: string, file: string): Table {
  return parseCsv(readFileSync(join(dir, file), "utf8"), file);
}

export function readJson<T = Record<string, unknown>>(
  dir: string,
  file: string,
): T {
  return JSON.parse(readFileSync(join(dir, file), "utf8")) as T;
}

/** Extract one column by name; throws MissingColumnError when absent. */
export function column(table: Table, name: string, file = "<csv>"): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) throw new MissingColumnError(file, name, table.columns);
  return table.rows.map((r) => r[idx]);
}
