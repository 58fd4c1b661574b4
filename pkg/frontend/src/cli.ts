#!/usr/bin/env node
/**
 * Render the figures for one or more run directories:
 *
 *   diracwalk-plots <runDir>... [--out <figureDir>]
 *
 * The experiment type is read from each directory's resolved_config.json;
 * figures land next to the data (or in --out when given).
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { readJson } from "./csv.js";
import { FIGURES } from "./figures.js";

export function renderRunDir(runDir: string, outDir?: string): string[] {
  const config = readJson<{ experiment?: string }>(runDir, "resolved_config.json");
  const experiment = config.experiment;
  if (!experiment || !(experiment in FIGURES)) {
    throw new Error(`${runDir}: unknown experiment "${experiment}" in resolved_config.json`);
  }
  const target = outDir ?? runDir;
  mkdirSync(target, { recursive: true });
  const written: string[] = [];
  for (const fig of FIGURES[experiment]) {
    const path = join(target, fig.name);
    writeFileSync(path, fig.render(runDir), "utf8");
    written.push(path);
  }
  return written;
}

export function main(argv: string[]): number {
  const dirs: string[] = [];
  let out: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--out") {
      out = argv[++i];
      if (!out) {
        console.error("--out requires a directory argument");
        return 2;
      }
    } else {
      dirs.push(argv[i]);
    }
  }
  if (dirs.length === 0) {
    console.error("usage: diracwalk-plots <runDir>... [--out <figureDir>]");
    return 2;
  }
  try {
    for (const dir of dirs) {
      for (const path of renderRunDir(dir, out)) {
        console.log(path);
      }
    }
  } catch (err) {
    console.error(String(err));
    return 1;
  }
  return 0;
}

const isMain = process.argv[1]?.endsWith("cli.js");
if (isMain) {
  process.exit(main(process.argv.slice(2)));
}
