#!/usr/bin/env node
/**
 * figures --in RESULTS_DIR [--only fig3,fig7] --out FIG_DIR
 *
 * Renders SVG + PNG analogs of the analysis figures from the experiment
 * CSV/JSON artifacts.  Without --only, every figure whose inputs exist is
 * rendered and the rest are skipped with a warning; with --only, missing
 * inputs are an error.
 */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { FIGURES, figureByName } from "./figures/index.js";
import { writeFigure } from "./render.js";
import { SchemaError } from "./csv.js";

async function main(): Promise<number> {
  const argv = await yargs(hideBin(process.argv))
    .option("in", {
      type: "string",
      demandOption: true,
      describe: "experiment results directory (contains spectrum/, stats/, ...)",
    })
    .option("out", {
      type: "string",
      demandOption: true,
      describe: "output directory for SVG/PNG files",
    })
    .option("only", {
      type: "string",
      describe: "comma-separated figure names, e.g. fig3,fig7",
    })
    .strict()
    .help()
    .parse();

  const inDir = argv.in;
  const outDir = argv.out;

  let selected;
  if (argv.only) {
    const names = argv.only.split(",").map((s) => s.trim()).filter(Boolean);
    selected = [];
    for (const name of names) {
      const fig = figureByName(name);
      if (!fig) {
        console.error(
          `unknown figure '${name}' (available: ${FIGURES.map((f) => f.name).join(", ")})`
        );
        return 2;
      }
      selected.push(fig);
    }
  } else {
    selected = FIGURES;
  }

  let failures = 0;
  let rendered = 0;
  for (const fig of selected) {
    const inputs = fig.inputs(inDir);
    if (inputs === null) {
      if (argv.only) {
        console.error(`${fig.name}: required inputs not found under ${inDir}`);
        failures += 1;
      } else {
        console.warn(`skipping ${fig.name}: inputs not found under ${inDir}`);
      }
      continue;
    }
    try {
      const paths = writeFigure(outDir, fig.render(inDir));
      rendered += 1;
      console.log(`${fig.name}: ${paths.join(", ")}`);
    } catch (err) {
      failures += 1;
      const kind = err instanceof SchemaError ? "schema error" : "error";
      console.error(`${fig.name}: ${kind}: ${(err as Error).message}`);
    }
  }
  console.log(`rendered ${rendered} figure(s), ${failures} failure(s)`);
  return failures ? 2 : 0;
}

main().then((code) => {
  process.exitCode = code;
});
