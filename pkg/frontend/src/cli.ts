#!/usr/bin/env node
/**
 * polpair-figures: render SVG figures from polpair CSV artifacts.
 *
 *   polpair-figures render --kind heatmap --input gap.csv --out gap.svg
 *   polpair-figures batch --jobs figures.json
 *
 * Exit codes: 0 success, 1 schema/render error, 2 usage error.
 */

import * as fs from "fs";
import * as path from "path";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { SchemaError, parseArtifactCsv } from "./csv";
import { FigureJob, JobError, parseJobs } from "./job";
import { FigureKind, RENDERERS, RenderOptions } from "./render";

function renderOne(job: FigureJob): void {
  const text = fs.readFileSync(job.input, "utf8");
  const table = parseArtifactCsv(text);
  const opts: RenderOptions = { x: job.x, y: job.y, value: job.value, title: job.title };
  const svg = RENDERERS[job.kind](table, opts);
  fs.mkdirSync(path.dirname(path.resolve(job.output)), { recursive: true });
  fs.writeFileSync(job.output, svg);
  process.stdout.write(`${job.kind}: ${job.input} -> ${job.output}\n`);
}

export function main(argv: string[]): number {
  const kinds = Object.keys(RENDERERS);
  const parser = yargs(argv)
    .scriptName("polpair-figures")
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      throw err ?? new UsageError(msg ?? "bad usage");
    })
    .command(
      "render",
      "render one figure from a CSV artifact",
      (y) =>
        y
          .option("kind", { choices: kinds, demandOption: true, type: "string" })
          .option("input", { demandOption: true, type: "string" })
          .option("out", { demandOption: true, type: "string" })
          .option("x", { type: "string" })
          .option("y", { type: "string" })
          .option("value", { type: "string" })
          .option("title", { type: "string" }),
      (args) => {
        renderOne({
          kind: args.kind as FigureKind,
          input: args.input,
          output: args.out,
          x: args.x,
          y: args.y,
          value: args.value,
          title: args.title,
        });
      }
    )
    .command(
      "batch",
      "render every job in a JSON job file",
      (y) => y.option("jobs", { demandOption: true, type: "string" }),
      (args) => {
        const jobs = parseJobs(fs.readFileSync(args.jobs, "utf8"));
        for (const job of jobs) {
          renderOne(job);
        }
      }
    )
    .demandCommand(1, "choose a command: render or batch");

  try {
    parser.parse();
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`usage error: ${err.message}\n`);
      return 2;
    }
    if (err instanceof SchemaError || err instanceof JobError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    if (err instanceof Error && (err as NodeJS.ErrnoException).code === "ENOENT") {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}

class UsageError extends Error {}

if (require.main === module) {
  process.exit(main(hideBin(process.argv)));
}
