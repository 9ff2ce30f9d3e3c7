/**
 * Figure job descriptions: a JSON file holding one job object or an
 * array of them, each naming the figure kind, the input artifact and
 * the output image path.
 */

import { FigureKind, RENDERERS } from "./render";

export interface FigureJob {
  kind: FigureKind;
  input: string;
  output: string;
  x?: string;
  y?: string;
  value?: string;
  title?: string;
}

export class JobError extends Error {}

function checkJob(raw: unknown, index: number): FigureJob {
  if (typeof raw !== "object" || raw === null) {
    throw new JobError(`job ${index}: expected an object`);
  }
  const job = raw as Record<string, unknown>;
  const kind = job.kind;
  if (typeof kind !== "string" || !(kind in RENDERERS)) {
    throw new JobError(
      `job ${index}: kind must be one of ${Object.keys(RENDERERS).join(", ")}, got ${JSON.stringify(
        kind
      )}`
    );
  }
  for (const field of ["input", "output"]) {
    if (typeof job[field] !== "string" || (job[field] as string).length === 0) {
      throw new JobError(`job ${index}: missing required string field "${field}"`);
    }
  }
  for (const field of ["x", "y", "value", "title"]) {
    if (field in job && typeof job[field] !== "string") {
      throw new JobError(`job ${index}: field "${field}" must be a string`);
    }
  }
  return job as unknown as FigureJob;
}

/** Parse and validate a job file's JSON text. */
export function parseJobs(jsonText: string): FigureJob[] {
  let parsed: unknown;
  try {
    parsed = JSON.parse(jsonText);
  } catch (err) {
    throw new JobError(`job file is not valid JSON: ${(err as Error).message}`);
  }
  const list = Array.isArray(parsed) ? parsed : [parsed];
  if (list.length === 0) {
    throw new JobError("job file holds no jobs");
  }
  return list.map((raw, index) => checkJob(raw, index));
}
