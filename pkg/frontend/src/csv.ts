/**
 * Reader for polpair CSV artifacts: '#' comment lines carry the
 * generating configuration, then one header row and numeric data rows.
 */

import Papa from "papaparse";

export class SchemaError extends Error {}

export interface ArtifactTable {
  /** First comment line (artifact + version banner), without the '#'. */
  banner: string;
  /** key=value pairs from the remaining comment lines. */
  meta: Record<string, string>;
  columns: string[];
  rows: Record<string, string>[];
}

/** Parse an artifact CSV text into its banner, metadata and rows. */
export function parseArtifactCsv(text: string): ArtifactTable {
  const lines = text.split(/\r?\n/);
  const comments: string[] = [];
  const dataLines: string[] = [];
  for (const line of lines) {
    if (line.startsWith("#")) {
      comments.push(line.slice(1).trim());
    } else if (line.trim().length > 0) {
      dataLines.push(line);
    }
  }
  const banner = comments.length > 0 ? comments[0] : "";
  const meta: Record<string, string> = {};
  for (const comment of comments.slice(1)) {
    const eq = comment.indexOf("=");
    if (eq > 0) {
      meta[comment.slice(0, eq)] = comment.slice(eq + 1);
    }
  }
  if (dataLines.length === 0) {
    throw new SchemaError("no header row: the file has no data at all");
  }
  const parsed = Papa.parse<Record<string, string>>(dataLines.join("\n"), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`CSV parse failed: ${parsed.errors[0].message}`);
  }
  const columns = (parsed.meta.fields ?? []).map((f) => f.trim());
  return { banner, meta, columns, rows: parsed.data };
}

/**
 * Check that every named column exists and the table has rows; throws a
 * SchemaError naming exactly what is missing.
 */
export function requireColumns(table: ArtifactTable, names: string[], kind: string): void {
  const missing = names.filter((n) => !table.columns.includes(n));
  if (missing.length > 0) {
    throw new SchemaError(
      `${kind} needs column(s) [${missing.join(", ")}]; file has [${table.columns.join(", ")}]`
    );
  }
  if (table.rows.length === 0) {
    throw new SchemaError(`${kind}: the file has no data rows`);
  }
}

/** Numeric values of one column; non-numeric entries are a schema error. */
export function numericColumn(table: ArtifactTable, name: string): number[] {
  return table.rows.map((row, index) => {
    const value = Number(row[name]);
    if (!Number.isFinite(value)) {
      throw new SchemaError(`column ${name}, row ${index}: not a finite number (${row[name]})`);
    }
    return value;
  });
}
