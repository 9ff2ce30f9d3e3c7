import * as fs from "fs";
import * as path from "path";
import { describe, expect, it } from "vitest";

import { SchemaError, numericColumn, parseArtifactCsv, requireColumns } from "../src/csv";

const FIXTURES = path.join(__dirname, "fixtures");

function readFixture(name: string): string {
  return fs.readFileSync(path.join(FIXTURES, name), "utf8");
}

describe("parseArtifactCsv", () => {
  it("separates banner, metadata and rows", () => {
    const table = parseArtifactCsv(readFixture("gap_map.csv"));
    expect(table.banner).toContain("polpair gap-map");
    expect(table.meta.grid).toBe("129");
    expect(table.columns).toEqual(["kx", "ky", "delta", "lower_edge", "upper_edge"]);
    expect(table.rows).toHaveLength(81);
  });

  it("parses numeric columns", () => {
    const table = parseArtifactCsv(readFixture("gap_map.csv"));
    const deltas = numericColumn(table, "delta");
    expect(deltas).toHaveLength(81);
    expect(Math.max(...deltas)).toBeGreaterThan(1.0);
  });

  it("rejects a file with no data at all", () => {
    expect(() => parseArtifactCsv("# banner only\n# key=value\n")).toThrow(SchemaError);
  });

  it("names the missing columns", () => {
    const table = parseArtifactCsv(readFixture("gap_map.csv"));
    expect(() => requireColumns(table, ["re_eps", "delta"], "scatter")).toThrow(/re_eps/);
  });

  it("flags a header-only file as having no rows", () => {
    const table = parseArtifactCsv("a,b\n");
    expect(() => requireColumns(table, ["a"], "heatmap")).toThrow(/no data rows/);
  });
});
