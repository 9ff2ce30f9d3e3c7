/**
 * Figure renderers for polpair artifacts. Every renderer returns a
 * complete SVG document string; the color scale always spans exactly
 * the data range (the colorbar carries the extrema), and coordinates
 * missing from a grid (pole-guarded samples) stay blank.
 */

import { normalize, viridisHex } from "./colormap";
import { ArtifactTable, SchemaError, numericColumn, requireColumns } from "./csv";
import { circle, colorbar, fmtNum, rect, svgDocument, text } from "./svg";

export interface RenderOptions {
  x?: string;
  y?: string;
  value?: string;
  title?: string;
}

const WIDTH = 640;
const HEIGHT = 500;
const PLOT = { x: 70, y: 40, w: 460, h: 400 };
const BAR = { x: 560, y: 40, w: 18, h: 400 };

function uniqueSorted(values: number[]): number[] {
  return Array.from(new Set(values)).sort((a, b) => a - b);
}

function minSpacing(sorted: number[]): number {
  let best = Infinity;
  for (let i = 1; i < sorted.length; i += 1) {
    const gap = sorted[i] - sorted[i - 1];
    if (gap > 0 && gap < best) {
      best = gap;
    }
  }
  return Number.isFinite(best) ? best : 1;
}

function frame(xName: string, yName: string, title: string): string {
  const parts = [
    `<rect x="${PLOT.x}" y="${PLOT.y}" width="${PLOT.w}" height="${PLOT.h}" fill="none" stroke="#444"/>`,
    text(PLOT.x + PLOT.w / 2, HEIGHT - 12, xName, "middle", 13),
    `<text x="16" y="${PLOT.y + PLOT.h / 2}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 16 ${PLOT.y + PLOT.h / 2})">${yName}</text>`,
  ];
  if (title) {
    parts.push(text(WIDTH / 2, 22, title, "middle", 14));
  }
  return parts.join("\n");
}

function axisLabels(xMin: number, xMax: number, yMin: number, yMax: number): string {
  return [
    text(PLOT.x, PLOT.y + PLOT.h + 16, fmtNum(xMin), "start"),
    text(PLOT.x + PLOT.w, PLOT.y + PLOT.h + 16, fmtNum(xMax), "end"),
    text(PLOT.x - 6, PLOT.y + PLOT.h, fmtNum(yMin), "end"),
    text(PLOT.x - 6, PLOT.y + 10, fmtNum(yMax), "end"),
  ].join("\n");
}

/** Shared cell-grid renderer behind heatmap, surface and state-grid. */
function renderCellGrid(
  table: ArtifactTable,
  xName: string,
  yName: string,
  valueName: string,
  kind: string,
  title: string
): string {
  requireColumns(table, [xName, yName, valueName], kind);
  const xs = numericColumn(table, xName);
  const ys = numericColumn(table, yName);
  const vals = numericColumn(table, valueName);

  const xTicks = uniqueSorted(xs);
  const yTicks = uniqueSorted(ys);
  const xStep = minSpacing(xTicks);
  const yStep = minSpacing(yTicks);
  const xMin = xTicks[0];
  const xMax = xTicks[xTicks.length - 1] + xStep;
  const yMin = yTicks[0];
  const yMax = yTicks[yTicks.length - 1] + yStep;
  const vMin = Math.min(...vals);
  const vMax = Math.max(...vals);

  const cellW = (PLOT.w * xStep) / (xMax - xMin);
  const cellH = (PLOT.h * yStep) / (yMax - yMin);
  const cells: string[] = [];
  for (let i = 0; i < vals.length; i += 1) {
    const px = PLOT.x + ((xs[i] - xMin) / (xMax - xMin)) * PLOT.w;
    const py = PLOT.y + PLOT.h - ((ys[i] - yMin) / (yMax - yMin)) * PLOT.h - cellH;
    cells.push(rect(px, py, cellW + 0.25, cellH + 0.25, viridisHex(normalize(vals[i], vMin, vMax))));
  }

  const body = [
    cells.join("\n"),
    frame(xName, yName, title),
    axisLabels(xMin, xMax - xStep, yMin, yMax - yStep),
    colorbar(BAR.x, BAR.y, BAR.w, BAR.h, vMin, vMax, valueName),
  ].join("\n");
  return svgDocument(WIDTH, HEIGHT, body);
}

/** Gap-map style heatmap over two swept parameter columns. */
export function renderHeatmap(table: ArtifactTable, opts: RenderOptions = {}): string {
  const valueName = opts.value ?? "delta";
  let xName = opts.x;
  let yName = opts.y;
  if (!xName || !yName) {
    const axes = table.columns.filter(
      (c) => !["delta", "lower_edge", "upper_edge", valueName].includes(c)
    );
    if (axes.length < 2) {
      throw new SchemaError(
        `heatmap needs two sweep axes; file has [${table.columns.join(", ")}] ` +
          "(a single-axis sweep cannot be drawn as a heatmap)"
      );
    }
    xName = xName ?? axes[0];
    yName = yName ?? axes[1];
  }
  return renderCellGrid(table, xName, yName, valueName, "heatmap", opts.title ?? table.banner);
}

/** Continuum energy over the relative-momentum zone (blank where guarded). */
export function renderSurface(table: ArtifactTable, opts: RenderOptions = {}): string {
  return renderCellGrid(
    table,
    opts.x ?? "qx",
    opts.y ?? "qy",
    opts.value ?? "eps",
    "surface",
    opts.title ?? table.banner
  );
}

/** Wavefunction (dx, dy, phi_amp) or pinned-site (x, y, prob) grid. */
export function renderStateGrid(table: ArtifactTable, opts: RenderOptions = {}): string {
  const wavefunction = table.columns.includes("phi_amp");
  const xName = opts.x ?? (wavefunction ? "dx" : "x");
  const yName = opts.y ?? (wavefunction ? "dy" : "y");
  const valueName = opts.value ?? (wavefunction ? "phi_amp" : "prob");
  return renderCellGrid(table, xName, yName, valueName, "state-grid", opts.title ?? table.banner);
}

/** Eigenvalue scatter in the complex plane, colored by localization. */
export function renderScatter(table: ArtifactTable, opts: RenderOptions = {}): string {
  const xName = opts.x ?? "re_eps";
  const yName = opts.y ?? "im_eps";
  const valueName = opts.value ?? "s_degree";
  requireColumns(table, [xName, yName, valueName], "scatter");
  const xs = numericColumn(table, xName);
  const ys = numericColumn(table, yName);
  const vals = numericColumn(table, valueName);

  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = Math.min(...ys);
  const yMax = Math.max(...ys);
  const vMin = Math.min(...vals);
  const vMax = Math.max(...vals);
  const xRange = xMax > xMin ? xMax - xMin : 1;
  const yRange = yMax > yMin ? yMax - yMin : 1;

  const points: string[] = [];
  for (let i = 0; i < vals.length; i += 1) {
    const px = PLOT.x + ((xs[i] - xMin) / xRange) * PLOT.w;
    const py = PLOT.y + PLOT.h - ((ys[i] - yMin) / yRange) * PLOT.h;
    points.push(circle(px, py, 2.5, viridisHex(normalize(vals[i], vMin, vMax))));
  }

  const body = [
    points.join("\n"),
    frame(xName, yName, opts.title ?? table.banner),
    axisLabels(xMin, xMax, yMin, yMax),
    colorbar(BAR.x, BAR.y, BAR.w, BAR.h, vMin, vMax, valueName),
  ].join("\n");
  return svgDocument(WIDTH, HEIGHT, body);
}

export type FigureKind = "heatmap" | "surface" | "scatter" | "state-grid";

export const RENDERERS: Record<FigureKind, (t: ArtifactTable, o?: RenderOptions) => string> = {
  heatmap: renderHeatmap,
  surface: renderSurface,
  scatter: renderScatter,
  "state-grid": renderStateGrid,
};
