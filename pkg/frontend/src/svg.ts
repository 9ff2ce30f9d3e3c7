/**
 * Minimal SVG string building: enough for heatmaps, scatters and a
 * labelled colorbar. Pure string work, so identical inputs give
 * byte-identical images.
 */

import { viridisHex } from "./colormap";

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Deterministic numeric label: up to 6 significant digits, no noise. */
export function fmtNum(value: number): string {
  if (value === 0) {
    return "0";
  }
  return String(Number(value.toPrecision(6)));
}

export function rect(
  x: number,
  y: number,
  w: number,
  h: number,
  fill: string,
  extra = ""
): string {
  return `<rect x="${fmtNum(x)}" y="${fmtNum(y)}" width="${fmtNum(w)}" height="${fmtNum(
    h
  )}" fill="${fill}"${extra ? " " + extra : ""}/>`;
}

export function circle(cx: number, cy: number, r: number, fill: string): string {
  return `<circle cx="${fmtNum(cx)}" cy="${fmtNum(cy)}" r="${fmtNum(r)}" fill="${fill}"/>`;
}

export function text(
  x: number,
  y: number,
  content: string,
  anchor: "start" | "middle" | "end" = "start",
  size = 11
): string {
  return `<text x="${fmtNum(x)}" y="${fmtNum(y)}" font-family="sans-serif" font-size="${size}" text-anchor="${anchor}">${esc(
    content
  )}</text>`;
}

/**
 * Vertical colorbar with min/max tick labels equal to the data extrema.
 * The group carries data-min/data-max attributes with the exact values
 * so consumers (and tests) need not parse the labels.
 */
export function colorbar(
  x: number,
  y: number,
  width: number,
  height: number,
  min: number,
  max: number,
  title = ""
): string {
  const steps = 64;
  const parts: string[] = [
    `<g class="colorbar" data-min="${esc(String(min))}" data-max="${esc(String(max))}">`,
  ];
  for (let i = 0; i < steps; i += 1) {
    const t0 = i / steps;
    const cellY = y + height - (i + 1) * (height / steps);
    parts.push(rect(x, cellY, width, height / steps + 0.5, viridisHex(t0)));
  }
  parts.push(text(x + width + 4, y + height, fmtNum(min), "start"));
  parts.push(text(x + width + 4, y + 9, fmtNum(max), "start"));
  if (title) {
    parts.push(text(x + width / 2, y - 6, title, "middle"));
  }
  parts.push("</g>");
  return parts.join("\n");
}

export function svgDocument(width: number, height: number, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`,
    body,
    "</svg>",
    "",
  ].join("\n");
}
