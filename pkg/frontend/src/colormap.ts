/**
 * Viridis colormap: perceptually uniform, colorblind-friendly.
 * Anchor table sampled from the reference palette, linearly
 * interpolated in RGB.
 */

const VIRIDIS_ANCHORS: [number, number, number][] = [
  [68, 1, 84],
  [72, 40, 120],
  [62, 74, 137],
  [49, 104, 142],
  [38, 130, 142],
  [31, 158, 137],
  [53, 183, 121],
  [109, 205, 89],
  [180, 222, 44],
  [253, 231, 37],
];

/** Colour for a normalized value t in [0, 1] (clamped), as [r, g, b] bytes. */
export function viridis(t: number): [number, number, number] {
  const clamped = Math.max(0, Math.min(1, t));
  const pos = clamped * (VIRIDIS_ANCHORS.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.min(lo + 1, VIRIDIS_ANCHORS.length - 1);
  const frac = pos - lo;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * frac);
  return [
    mix(VIRIDIS_ANCHORS[lo][0], VIRIDIS_ANCHORS[hi][0]),
    mix(VIRIDIS_ANCHORS[lo][1], VIRIDIS_ANCHORS[hi][1]),
    mix(VIRIDIS_ANCHORS[lo][2], VIRIDIS_ANCHORS[hi][2]),
  ];
}

/** CSS hex string for a normalized value in [0, 1]. */
export function viridisHex(t: number): string {
  const [r, g, b] = viridis(t);
  const hex = (v: number) => v.toString(16).padStart(2, "0");
  return `#${hex(r)}${hex(g)}${hex(b)}`;
}

/**
 * Map a data value onto [0, 1] given the data extrema. A degenerate
 * range (min === max) maps everything to the middle of the scale.
 */
export function normalize(value: number, min: number, max: number): number {
  if (max <= min) {
    return 0.5;
  }
  return (value - min) / (max - min);
}
