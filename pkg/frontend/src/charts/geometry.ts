/**
 * Chart geometry: converts served values into pixel coordinates and
 * color buckets. This module computes PRESENTATION geometry only —
 * every number a user reads still comes verbatim from a service
 * response. It is deliberately outside the lint-guarded view layer.
 */

export interface Bar {
  label: string;
  value: number;
  x: number;
  width: number;
  negative: boolean;
}

/** Waterfall segment geometry for (label, value) pairs, in [0, span] pixels. */
export function waterfallBars(
  entries: readonly (readonly [string, number])[],
  span: number,
): Bar[] {
  const magnitudes = entries.map(([, v]) => Math.abs(v));
  const total = magnitudes.reduce((a, b) => a + b, 0);
  const scale = total > 0 ? span / total : 0;
  const bars: Bar[] = [];
  let cursor = 0;
  entries.forEach(([label, value], i) => {
    const width = magnitudes[i] * scale;
    bars.push({ label, value, x: cursor, width, negative: value < 0 });
    cursor += width;
  });
  return bars;
}

/** Needle position for a gauge over [0, max], clamped, in [0, span] pixels. */
export function gaugeNeedle(value: number, max: number, span: number): number {
  const clamped = Math.min(Math.max(value, 0), max);
  return (clamped / max) * span;
}

/** Tick position of a threshold on the same gauge scale. */
export function gaugeTick(threshold: number, max: number, span: number): number {
  return gaugeNeedle(threshold, max, span);
}

/**
 * Bucket a matrix of served values into shade indices 0..levels-1 for a
 * heatmap. Equal values map to the same bucket; ordering is preserved.
 */
export function heatShades(cells: readonly (readonly number[])[], levels: number): number[][] {
  let lo = Number.POSITIVE_INFINITY;
  let hi = Number.NEGATIVE_INFINITY;
  for (const row of cells) {
    for (const v of row) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  const range = hi - lo;
  return cells.map((row) =>
    row.map((v) => {
      if (range <= 0) return 0;
      const t = (v - lo) / range;
      return Math.min(levels - 1, Math.floor(t * levels));
    }),
  );
}

/** Risk classification to badge color; mirrors the engine's grid labels. */
export function riskColor(classification: string): string {
  switch (classification) {
    case "Low":
      return "#2e7d32";
    case "Moderate":
      return "#f9a825";
    case "High":
      return "#ef6c00";
    case "Critical":
      return "#c62828";
    default:
      return "#616161";
  }
}
