// Fixed heatmap color scale: five stops from deep blue (best) through
// yellow to red (worst), interpolated linearly over the finite value range.
// Unobservable (null) cells are not colored at all; the map hatches them.

const STOPS: [number, number, number][] = [
  [33, 102, 172],
  [103, 169, 207],
  [253, 219, 199],
  [239, 138, 98],
  [178, 24, 43],
];

export function colorFor(value: number, lo: number, hi: number): string {
  const t = hi > lo ? Math.min(1, Math.max(0, (value - lo) / (hi - lo))) : 0.5;
  const scaled = t * (STOPS.length - 1);
  const idx = Math.min(STOPS.length - 2, Math.floor(scaled));
  const frac = scaled - idx;
  const a = STOPS[idx]!;
  const b = STOPS[idx + 1]!;
  const mix = (i: number) => Math.round(a[i]! + (b[i]! - a[i]!) * frac);
  return `rgb(${mix(0)}, ${mix(1)}, ${mix(2)})`;
}

export function finiteRange(values: (number | null)[][]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const row of values) {
    for (const v of row) {
      if (v === null || !Number.isFinite(v)) continue;
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  return lo <= hi ? [lo, hi] : [0, 1];
}
