/**
 * Control-handle ordering: the four longitudes must stay strictly
 * increasing with a practical separation floor, including across the wrap
 * from the last handle back to the first (the sphere is periodic).
 */

export const MIN_SEPARATION_DEG = 0.5;

/**
 * Clamp a proposed longitude for handle `index` so it cannot cross its
 * neighbors.  Longitudes are in [-180, 180]; neighbors wrap around the
 * dateline for the first and last handle.
 */
export function clampLongitude(
  lons: readonly number[],
  index: number,
  proposed: number,
  minSep: number = MIN_SEPARATION_DEG,
): number {
  const n = lons.length;
  const below = index > 0 ? lons[index - 1] + minSep : lons[n - 1] - 360 + minSep;
  const above = index < n - 1 ? lons[index + 1] - minSep : lons[0] + 360 - minSep;
  const lo = Math.max(below, -180);
  const hi = Math.min(above, 180);
  return Math.min(Math.max(proposed, lo), hi);
}

export function isStrictlyOrdered(
  lons: readonly number[],
  minSep: number = MIN_SEPARATION_DEG,
): boolean {
  for (let i = 1; i < lons.length; i++) {
    if (lons[i] - lons[i - 1] < minSep) return false;
  }
  return lons[0] + 360 - lons[lons.length - 1] >= minSep;
}
