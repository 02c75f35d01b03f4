import { PreferenceScore, ROLE_WEIGHTS, Role } from "./api.js";

/** Scores are displayed with exactly two decimals, straight off the API value. */
export function formatScore(value: number): string {
  return value.toFixed(2);
}

export function formatPercent(value: number): string {
  return `${Math.round(value * 100)}%`;
}

export function roleWeightText(role: Role): string {
  return `w=${ROLE_WEIGHTS[role]}`;
}

/** The single-color component is absent for guests and must stay hidden. */
export function hasOwnRatingComponent(score: PreferenceScore): boolean {
  return score.components.weighted_scp !== undefined;
}

export function swatchTextColor(rgb: [number, number, number]): string {
  const [r, g, b] = rgb;
  const luma = 0.299 * r + 0.587 * g + 0.114 * b;
  return luma > 140 ? "#1a1a1a" : "#f5f5f5";
}

/** Ratings move on a 0.0 to 1.0 scale in steps of 0.1. */
export function clampRating(value: number): number {
  const stepped = Math.round(value * 10) / 10;
  return Math.min(1, Math.max(0, stepped));
}
