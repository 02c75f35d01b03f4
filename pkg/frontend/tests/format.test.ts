import { describe, expect, it } from "vitest";

import {
  clampRating,
  formatPercent,
  formatScore,
  hasOwnRatingComponent,
  roleWeightText,
  swatchTextColor,
} from "../src/format.js";

describe("formatScore", () => {
  it("renders exactly two decimals", () => {
    expect(formatScore(0.85)).toBe("0.85");
    expect(formatScore(1)).toBe("1.00");
    expect(formatScore(0.8439690534)).toBe("0.84");
    expect(formatScore(0.999)).toBe("1.00");
  });
});

describe("clampRating", () => {
  it("quantizes to steps of 0.1 inside [0, 1]", () => {
    expect(clampRating(0.84)).toBeCloseTo(0.8, 12);
    expect(clampRating(0.85)).toBeCloseTo(0.9, 12);
    expect(clampRating(-0.2)).toBe(0);
    expect(clampRating(1.7)).toBe(1);
  });
});

describe("hasOwnRatingComponent", () => {
  it("is false for guest scores", () => {
    expect(hasOwnRatingComponent({
      value: 1, components: { harmony: 1 }, matched_palette_id: 2,
    })).toBe(false);
  });

  it("is true when the single-color term is present", () => {
    expect(hasOwnRatingComponent({
      value: 0.85, components: { harmony: 1, weighted_scp: 0.7 }, matched_palette_id: 2,
    })).toBe(true);
  });
});

describe("misc formatting", () => {
  it("role weights label", () => {
    expect(roleWeightText("dress_costume")).toBe("w=1");
    expect(roleWeightText("accessory")).toBe("w=0.25");
  });

  it("percent", () => {
    expect(formatPercent(0.4)).toBe("40%");
  });

  it("text color flips on light backgrounds", () => {
    expect(swatchTextColor([255, 255, 255])).toBe("#1a1a1a");
    expect(swatchTextColor([10, 10, 10])).toBe("#f5f5f5");
  });
});
