import { describe, expect, it } from "vitest";
import {
  mean,
  variance,
  sem,
  linearFit,
  originSlope,
  histogram,
} from "../src/stats.js";

describe("basic aggregates", () => {
  it("mean and sample variance", () => {
    expect(mean([1, 2, 3])).toBe(2);
    expect(variance([1, 2, 3])).toBe(1);
    expect(sem([2, 2, 2, 2])).toBe(0);
  });
});

describe("fits", () => {
  it("recovers an exact affine law", () => {
    const x = [1, 2, 3, 4];
    const y = x.map((v) => 3 * v - 1);
    const fit = linearFit(x, y);
    expect(fit.slope).toBeCloseTo(3, 12);
    expect(fit.intercept).toBeCloseTo(-1, 12);
  });

  it("recovers a through-origin slope", () => {
    const x = [1, 2, 5];
    expect(originSlope(x, x.map((v) => 0.7 * v))).toBeCloseTo(0.7, 12);
  });
});

describe("histogram", () => {
  it("integrates to one over the covered range", () => {
    const values = Array.from({ length: 1000 }, (_, i) => (i / 1000) * 2 - 1);
    const h = histogram(values, 20, -1, 1);
    const total = h.density.reduce((a, b) => a + b, 0) * (2 / 20);
    expect(total).toBeCloseTo(1, 6);
    expect(h.centers[0]).toBeCloseTo(-0.95, 12);
  });
});
