import { describe, expect, it } from "vitest";

import {
  CANVAS,
  RADIUS_FROZEN,
  RADIUS_MUTABLE,
  arrowsOf,
  formatSeries,
  renderSvg,
  vertexPosition,
} from "../src/render.js";
import type { FramedQuiver } from "../src/types.js";

const FRAMED_A2: FramedQuiver = {
  n: 2,
  b: [
    [0, 1, 1, 0],
    [-1, 0, 0, 1],
    [-1, 0, 0, 0],
    [0, -1, 0, 0],
  ],
};

describe("layout", () => {
  it("puts mutable vertices on the inner circle", () => {
    for (let i = 0; i < 3; i++) {
      const p = vertexPosition(i, 3);
      const r = Math.hypot(p.x - CANVAS / 2, p.y - CANVAS / 2);
      expect(r).toBeCloseTo(RADIUS_MUTABLE, 6);
    }
  });

  it("puts each frozen partner radially outside its vertex", () => {
    for (let i = 0; i < 3; i++) {
      const inner = vertexPosition(i, 3);
      const outer = vertexPosition(i + 3, 3);
      const r = Math.hypot(outer.x - CANVAS / 2, outer.y - CANVAS / 2);
      expect(r).toBeCloseTo(RADIUS_FROZEN, 6);
      // same angle: the cross product with the center vanishes
      const cx = inner.x - CANVAS / 2;
      const cy = inner.y - CANVAS / 2;
      const dx = outer.x - CANVAS / 2;
      const dy = outer.y - CANVAS / 2;
      expect(cx * dy - cy * dx).toBeCloseTo(0, 6);
    }
  });
});

describe("arrows", () => {
  it("reads positive entries of the exchange matrix", () => {
    expect(arrowsOf(FRAMED_A2)).toEqual([
      { from: 0, to: 1, mult: 1 },
      { from: 0, to: 2, mult: 1 },
      { from: 1, to: 3, mult: 1 },
    ]);
  });
});

describe("svg output", () => {
  it("marks colors, encircles green vertices, dims frozen ones", () => {
    const svg = renderSvg(FRAMED_A2, ["green", "red"]);
    expect(svg).toContain('data-vertex="1"');
    expect(svg).toContain('data-vertex="2"');
    // one encircling ring for the single green vertex
    expect(svg.match(/stroke-width="2.5"/g)).toHaveLength(1);
    expect(svg).toContain('class="vertex frozen" opacity="0.45"');
    expect(svg).toContain("1'");
  });

  it("labels multiplicities greater than one", () => {
    const kronecker: FramedQuiver = {
      n: 2,
      b: [
        [0, 2, 1, 0],
        [-2, 0, 0, 1],
        [-1, 0, 0, 0],
        [0, -1, 0, 0],
      ],
    };
    const svg = renderSvg(kronecker, ["green", "green"]);
    expect(svg).toContain(">2</text>");
  });
});

describe("series formatting", () => {
  it("prints a readable ordered sum", () => {
    const text = formatSeries([
      { exp: [0, 0], coeff: "1" },
      { exp: [1, 0], coeff: "v/(v^2 - 1)" },
    ]);
    expect(text).toBe("1  +  v/(v^2 - 1) · y^(1,0)");
    expect(formatSeries([])).toBe("0");
  });
});
