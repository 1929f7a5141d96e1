import { describe, expect, it } from "vitest";

import { buildMatrixHeatmap } from "../src/heatmap.js";
import { CELL_ORDER, COUNTERFACTUAL_CELLS, type CellName } from "../src/types.js";
import type { SimulateResponse } from "../src/types.js";
import { fixture } from "./helpers.js";

const matrix = fixture<SimulateResponse>("ui_response.json").result.matrix;

describe("buildMatrixHeatmap", () => {
  const svg = buildMatrixHeatmap(matrix);

  it("renders all eight cells", () => {
    for (const cell of CELL_ORDER) {
      expect(svg).toContain(`data-cell="${cell}"`);
    }
    expect(svg.match(/<rect/g)).toHaveLength(8);
  });

  it("marks exactly the counterfactual cells", () => {
    for (const cell of CELL_ORDER) {
      const match = svg.match(new RegExp(`<rect class="([^"]*)" data-cell="${cell}"`));
      expect(match).not.toBeNull();
      const classes = (match as RegExpMatchArray)[1] as string;
      if (COUNTERFACTUAL_CELLS.has(cell)) {
        expect(classes).toContain("counterfactual");
      } else {
        expect(classes).not.toContain("counterfactual");
      }
    }
  });

  it("embeds each probability exactly in data-value", () => {
    for (const cell of CELL_ORDER) {
      const match = svg.match(new RegExp(`data-cell="${cell}" data-value="([^"]*)"`));
      expect(match).not.toBeNull();
      const text = (match as RegExpMatchArray)[1] as string;
      expect(Number(text)).toBe(matrix[cell]);
      expect(text).toBe(String(matrix[cell]));
    }
  });

  it("scales shading to the largest cell", () => {
    const largest = CELL_ORDER.reduce((a, b) => (matrix[a] >= matrix[b] ? a : b));
    const match = svg.match(
      new RegExp(`data-cell="${largest}"[^/]*fill-opacity="([^"]*)"`),
    );
    expect(match).not.toBeNull();
    expect(Number((match as RegExpMatchArray)[1])).toBeCloseTo(1, 6);
  });

  it("labels rows by ground truth", () => {
    expect(svg).toContain("GT=T");
    expect(svg).toContain("GT=F");
  });

  it("handles an all-zero matrix without dividing by zero", () => {
    const zero = Object.fromEntries(CELL_ORDER.map((c) => [c, 0])) as Record<CellName, number>;
    const blank = buildMatrixHeatmap(zero);
    expect(blank).toContain('fill-opacity="0.0000"');
    expect(blank).not.toContain("NaN");
  });
});
