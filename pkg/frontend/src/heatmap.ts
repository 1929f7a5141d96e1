/**
 * Eight-cell matrix heatmap. One row per ground truth, columns ordered as
 * returned, counterfactual cells drawn with a dashed border. Cell shading
 * scales with probability; the exact value rides along in data-value.
 */

import { COUNTERFACTUAL_CELLS, type CellName } from "./types.js";

const ROWS: readonly (readonly CellName[])[] = [
  ["NTP", "CTP", "CFN", "NFN"],
  ["NFP", "CFP", "CTN", "NTN"],
];

export interface HeatmapOptions {
  cellSize?: number;
}

export function buildMatrixHeatmap(
  matrix: Record<CellName, number>,
  opts: HeatmapOptions = {},
): string {
  const size = opts.cellSize ?? 86;
  const labelGutter = 28;
  const width = labelGutter + ROWS[0]!.length * size;
  const height = 18 + ROWS.length * size;

  const max = Math.max(...Object.values(matrix), Number.MIN_VALUE);
  const parts: string[] = [];
  parts.push(
    `<svg class="matrix-heatmap" viewBox="0 0 ${width} ${height}" ` +
    `xmlns="http://www.w3.org/2000/svg" role="img">`,
  );

  const rowLabels = ["GT=T", "GT=F"];
  ROWS.forEach((row, r) => {
    const y = 18 + r * size;
    parts.push(
      `<text class="row-label" x="${labelGutter - 6}" y="${y + size / 2 + 4}" ` +
      `text-anchor="end">${rowLabels[r]}</text>`,
    );
    row.forEach((cell, c) => {
      const x = labelGutter + c * size;
      const value = matrix[cell];
      const opacity = max > 0 ? value / max : 0;
      const cfClass = COUNTERFACTUAL_CELLS.has(cell) ? " counterfactual" : "";
      parts.push(
        `<rect class="cell${cfClass}" data-cell="${cell}" data-value="${String(value)}" ` +
        `x="${x}" y="${y}" width="${size}" height="${size}" ` +
        `fill-opacity="${opacity.toFixed(4)}"/>`,
      );
      parts.push(
        `<text class="cell-name" x="${x + size / 2}" y="${y + size / 2 - 6}" ` +
        `text-anchor="middle">${cell}</text>`,
      );
      parts.push(
        `<text class="cell-value" x="${x + size / 2}" y="${y + size / 2 + 12}" ` +
        `text-anchor="middle">${value.toPrecision(3)}</text>`,
      );
    });
  });

  parts.push("</svg>");
  return parts.join("");
}
