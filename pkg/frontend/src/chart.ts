/**
 * Sweep chart: the three relative EU series against the swept parameter,
 * rendered to a standalone SVG string. Values are plotted exactly as the
 * service returned them (each element also carries its raw numbers in a
 * data-values attribute); the only arithmetic here is the pixel transform.
 * The zero line is the unaided baseline.
 */

import type { SweepPayload } from "./types.js";

export interface SweepSeries {
  label: string;
  color: string;
  values: number[];
  outcome: number[];
  counter: number[];
  usage: number[];
}

export function sweepSeriesFromPayload(
  label: string,
  color: string,
  sweep: SweepPayload,
): SweepSeries {
  return {
    label,
    color,
    values: [...sweep.values],
    outcome: [...sweep.relative_outcome_eu],
    counter: [...sweep.relative_counter_eu],
    usage: [...sweep.relative_usage_eu],
  };
}

export interface ChartOptions {
  width?: number;
  height?: number;
  padding?: number;
}

const METRIC_KEYS = ["outcome", "counter", "usage"] as const;
type MetricKey = (typeof METRIC_KEYS)[number];

// visual identity per metric; series are told apart by color
const METRIC_DASH: Record<MetricKey, string> = {
  outcome: "6 3",
  counter: "2 3",
  usage: "",
};

const METRIC_LABEL: Record<MetricKey, string> = {
  outcome: "rel_outcome_eu",
  counter: "rel_counter_eu",
  usage: "rel_usage_eu",
};

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmtTick(v: number): string {
  const rounded = Number(v.toPrecision(4));
  return String(rounded);
}

export function buildSweepChart(
  seriesList: SweepSeries[],
  paramLabel: string,
  opts: ChartOptions = {},
): string {
  const width = opts.width ?? 640;
  const height = opts.height ?? 360;
  const pad = opts.padding ?? 46;

  const nonEmpty = seriesList.filter((s) => s.values.length > 0);
  if (nonEmpty.length === 0) {
    return (
      `<svg class="sweep-chart empty" viewBox="0 0 ${width} ${height}" ` +
      `xmlns="http://www.w3.org/2000/svg" role="img">` +
      `<text x="${width / 2}" y="${height / 2}" text-anchor="middle" class="empty-note">` +
      `no sweep results yet</text></svg>`
    );
  }

  const xs = nonEmpty.flatMap((s) => s.values);
  const ys = nonEmpty.flatMap((s) => [...s.outcome, ...s.counter, ...s.usage, 0]);
  let xMin = Math.min(...xs);
  let xMax = Math.max(...xs);
  if (xMin === xMax) {
    xMin -= 0.5;
    xMax += 0.5;
  }
  let yMin = Math.min(...ys);
  let yMax = Math.max(...ys);
  const ySpan = yMax - yMin || 1;
  yMin -= ySpan * 0.05;
  yMax += ySpan * 0.05;

  const toX = (v: number): number =>
    pad + ((v - xMin) / (xMax - xMin)) * (width - 2 * pad);
  const toY = (v: number): number =>
    height - pad - ((v - yMin) / (yMax - yMin)) * (height - 2 * pad);

  const parts: string[] = [];
  parts.push(
    `<svg class="sweep-chart" viewBox="0 0 ${width} ${height}" ` +
    `xmlns="http://www.w3.org/2000/svg" role="img">`,
  );

  // axes and the unaided baseline at zero
  parts.push(
    `<line class="axis" x1="${pad}" y1="${height - pad}" x2="${width - pad}" ` +
    `y2="${height - pad}"/>`,
  );
  parts.push(`<line class="axis" x1="${pad}" y1="${pad}" x2="${pad}" y2="${height - pad}"/>`);
  const zeroY = toY(0);
  parts.push(
    `<line class="baseline" x1="${pad}" y1="${zeroY}" x2="${width - pad}" y2="${zeroY}"/>`,
  );
  parts.push(
    `<text class="baseline-label" x="${width - pad}" y="${zeroY - 4}" ` +
    `text-anchor="end">unaided baseline</text>`,
  );

  for (const tick of [xMin, (xMin + xMax) / 2, xMax]) {
    parts.push(
      `<text class="tick" x="${toX(tick)}" y="${height - pad + 16}" ` +
      `text-anchor="middle">${esc(fmtTick(tick))}</text>`,
    );
  }
  for (const tick of [yMin, 0, yMax]) {
    parts.push(
      `<text class="tick" x="${pad - 6}" y="${toY(tick) + 4}" ` +
      `text-anchor="end">${esc(fmtTick(tick))}</text>`,
    );
  }
  parts.push(
    `<text class="axis-label" x="${(pad + width - pad) / 2}" y="${height - 8}" ` +
    `text-anchor="middle">${esc(paramLabel)}</text>`,
  );

  for (const series of nonEmpty) {
    for (const key of METRIC_KEYS) {
      const raw = series[key];
      const points = series.values.map((v, i) => [toX(v), toY(raw[i] as number)] as const);
      const common =
        `data-series="${esc(series.label)}" data-metric="${METRIC_LABEL[key]}" ` +
        `data-values="${esc(JSON.stringify(raw))}" stroke="${esc(series.color)}"`;
      if (points.length > 1) {
        const path = points.map(([x, y]) => `${x},${y}`).join(" ");
        const dash = METRIC_DASH[key] ? ` stroke-dasharray="${METRIC_DASH[key]}"` : "";
        parts.push(`<polyline class="series" fill="none" ${common}${dash} points="${path}"/>`);
      }
      for (const [x, y] of points) {
        parts.push(`<circle class="marker" ${common} cx="${x}" cy="${y}" r="3"/>`);
      }
    }
  }

  parts.push("</svg>");
  return parts.join("");
}
