/**
 * Minimal deterministic SVG assembly: fixed canvas, linear scales, polyline
 * series, ticked axes and a legend. All coordinates are rounded so repeated
 * renders of the same data are byte-identical.
 */

import { scaleLinear, type ScaleLinear } from "d3-scale";
import { line } from "d3-shape";

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN = { top: 34, right: 24, bottom: 48, left: 64 };

export const PALETTE = [
  "#1b6ca8",
  "#c2403c",
  "#3d8b50",
  "#8455a5",
  "#b07d2b",
  "#4f5d66",
];

export interface Series {
  label: string;
  points: Array<[number, number]>;
}

const fmt = (v: number): string => {
  const rounded = Math.round(v * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
};

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return [lo, hi];
}

function axisTicks(scale: ScaleLinear<number, number>): number[] {
  return scale.ticks(5);
}

export function renderSvg(
  series: Series[],
  xLabel: string,
  yLabel: string,
  title: string,
): string {
  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  const x = scaleLinear()
    .domain(extent(xs))
    .nice()
    .range([MARGIN.left, WIDTH - MARGIN.right]);
  const y = scaleLinear()
    .domain(extent([0, ...ys]))
    .nice()
    .range([HEIGHT - MARGIN.bottom, MARGIN.top]);

  const path = line<[number, number]>()
    .x((p) => Math.round(x(p[0]) * 100) / 100)
    .y((p) => Math.round(y(p[1]) * 100) / 100);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="20" text-anchor="middle" font-size="14">` +
      `${escapeXml(title)}</text>`,
  );

  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="black"/>`,
    `<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="black"/>`,
  );

  const xFormat = x.tickFormat(5);
  for (const t of axisTicks(x)) {
    const px = fmt(x(t));
    parts.push(
      `<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" stroke="black"/>`,
      `<text x="${px}" y="${y0 + 18}" text-anchor="middle" font-size="11">` +
        `${escapeXml(xFormat(t))}</text>`,
    );
  }
  const yFormat = y.tickFormat(5);
  for (const t of axisTicks(y)) {
    const py = fmt(y(t));
    parts.push(
      `<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" stroke="black"/>`,
      `<text x="${x0 - 8}" y="${py}" text-anchor="end" dominant-baseline="middle" ` +
        `font-size="11">${escapeXml(yFormat(t))}</text>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 10}" text-anchor="middle" ` +
      `font-size="13">${escapeXml(xLabel)}</text>`,
    `<text x="16" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 16 ${(y0 + y1) / 2})">${escapeXml(yLabel)}</text>`,
  );

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const d = path(s.points);
    if (d !== null) {
      parts.push(
        `<path d="${d}" fill="none" stroke="${color}" stroke-width="1.8" ` +
          `class="series" data-label="${escapeXml(s.label)}"/>`,
      );
    }
    const ly = MARGIN.top + 6 + i * 16;
    parts.push(
      `<line x1="${x1 - 110}" y1="${ly}" x2="${x1 - 86}" y2="${ly}" ` +
        `stroke="${color}" stroke-width="1.8"/>`,
      `<text x="${x1 - 80}" y="${ly + 4}" font-size="11">${escapeXml(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
