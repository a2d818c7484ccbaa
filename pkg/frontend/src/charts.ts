// Minimal SVG charts. Values are plotted exactly as the API provides them
// (no smoothing, no resampling); each datum also lands in a data-* attribute
// so tests can compare rendered values against API/CSV output.

import type { ActivitySeries, DensityCurve } from "./types";

const WIDTH = 640;
const HEIGHT = 240;
const PAD = 32;

const CLASS_COLORS: Record<string, string> = {
  low: "#c0392b",
  medium: "#f39c12",
  high: "#27ae60",
};

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, v);
  }
  return node;
}

function scale(value: number, lo: number, hi: number, outLo: number, outHi: number): number {
  if (hi === lo) {
    return (outLo + outHi) / 2;
  }
  return outLo + ((value - lo) / (hi - lo)) * (outHi - outLo);
}

export function renderActivityChart(
  container: HTMLElement,
  seriesList: ActivitySeries[],
): void {
  container.textContent = "";
  const defined = seriesList.flatMap((s) =>
    s.points.filter((p) => p.mean_pct !== null),
  );
  if (defined.length === 0) {
    const empty = document.createElement("p");
    empty.className = "no-data";
    empty.textContent = "no data in this window";
    container.appendChild(empty);
    return;
  }
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "activity-chart",
  });
  const maxPct = Math.max(...defined.map((p) => p.mean_pct as number), 1);
  for (const series of seriesList) {
    const color = CLASS_COLORS[series.rating_class] ?? "#555";
    const n = series.points.length;
    // Gap days (null) break the line into separate segments.
    let segment: string[] = [];
    const flush = () => {
      if (segment.length > 1) {
        svg.appendChild(
          svgEl("polyline", {
            points: segment.join(" "),
            fill: "none",
            stroke: color,
            "data-class": series.rating_class,
          }),
        );
      }
      segment = [];
    };
    series.points.forEach((point, i) => {
      if (point.mean_pct === null) {
        flush();
        return;
      }
      const x = scale(i, 0, Math.max(n - 1, 1), PAD, WIDTH - PAD);
      const y = scale(point.mean_pct, 0, maxPct, HEIGHT - PAD, PAD);
      segment.push(`${x},${y}`);
      const dot = svgEl("circle", {
        cx: String(x),
        cy: String(y),
        r: "2",
        fill: color,
        "data-class": series.rating_class,
        "data-date": point.date,
        "data-value": String(point.mean_pct),
      });
      svg.appendChild(dot);
    });
    flush();
  }
  container.appendChild(svg);
}

export function renderKdeChart(container: HTMLElement, curve: DensityCurve): void {
  container.textContent = "";
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "kde-chart",
    "data-metric": curve.metric,
    "data-log-scale": String(curve.log_scale),
    "data-bandwidth": String(curve.bandwidth),
    "data-n": String(curve.n),
  });
  const gridLo = curve.grid[0];
  const gridHi = curve.grid[curve.grid.length - 1];
  const maxDensity = Math.max(...curve.density, Number.MIN_VALUE);
  const points = curve.grid.map((g, i) => {
    const x = scale(g, gridLo, gridHi, PAD, WIDTH - PAD);
    const y = scale(curve.density[i], 0, maxDensity, HEIGHT - PAD, PAD);
    return `${x},${y}`;
  });
  const line = svgEl("polyline", {
    points: points.join(" "),
    fill: "none",
    stroke: "#2c3e50",
    "data-grid": JSON.stringify(curve.grid),
    "data-density": JSON.stringify(curve.density),
  });
  svg.appendChild(line);
  container.appendChild(svg);
}
