/**
 * Hand-rolled deterministic SVG: grouped bars on a log axis for runtimes,
 * polylines for sweeps.  Identical input always yields byte-identical SVG.
 */

const PALETTE = [
  "#3b82f6", "#ef4444", "#22c55e", "#f59e0b", "#8b5cf6", "#06b6d4",
  "#ec4899", "#84cc16",
];

const FONT = 'font-family="Helvetica, Arial, sans-serif"';

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmtTick(v: number): string {
  if (v >= 1e6) return `${v / 1e6}M`;
  if (v >= 1e3) return `${v / 1e3}k`;
  return `${v}`;
}

export interface BarGroup {
  label: string; // x-axis group (graph name)
  values: { series: string; value: number }[];
}

export function groupedBarChart(
  title: string,
  groups: BarGroup[],
  seriesOrder: string[],
): string {
  const width = 720;
  const height = 420;
  const margin = { left: 70, right: 20, top: 40, bottom: 70 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  const all = groups.flatMap((g) => g.values.map((v) => v.value));
  const positive = all.filter((v) => v > 0);
  if (positive.length === 0) positive.push(1); // all-zero columns still render
  const lo = Math.pow(10, Math.floor(Math.log10(Math.min(...positive))));
  let hi = Math.pow(10, Math.ceil(Math.log10(Math.max(...positive))));
  if (hi === lo) hi = lo * 10;
  const y = (v: number) =>
    margin.top +
    plotH -
    ((Math.log10(Math.max(v, lo)) - Math.log10(lo)) /
      (Math.log10(hi) - Math.log10(lo) || 1)) *
      plotH;

  const groupW = plotW / groups.length;
  const barW = (groupW * 0.8) / seriesOrder.length;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${width / 2}" y="22" text-anchor="middle" ${FONT} font-size="15">${esc(title)}</text>`,
  );
  // log ticks
  for (let p = Math.log10(lo); p <= Math.log10(hi); p++) {
    const v = Math.pow(10, p);
    const yy = y(v);
    parts.push(
      `<line x1="${margin.left}" y1="${yy.toFixed(2)}" x2="${width - margin.right}" y2="${yy.toFixed(2)}" stroke="#e5e7eb"/>`,
    );
    parts.push(
      `<text x="${margin.left - 6}" y="${(yy + 4).toFixed(2)}" text-anchor="end" ${FONT} font-size="11">${fmtTick(v)}</text>`,
    );
  }
  parts.push(
    `<text x="16" y="${margin.top + plotH / 2}" ${FONT} font-size="12" transform="rotate(-90 16 ${margin.top + plotH / 2})" text-anchor="middle">simulated time (log)</text>`,
  );
  groups.forEach((g, gi) => {
    const x0 = margin.left + gi * groupW + groupW * 0.1;
    g.values.forEach((v) => {
      const si = seriesOrder.indexOf(v.series);
      const x = x0 + si * barW;
      const yy = y(v.value);
      parts.push(
        `<rect class="bar" x="${x.toFixed(2)}" y="${yy.toFixed(2)}" width="${(barW * 0.92).toFixed(2)}" height="${(margin.top + plotH - yy).toFixed(2)}" fill="${PALETTE[si % PALETTE.length]}"/>`,
      );
    });
    parts.push(
      `<text x="${(x0 + groupW * 0.4).toFixed(2)}" y="${margin.top + plotH + 18}" text-anchor="middle" ${FONT} font-size="12">${esc(g.label)}</text>`,
    );
  });
  // axis line + legend
  parts.push(
    `<line x1="${margin.left}" y1="${margin.top + plotH}" x2="${width - margin.right}" y2="${margin.top + plotH}" stroke="#111"/>`,
  );
  seriesOrder.forEach((s, si) => {
    const lx = margin.left + si * 150;
    const ly = height - 24;
    parts.push(
      `<rect x="${lx}" y="${ly - 10}" width="12" height="12" fill="${PALETTE[si % PALETTE.length]}"/>`,
    );
    parts.push(
      `<text x="${lx + 18}" y="${ly}" ${FONT} font-size="12">${esc(s)}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export interface SweepSeries {
  name: string;
  points: { x: number; y: number }[]; // sorted by x
}

export function sweepLineChart(
  title: string,
  xLabel: string,
  series: SweepSeries[],
): string {
  const width = 720;
  const height = 420;
  const margin = { left: 80, right: 20, top: 40, bottom: 60 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.map((p) => p.y));
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMax = Math.max(...ys);
  const x = (v: number) =>
    margin.left + ((v - xMin) / (xMax - xMin || 1)) * plotW;
  const y = (v: number) => margin.top + plotH - (v / (yMax || 1)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(
    `<text x="${width / 2}" y="22" text-anchor="middle" ${FONT} font-size="15">${esc(title)}</text>`,
  );
  for (let i = 0; i <= 4; i++) {
    const v = (yMax * i) / 4;
    const yy = y(v);
    parts.push(
      `<line x1="${margin.left}" y1="${yy.toFixed(2)}" x2="${width - margin.right}" y2="${yy.toFixed(2)}" stroke="#e5e7eb"/>`,
    );
    parts.push(
      `<text x="${margin.left - 6}" y="${(yy + 4).toFixed(2)}" text-anchor="end" ${FONT} font-size="11">${fmtTick(Math.round(v))}</text>`,
    );
  }
  const xTicks = [...new Set(xs)].sort((a, b) => a - b);
  for (const v of xTicks) {
    parts.push(
      `<text x="${x(v).toFixed(2)}" y="${margin.top + plotH + 18}" text-anchor="middle" ${FONT} font-size="11">${v}</text>`,
    );
  }
  parts.push(
    `<text x="${margin.left + plotW / 2}" y="${height - 26}" text-anchor="middle" ${FONT} font-size="12">${esc(xLabel)}</text>`,
  );
  parts.push(
    `<text x="16" y="${margin.top + plotH / 2}" ${FONT} font-size="12" transform="rotate(-90 16 ${margin.top + plotH / 2})" text-anchor="middle">simulated time</text>`,
  );
  series.forEach((s, si) => {
    const pts = s.points
      .map((p) => `${x(p.x).toFixed(2)},${y(p.y).toFixed(2)}`)
      .join(" ");
    parts.push(
      `<polyline class="series" points="${pts}" fill="none" stroke="${PALETTE[si % PALETTE.length]}" stroke-width="2"/>`,
    );
    for (const p of s.points) {
      parts.push(
        `<circle cx="${x(p.x).toFixed(2)}" cy="${y(p.y).toFixed(2)}" r="3" fill="${PALETTE[si % PALETTE.length]}"/>`,
      );
    }
    const lx = margin.left + si * 150;
    const ly = height - 8;
    parts.push(
      `<rect x="${lx}" y="${ly - 10}" width="12" height="12" fill="${PALETTE[si % PALETTE.length]}"/>`,
    );
    parts.push(
      `<text x="${lx + 18}" y="${ly}" ${FONT} font-size="12">${esc(s.name)}</text>`,
    );
  });
  parts.push(
    `<line x1="${margin.left}" y1="${margin.top + plotH}" x2="${width - margin.right}" y2="${margin.top + plotH}" stroke="#111"/>`,
  );
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
