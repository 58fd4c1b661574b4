/**
 * Figure generators. Each one reads documented CSV/JSON artifacts from a run
 * directory and renders a deterministic SVG string. No numbers are recomputed
 * beyond axis scaling.
 */

import { existsSync } from "node:fs";
import { join } from "node:path";

import { column, readCsv, readJson, Table } from "./csv.js";
import {
  DEFAULT_VIEWPORT,
  extent,
  linearScale,
  logScale,
  PALETTE,
  Scale,
  SvgBuilder,
  ticks,
  Viewport,
} from "./svg.js";

interface Zb1dSummary {
  experiment: string;
  per_mass: Record<string, unknown>;
  longrun?: { mass: number; omega_peak: number } | null;
}

interface KleinSummary {
  experiment: string;
  barrier_z: number;
  transmissions: Array<{ factor: number; v0: number; transmission: number }>;
}

interface ConvergenceSummary {
  experiment: string;
  r_values: number[];
  fits: Record<string, { slope: number; errors: number[] }>;
}

function mapPoints(xs: number[], ys: number[], sx: Scale, sy: Scale): Array<[number, number]> {
  return xs.map((x, i) => [sx(x), sy(ys[i])]);
}

/** Mass-sweep position traces with a long-run inset. */
export function plotZitterbewegung(runDir: string): string {
  const summary = readJson<Zb1dSummary>(runDir, "summary.json");
  const masses = Object.keys(summary.per_mass).sort((a, b) => Number(a) - Number(b));
  const series = masses.map((tag) => {
    const file = `zb1d_m${tag}.csv`;
    const table = readCsv(runDir, file);
    return {
      tag,
      t: column(table, "time", file),
      x: column(table, "x_circuit", file),
    };
  });

  const svg = new SvgBuilder();
  const area = svg.plotArea();
  const allT = series.flatMap((s) => s.t);
  const allX = series.flatMap((s) => s.x);
  const sx = linearScale(extent(allT), area.x);
  const sy = linearScale(extent(allX), area.y);
  svg.title("Position expectation vs time by mass");
  svg.axes(sx, sy, "time", "<x>(t)");
  series.forEach((s, i) => {
    svg.line(mapPoints(s.t, s.x, sx, sy), PALETTE[i % PALETTE.length]);
  });
  svg.legend(
    series.map((s, i) => ({ label: `m = ${s.tag}`, color: PALETTE[i % PALETTE.length] })),
    area.x[0] + 10,
    area.y[1] + 14,
  );

  // inset: long-run trace of the heaviest mass, showing the slow beat
  const longrunFile = join(runDir, "zb1d_longrun.csv");
  if (existsSync(longrunFile)) {
    const table = readCsv(runDir, "zb1d_longrun.csv");
    const t = column(table, "time", "zb1d_longrun.csv");
    const x = column(table, "x", "zb1d_longrun.csv");
    const inset = { x0: area.x[1] - 190, y0: area.y[1] + 10, w: 180, h: 110 };
    svg.rect(inset.x0, inset.y0, inset.w, inset.h, "#f6f6f6");
    const ix = linearScale(extent(t), [inset.x0 + 6, inset.x0 + inset.w - 6]);
    const iy = linearScale(extent(x), [inset.y0 + inset.h - 6, inset.y0 + 6]);
    svg.line(mapPoints(t, x, ix, iy), "#444444", 1);
    svg.text(inset.x0 + inset.w / 2, inset.y0 + inset.h + 12, "long-run trace", {
      anchor: "middle",
      size: 10,
    });
  }
  return svg.render();
}

/** Four-panel barrier densities with the barrier region shaded. */
export function plotKlein(runDir: string): string {
  const summary = readJson<KleinSummary>(runDir, "summary.json");
  const panels = summary.transmissions;
  if (panels.length === 0) throw new Error("klein summary lists no runs");

  const vp: Viewport = {
    width: 760,
    height: 560,
    margin: { top: 36, right: 16, bottom: 40, left: 56 },
  };
  const svg = new SvgBuilder(vp);
  svg.title("Probability density around a step barrier");
  const cols = 2;
  const cellW = (vp.width - vp.margin.left - vp.margin.right) / cols;
  const cellH = (vp.height - vp.margin.top - vp.margin.bottom) / Math.ceil(panels.length / cols);

  panels.forEach((panel, idx) => {
    const file = `klein_V${trimFactor(panel.factor)}_density.csv`;
    const table = readCsv(runDir, file);
    const z = column(table, "z", file);
    const stepCols = table.columns.filter((c) => c.startsWith("step"));
    if (stepCols.length === 0) throw new Error(`${file}: no step columns`);
    const first = column(table, stepCols[0], file);
    const last = column(table, stepCols[stepCols.length - 1], file);

    const px = vp.margin.left + (idx % cols) * cellW;
    const py = vp.margin.top + Math.floor(idx / cols) * cellH;
    const sx = linearScale(extent(z), [px + 28, px + cellW - 12]);
    const sy = linearScale([0, extent(first.concat(last))[1]], [py + cellH - 30, py + 14]);

    // shaded barrier region z >= barrier_z
    const zb = Math.max(summary.barrier_z, sx.domain[0]);
    svg.rect(sx(zb), py + 14, sx(sx.domain[1]) - sx(zb), cellH - 44, "#d9d9d9", 0.6);
    svg.line(mapPoints(z, first, sx, sy), "#888888", 1, "4,3");
    svg.line(mapPoints(z, last, sx, sy), PALETTE[idx % PALETTE.length], 1.5);
    svg.line([[px + 28, py + cellH - 30], [px + cellW - 12, py + cellH - 30]], "#000000", 1);
    svg.text(px + cellW / 2, py + cellH - 6, "z", { anchor: "middle", size: 10 });
    svg.text(
      px + cellW / 2,
      py + 12,
      `V0 = ${trimFactor(panel.factor)}·Ωmc², T = ${panel.transmission.toFixed(3)}`,
      { anchor: "middle", size: 11 },
    );
  });
  return svg.render();
}

/** log-log Trotter error vs step count with fitted slopes. */
export function plotConvergence(runDir: string): string {
  const summary = readJson<ConvergenceSummary>(runDir, "summary.json");
  const file = "convergence.csv";
  const table = readCsv(runDir, file);
  const orders = column(table, "order", file);
  const rs = column(table, "r", file);
  const errs = column(table, "error", file);

  const svg = new SvgBuilder();
  const area = svg.plotArea();
  const sx = logScale(extent(rs), area.x);
  const sy = logScale(extent(errs.filter((e) => e > 0)), area.y);
  svg.title("Trotter error vs step count");
  const logTicks = (domain: [number, number]) => {
    const out: number[] = [];
    for (let p = Math.floor(Math.log10(domain[0])); p <= Math.ceil(Math.log10(domain[1])); p++) {
      const v = 10 ** p;
      if (v >= domain[0] / 1.001 && v <= domain[1] * 1.001) out.push(v);
    }
    return out;
  };
  svg.axes(sx, sy, "steps r", "L2 error", {
    xTicks: logTicks(sx.domain),
    yTicks: logTicks(sy.domain),
    xFmt: (v) => v.toString(),
    yFmt: (v) => v.toExponential(0),
  });

  const uniqueOrders = [...new Set(orders)].sort((a, b) => a - b);
  uniqueOrders.forEach((order, i) => {
    const pts: Array<[number, number]> = [];
    rs.forEach((r, j) => {
      if (orders[j] === order && errs[j] > 0) pts.push([sx(r), sy(errs[j])]);
    });
    const color = PALETTE[i % PALETTE.length];
    svg.line(pts, color);
    pts.forEach(([x, y]) => svg.circle(x, y, 3, color));
  });
  svg.legend(
    uniqueOrders.map((order, i) => {
      const fit = summary.fits[String(order)];
      const slope = fit ? ` (slope ${fit.slope.toFixed(2)})` : "";
      return { label: `order ${order}${slope}`, color: PALETTE[i % PALETTE.length] };
    }),
    area.x[0] + 10,
    area.y[1] + 14,
  );
  return svg.render();
}

/** Per-block gate counts vs register size with a quadratic reference. */
export function plotGatecount(runDir: string): string {
  const file = "gatecount.csv";
  const table = readCsv(runDir, file);
  const q = column(table, "q", file);
  const kin2q = column(table, "kinetic_two_qubit", file);
  const massRz = column(table, "mass_rz", file);
  const stepRz = column(table, "step_rz", file);

  const svg = new SvgBuilder();
  const area = svg.plotArea();
  const sx = linearScale(extent(q), area.x);
  const sy = linearScale([0, extent(kin2q)[1] * 1.1], area.y);
  svg.title("Gate counts per block vs register size");
  svg.axes(sx, sy, "register qubits q", "gate count", { xTicks: q });

  const cRef = Math.max(...kin2q.map((v, i) => v / (q[i] * q[i])));
  const refPts = q.map((qq) => [sx(qq), sy(cRef * qq * qq)] as [number, number]);
  svg.line(refPts, "#bbbbbb", 1, "5,4");
  svg.line(mapPoints(q, kin2q, sx, sy), PALETTE[0]);
  kin2q.forEach((v, i) => svg.circle(sx(q[i]), sy(v), 3, PALETTE[0]));
  svg.line(mapPoints(q, massRz, sx, sy), PALETTE[1]);
  svg.line(mapPoints(q, stepRz, sx, sy), PALETTE[2], 1.5, "2,3");
  svg.legend(
    [
      { label: "kinetic two-qubit", color: PALETTE[0] },
      { label: `${cRef.toFixed(2)}·q² reference`, color: "#bbbbbb" },
      { label: "mass rotations", color: PALETTE[1] },
      { label: "step-potential rotations", color: PALETTE[2] },
    ],
    area.x[0] + 10,
    area.y[1] + 14,
  );
  return svg.render();
}

/** Heat-map style panels of the 3D density projections at t=0 and t=T. */
export function plotZb3dProjections(runDir: string): string {
  const planes = ["xy", "yz"] as const;
  const times = ["t0", "tT"] as const;
  const vp: Viewport = {
    width: 700,
    height: 680,
    margin: { top: 36, right: 16, bottom: 24, left: 40 },
  };
  const svg = new SvgBuilder(vp);
  svg.title("Density projections at start and end");
  const cellW = (vp.width - vp.margin.left - vp.margin.right) / 2;
  const cellH = (vp.height - vp.margin.top - vp.margin.bottom) / 2;

  planes.forEach((plane, pi) => {
    times.forEach((when, ti) => {
      const file = `zb3d_${plane}_${when}.csv`;
      const table = readCsv(runDir, file);
      const n = table.rows.length;
      const values = table.rows.map((r) => r.slice(1)); // drop the row index
      const vmax = Math.max(...values.flat());
      const px = vp.margin.left + ti * cellW;
      const py = vp.margin.top + pi * cellH;
      const side = Math.min(cellW, cellH) - 40;
      const cs = side / n;
      for (let i = 0; i < n; i++) {
        for (let j = 0; j < n; j++) {
          const v = vmax > 0 ? values[i][j] / vmax : 0;
          svg.rect(px + 20 + j * cs, py + 20 + i * cs, cs, cs, grayShade(v));
        }
      }
      svg.text(px + 20 + side / 2, py + 16, `${plane} @ ${when === "t0" ? "t=0" : "t=T"}`, {
        anchor: "middle",
        size: 11,
      });
    });
  });
  return svg.render();
}

function grayShade(v: number): string {
  // 1 -> dark, 0 -> near-white, quantized for stable output
  const level = Math.round(245 - 225 * Math.min(Math.max(v, 0), 1));
  const hex = level.toString(16).padStart(2, "0");
  return `#${hex}${hex}${hex}`;
}

/** Match the simulator's "%g"-style file naming (0 -> "0", 0.5 -> "0.5"). */
function trimFactor(f: number): string {
  return String(f);
}

export const FIGURES: Record<string, Array<{ name: string; render: (dir: string) => string }>> = {
  zb1d: [{ name: "zitterbewegung.svg", render: plotZitterbewegung }],
  zb3d: [{ name: "zb3d_projections.svg", render: plotZb3dProjections }],
  klein: [{ name: "klein_panels.svg", render: plotKlein }],
  convergence: [{ name: "convergence.svg", render: plotConvergence }],
  gatecount: [{ name: "gatecount.svg", render: plotGatecount }],
};
