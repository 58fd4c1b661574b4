/**
 * Minimal deterministic SVG chart primitives. Output is plain text with
 * fixed-precision coordinates, so identical inputs always produce identical
 * bytes.
 */

export interface Viewport {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
}

export const DEFAULT_VIEWPORT: Viewport = {
  width: 560,
  height: 400,
  margin: { top: 36, right: 24, bottom: 48, left: 64 },
};

/** Categorical palette, fixed order for deterministic styling. */
export const PALETTE = ["#1f6fb2", "#d1495b", "#3a7d44", "#8d5a97", "#c77b1e"];

const fmt = (v: number): string => {
  if (!Number.isFinite(v)) throw new Error(`non-finite coordinate ${v}`);
  return v.toFixed(2);
};

export interface Scale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const scale = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  if (domain[0] <= 0 || domain[1] <= 0) {
    throw new Error(`log scale requires positive domain, got [${domain}]`);
  }
  const inner = linearScale([Math.log10(domain[0]), Math.log10(domain[1])], range);
  const scale = ((v: number) => inner(Math.log10(v))) as Scale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

export function extent(values: number[]): [number, number] {
  if (values.length === 0) throw new Error("extent of empty data");
  let lo = values[0];
  let hi = values[0];
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === hi) {
    const pad = lo === 0 ? 1 : Math.abs(lo) * 0.1;
    return [lo - pad, hi + pad];
  }
  return [lo, hi];
}

/** Round tick positions covering a domain, at most `count` of them. */
export function ticks(domain: [number, number], count = 5): number[] {
  const [lo, hi] = domain;
  const rawStep = (hi - lo) / Math.max(1, count);
  const mag = 10 ** Math.floor(Math.log10(Math.abs(rawStep) || 1));
  const candidates = [1, 2, 5, 10].map((m) => m * mag);
  const step = candidates.find((s) => (hi - lo) / s <= count) ?? candidates[3];
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : Number(v.toPrecision(12)));
  }
  return out;
}

export class SvgBuilder {
  private parts: string[] = [];

  constructor(readonly vp: Viewport = DEFAULT_VIEWPORT) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${vp.width}" ` +
        `height="${vp.height}" viewBox="0 0 ${vp.width} ${vp.height}" ` +
        `font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${vp.width}" height="${vp.height}" fill="#ffffff"/>`,
    );
  }

  plotArea(): { x: [number, number]; y: [number, number] } {
    const m = this.vp.margin;
    return {
      x: [m.left, this.vp.width - m.right],
      // SVG y is downward; charts want upward
      y: [this.vp.height - m.bottom, m.top],
    };
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(points: Array<[number, number]>, stroke: string, width = 1.5, dash = ""): void {
    const d = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<polyline points="${d}" fill="none" stroke="${stroke}" ` +
        `stroke-width="${width}"${dashAttr}/>`,
    );
  }

  circle(x: number, y: number, r: number, fill: string): void {
    this.parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${fill}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string, opacity = 1): void {
    const op = opacity === 1 ? "" : ` fill-opacity="${opacity}"`;
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ` +
        `fill="${fill}"${op}/>`,
    );
  }

  text(x: number, y: number, content: string, opts: { anchor?: string; size?: number; rotate?: number } = {}): void {
    const anchor = opts.anchor ?? "start";
    const size = opts.size ?? 12;
    const rot = opts.rotate ? ` transform="rotate(${opts.rotate} ${fmt(x)} ${fmt(y)})"` : "";
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" ` +
        `font-size="${size}"${rot}>${escapeXml(content)}</text>`,
    );
  }

  axes(xScale: Scale, yScale: Scale, xLabel: string, yLabel: string,
       opts: { xTicks?: number[]; yTicks?: number[]; xFmt?: (v: number) => string; yFmt?: (v: number) => string } = {}): void {
    const area = this.plotArea();
    const xT = opts.xTicks ?? ticks(xScale.domain);
    const yT = opts.yTicks ?? ticks(yScale.domain);
    const xF = opts.xFmt ?? defaultTickFormat;
    const yF = opts.yFmt ?? defaultTickFormat;
    const [x0, x1] = area.x;
    const [yBottom, yTop] = area.y;
    this.line([[x0, yBottom], [x1, yBottom]], "#000000", 1);
    this.line([[x0, yBottom], [x0, yTop]], "#000000", 1);
    for (const t of xT) {
      const px = xScale(t);
      if (px < x0 - 0.5 || px > x1 + 0.5) continue;
      this.line([[px, yBottom], [px, yBottom + 5]], "#000000", 1);
      this.text(px, yBottom + 18, xF(t), { anchor: "middle", size: 10 });
    }
    for (const t of yT) {
      const py = yScale(t);
      if (py > yBottom + 0.5 || py < yTop - 0.5) continue;
      this.line([[x0 - 5, py], [x0, py]], "#000000", 1);
      this.text(x0 - 8, py + 3, yF(t), { anchor: "end", size: 10 });
    }
    this.text((x0 + x1) / 2, this.vp.height - 10, xLabel, { anchor: "middle" });
    this.text(16, (yBottom + yTop) / 2, yLabel, { anchor: "middle", rotate: -90 });
  }

  legend(entries: Array<{ label: string; color: string }>, x: number, y: number): void {
    entries.forEach((e, i) => {
      const yy = y + i * 16;
      this.line([[x, yy - 4], [x + 18, yy - 4]], e.color, 2);
      this.text(x + 24, yy, e.label, { size: 11 });
    });
  }

  title(content: string): void {
    this.text(this.vp.width / 2, 20, content, { anchor: "middle", size: 14 });
  }

  render(): string {
    return [...this.parts, "</svg>"].join("\n") + "\n";
  }
}

export function defaultTickFormat(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return Number(v.toPrecision(4)).toString();
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}
