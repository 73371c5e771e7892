// SVG rendering of a framed quiver: mutable vertices on a circle, frozen
// partners radially outside, arrow multiplicities as edge labels. Pure
// string/coordinate functions so the layout is unit-testable without a DOM.

import type { FramedQuiver } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export const CANVAS = 420;
export const RADIUS_MUTABLE = 120;
export const RADIUS_FROZEN = 185;

export function vertexPosition(index: number, n: number): Point {
  // 0-based mutable index; frozen partner shares the angle further out
  const angle = (2 * Math.PI * index) / n - Math.PI / 2;
  const mutable = index < n;
  const r = mutable ? RADIUS_MUTABLE : RADIUS_FROZEN;
  const i = mutable ? index : index - n;
  const a = (2 * Math.PI * i) / n - Math.PI / 2;
  return {
    x: CANVAS / 2 + r * Math.cos(mutable ? angle : a),
    y: CANVAS / 2 + r * Math.sin(mutable ? angle : a),
  };
}

export interface ArrowSpec {
  from: number; // 0-based over all 2n vertices
  to: number;
  mult: number;
}

export function arrowsOf(framed: FramedQuiver): ArrowSpec[] {
  const out: ArrowSpec[] = [];
  const size = 2 * framed.n;
  for (let i = 0; i < size; i++) {
    for (let j = 0; j < size; j++) {
      const m = framed.b[i][j];
      if (m > 0) out.push({ from: i, to: j, mult: m });
    }
  }
  return out;
}

function shorten(a: Point, b: Point, margin: number): [Point, Point] {
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const len = Math.hypot(dx, dy) || 1;
  const ux = dx / len;
  const uy = dy / len;
  return [
    { x: a.x + ux * margin, y: a.y + uy * margin },
    { x: b.x - ux * margin, y: b.y - uy * margin },
  ];
}

export function renderSvg(
  framed: FramedQuiver,
  colors: ("green" | "red")[],
): string {
  const n = framed.n;
  const parts: string[] = [];
  parts.push(
    `<svg viewBox="0 0 ${CANVAS} ${CANVAS}" xmlns="http://www.w3.org/2000/svg">`,
    `<defs><marker id="arrowhead" markerWidth="8" markerHeight="8" refX="7" refY="3" orient="auto">` +
      `<path d="M0,0 L8,3 L0,6 z" fill="#444"/></marker></defs>`,
  );
  for (const arrow of arrowsOf(framed)) {
    const [p, q] = shorten(
      vertexPosition(arrow.from, n),
      vertexPosition(arrow.to, n),
      22,
    );
    parts.push(
      `<line x1="${p.x.toFixed(1)}" y1="${p.y.toFixed(1)}" ` +
        `x2="${q.x.toFixed(1)}" y2="${q.y.toFixed(1)}" ` +
        `stroke="#444" stroke-width="1.6" marker-end="url(#arrowhead)"/>`,
    );
    if (arrow.mult > 1) {
      const mx = (p.x + q.x) / 2;
      const my = (p.y + q.y) / 2;
      parts.push(
        `<text x="${(mx + 8).toFixed(1)}" y="${(my - 6).toFixed(1)}" ` +
          `font-size="13" fill="#444">${arrow.mult}</text>`,
      );
    }
  }
  for (let v = 0; v < 2 * n; v++) {
    const pos = vertexPosition(v, n);
    const mutable = v < n;
    if (mutable) {
      const color = colors[v] === "green" ? "#2e9e44" : "#d33434";
      // green vertices are encircled, red ones solidly marked
      const ring =
        colors[v] === "green"
          ? `<circle cx="${pos.x}" cy="${pos.y}" r="24" fill="none" stroke="${color}" stroke-width="2.5"/>`
          : "";
      parts.push(
        `<g class="vertex mutable" data-vertex="${v + 1}" style="cursor:pointer">` +
          ring +
          `<circle cx="${pos.x}" cy="${pos.y}" r="17" fill="${color}" opacity="0.92"/>` +
          `<text x="${pos.x}" y="${pos.y + 5}" text-anchor="middle" font-size="15" fill="#fff">${v + 1}</text>` +
          `</g>`,
      );
    } else {
      parts.push(
        `<g class="vertex frozen" opacity="0.45">` +
          `<rect x="${pos.x - 15}" y="${pos.y - 15}" width="30" height="30" rx="5" fill="#8a8a8a"/>` +
          `<text x="${pos.x}" y="${pos.y + 5}" text-anchor="middle" font-size="13" fill="#fff">${v - n + 1}'</text>` +
          `</g>`,
      );
    }
  }
  parts.push("</svg>");
  return parts.join("");
}

export function formatSeries(terms: { exp: number[]; coeff: string }[]): string {
  if (terms.length === 0) return "0";
  return terms
    .map((t) => {
      const mono = t.exp.every((e) => e === 0)
        ? ""
        : " y^(" + t.exp.join(",") + ")";
      const coeff = t.coeff === "1" && mono ? "" : t.coeff;
      return `${coeff}${coeff && mono ? " ·" : ""}${mono}`.trim();
    })
    .join("  +  ");
}
