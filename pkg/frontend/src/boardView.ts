// SVG board rendering.  Complete boards go on a circle, bipartite boards
// in two columns.  Everything is redrawn from the view model on each
// update; only edges the model marks selectable get a click handler, so
// whatever the user can click, the referee will accept.

import { E, V, vertexKey } from "./edges.js";
import type { EdgeView, ViewModel } from "./state.js";

const SVG = "http://www.w3.org/2000/svg";

type Point = { x: number; y: number };

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function layout(view: ViewModel, width: number, height: number): Map<string, Point> {
  const points = new Map<string, Point>();
  if (view.board.bipartite) {
    const lefts = view.vertices.filter((v) => v.side === "L");
    const rights = view.vertices.filter((v) => v.side === "R");
    const place = (col: V[], x: number) => {
      const gap = height / (col.length + 1);
      col.forEach((v, i) => points.set(vertexKey(v), { x, y: gap * (i + 1) }));
    };
    place(lefts, width * 0.18);
    place(rights, width * 0.82);
  } else {
    const n = view.vertices.length;
    const cx = width / 2;
    const cy = height / 2;
    const r = Math.min(width, height) / 2 - 30;
    view.vertices.forEach((v, i) => {
      const angle = (2 * Math.PI * i) / Math.max(n, 1) - Math.PI / 2;
      points.set(vertexKey(v), {
        x: cx + r * Math.cos(angle),
        y: cy + r * Math.sin(angle),
      });
    });
  }
  return points;
}

function edgeClass(ev: EdgeView): string {
  const parts = ["edge"];
  if (ev.owner === null) parts.push("open");
  else parts.push(ev.owner, ev.byHuman ? "human" : "engine");
  if (ev.selectable) parts.push("selectable");
  if (ev.inWitness) parts.push("witness");
  return parts.join(" ");
}

export function renderBoard(
  container: HTMLElement,
  view: ViewModel,
  onSelect: (e: E) => void,
): void {
  container.textContent = "";
  const width = 480;
  const height = view.board.bipartite
    ? Math.max(320, 26 * Math.max(
        view.vertices.filter((v) => v.side === "L").length,
        view.vertices.filter((v) => v.side === "R").length,
      ) + 40)
    : 480;
  const svg = el("svg", {
    viewBox: `0 0 ${width} ${height}`,
    class: "board",
    role: "img",
  });

  const points = layout(view, width, height);

  // Edges go under vertices; claimed ones last so they stay visible.
  const open = view.edges.filter((e) => e.owner === null);
  const claimed = view.edges.filter((e) => e.owner !== null);
  for (const ev of [...open, ...claimed]) {
    const pa = points.get(vertexKey(ev.e.a));
    const pb = points.get(vertexKey(ev.e.b));
    if (!pa || !pb) continue;
    const line = el("line", {
      x1: String(pa.x),
      y1: String(pa.y),
      x2: String(pb.x),
      y2: String(pb.y),
      class: edgeClass(ev),
      "data-edge": ev.key,
    });
    if (ev.selectable) {
      line.addEventListener("click", () => onSelect(ev.e));
    }
    svg.appendChild(line);
  }

  for (const v of view.vertices) {
    const p = points.get(vertexKey(v));
    if (!p) continue;
    const key = vertexKey(v);
    const inWitness = view.witnessVertices.has(key);
    const g = el("g", {
      class: inWitness ? "vertex witness" : "vertex",
      "data-vertex": key,
    });
    g.appendChild(el("circle", { cx: String(p.x), cy: String(p.y), r: "11" }));
    const text = el("text", {
      x: String(p.x),
      y: String(p.y + 4),
      "text-anchor": "middle",
    });
    text.textContent = key;
    g.appendChild(text);
    svg.appendChild(g);
  }

  container.appendChild(svg);
}
