// Live view of the engine's chain tree.  Nodes sit in rows by depth; the
// chain of the phase in progress is highlighted, and each candidate child
// the hints endpoint reports is tagged open or blocked, so a human
// Breaker can see which subtree the strategy currently refuses to enter.

import type { HintsJson, TreeJson, TreeNodeJson } from "./types.js";

const SVG = "http://www.w3.org/2000/svg";

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export interface TreeNodeView extends TreeNodeJson {
  inChain: boolean;
  candidate: "open" | "blocked" | null;
}

// Pure part, unit-testable without a DOM: merge tree nodes with hints.
export function annotateTree(tree: TreeJson, hints: HintsJson | null): TreeNodeView[] {
  const chain = new Set((hints?.chain ?? []).map((v) => v.label));
  const candidates = new Map<string, boolean>();
  for (const c of hints?.candidates ?? []) candidates.set(c.vertex.label, c.blocked);
  return tree.nodes.map((n) => ({
    ...n,
    inChain: chain.has(n.label),
    candidate: candidates.has(n.label)
      ? candidates.get(n.label)!
        ? "blocked"
        : "open"
      : null,
  }));
}

export function renderTree(
  container: HTMLElement,
  tree: TreeJson,
  hints: HintsJson | null,
): void {
  container.textContent = "";
  const nodes = annotateTree(tree, hints);

  const rows = new Map<number, TreeNodeView[]>();
  for (const n of nodes) {
    const row = rows.get(n.depth) ?? [];
    row.push(n);
    rows.set(n.depth, row);
  }
  const depths = [...rows.keys()].sort((a, b) => a - b);
  const width = 420;
  const rowGap = 64;
  const height = Math.max(120, rowGap * depths.length + 40);
  const svg = el("svg", { viewBox: `0 0 ${width} ${height}`, class: "tree" });

  const pos = new Map<string, { x: number; y: number }>();
  for (const d of depths) {
    const row = rows.get(d)!;
    row.sort((a, b) => Number(a.label) - Number(b.label));
    row.forEach((n, i) => {
      pos.set(n.label, {
        x: (width * (i + 1)) / (row.length + 1),
        y: 40 + d * rowGap,
      });
    });
  }

  for (const n of nodes) {
    if (n.parent === null) continue;
    const here = pos.get(n.label)!;
    const up = pos.get(n.parent);
    if (!up) continue;
    svg.appendChild(
      el("line", {
        x1: String(up.x),
        y1: String(up.y),
        x2: String(here.x),
        y2: String(here.y),
        class: "tree-link",
      }),
    );
  }

  for (const n of nodes) {
    const p = pos.get(n.label)!;
    const classes = ["tree-node"];
    if (n.inChain) classes.push("chain");
    if (n.candidate === "open") classes.push("candidate-open");
    if (n.candidate === "blocked") classes.push("candidate-blocked");
    const g = el("g", { class: classes.join(" "), "data-node": n.label });
    g.appendChild(el("circle", { cx: String(p.x), cy: String(p.y), r: "13" }));
    const text = el("text", {
      x: String(p.x),
      y: String(p.y + 4),
      "text-anchor": "middle",
    });
    text.textContent = n.label;
    g.appendChild(text);
    svg.appendChild(g);
  }

  const caption = document.createElement("p");
  caption.className = "tree-caption";
  caption.textContent =
    hints?.active != null
      ? `attaching vertex ${hints.active.label}; blocked candidates are crossed`
      : "between phases";
  container.appendChild(svg);
  container.appendChild(caption);
}
