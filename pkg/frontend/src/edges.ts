// Vertex and edge identity.  The service orders each edge's endpoints
// itself, but the client still needs stable keys for lookup tables and a
// canonical form for outgoing claims, so normalisation lives here.

import type { Side, VertexJson } from "./types.js";

export interface V {
  side: Side | null;
  label: string;
}

export function vertex(label: number | string, side?: Side): V {
  return { side: side ?? null, label: String(label) };
}

export function fromJson(v: VertexJson): V {
  return { side: v.side ?? null, label: v.label };
}

export function toJson(v: V): VertexJson {
  return v.side === null ? { label: v.label } : { side: v.side, label: v.label };
}

export function vertexKey(v: V): string {
  return v.side === null ? v.label : v.side + v.label;
}

// Labels are ordinal literals; everything the view renders is a plain
// natural number, anything else sorts after them lexically.
export function labelRank(label: string): number {
  return /^\d+$/.test(label) ? Number(label) : Number.POSITIVE_INFINITY;
}

function vertexRank(v: V): [number, number, string] {
  const side = v.side === null ? 0 : v.side === "L" ? 1 : 2;
  return [side, labelRank(v.label), v.label];
}

export function compareVertices(a: V, b: V): number {
  const ra = vertexRank(a);
  const rb = vertexRank(b);
  for (let i = 0; i < 3; i++) {
    if (ra[i]! < rb[i]!) return -1;
    if (ra[i]! > rb[i]!) return 1;
  }
  return 0;
}

export interface E {
  a: V;
  b: V;
}

export function edge(a: V, b: V): E {
  return compareVertices(a, b) <= 0 ? { a, b } : { a: b, b: a };
}

export function edgeFromJson(pair: VertexJson[]): E {
  if (pair.length !== 2) {
    throw new Error(`edge must have two endpoints, got ${pair.length}`);
  }
  return edge(fromJson(pair[0]!), fromJson(pair[1]!));
}

export function edgeToJson(e: E): VertexJson[] {
  return [toJson(e.a), toJson(e.b)];
}

export function edgeKey(e: E): string {
  return `${vertexKey(e.a)}~${vertexKey(e.b)}`;
}

export function edgeLabel(e: E): string {
  return `{${vertexKey(e.a)},${vertexKey(e.b)}}`;
}
