// Pure derivation of everything the views render.  No client-side game
// rules live here: ownership, turn order, and results come verbatim from
// the last snapshot, and the only local inputs are view preferences (how
// far into a lazy board to look).  Same snapshot in, same view out.

import {
  E,
  V,
  compareVertices,
  edge,
  edgeFromJson,
  edgeKey,
  fromJson,
  labelRank,
  vertex,
  vertexKey,
} from "./edges.js";
import type { SessionState, WitnessJson } from "./types.js";

export const VIEW_CAP = 60;
export const SIDE_CAP = 30;
export const EXTEND_STEP = 12;

export interface BoardShape {
  bipartite: boolean;
  // vertex counts; "w" marks an unbounded side
  left: number | "w";
  right: number | "w";
}

export function parseBoardLiteral(literal: string): BoardShape {
  const m = /^K(w|\d+)(?:,(w|\d+))?$/.exec(literal.trim());
  if (!m) throw new Error(`unrecognised board literal: ${literal}`);
  const first = m[1] === "w" ? "w" : Number(m[1]);
  if (m[2] === undefined) {
    return { bipartite: false, left: first, right: first };
  }
  const second = m[2] === "w" ? "w" : Number(m[2]);
  return { bipartite: true, left: first, right: second };
}

export interface EdgeView {
  key: string;
  e: E;
  owner: "maker" | "breaker" | null;
  byHuman: boolean;
  selectable: boolean;
  inWitness: boolean;
}

export interface ViewModel {
  board: BoardShape;
  vertices: V[];
  edges: EdgeView[];
  canExtend: boolean;
  gameOver: boolean;
  humanTurn: boolean;
  // claims the human still owes in the current turn (bias discipline)
  claimsLeft: number;
  witnessVertices: Set<string>;
  status: string;
}

export interface ViewPrefs {
  extraRounds: number;
}

function maxFiniteLabel(state: SessionState, side: "L" | "R" | null): number {
  let top = -1;
  for (const move of state.history) {
    for (const v of move.edge) {
      if ((v.side ?? null) !== side) continue;
      const rank = labelRank(v.label);
      if (Number.isFinite(rank)) top = Math.max(top, rank);
    }
  }
  return top;
}

function shownCount(
  size: number | "w",
  claimedTop: number,
  cap: number,
  extraRounds: number,
): { count: number; canExtend: boolean } {
  if (size !== "w") {
    return { count: Math.min(size, cap), canExtend: false };
  }
  const base = Math.max(8, claimedTop + 2);
  const count = Math.min(cap, base + EXTEND_STEP * extraRounds);
  return { count, canExtend: count < cap };
}

function witnessKeys(witness: WitnessJson | undefined): Set<string> {
  const keys = new Set<string>();
  if (witness === undefined) return keys;
  const all = Array.isArray(witness) ? witness : [...witness.left, ...witness.right];
  for (const v of all) keys.add(vertexKey(fromJson(v)));
  return keys;
}

function trailingHumanClaims(state: SessionState): number {
  const mark = state.humanRole === "maker" ? "M" : "B";
  let n = 0;
  for (let i = state.history.length - 1; i >= 0; i--) {
    if (state.history[i]!.player !== mark) break;
    n++;
  }
  return n;
}

function statusLine(state: SessionState, humanTurn: boolean, claimsLeft: number): string {
  if (state.result !== null) {
    const who = state.result === "maker" ? "Maker" : state.result === "breaker" ? "Breaker" : "nobody";
    const how = state.reason === "budget" ? "the move budget ran out" : state.reason ?? "";
    return state.result === "budget"
      ? `game over: ${how}`
      : `game over: ${who} wins (${how})`;
  }
  if (!humanTurn) return "engine to move";
  return claimsLeft > 1 ? `your move (${claimsLeft} claims left this turn)` : "your move";
}

export function deriveView(state: SessionState, prefs: ViewPrefs): ViewModel {
  const board = parseBoardLiteral(state.board);
  const gameOver = state.result !== null;
  const humanTurn = !gameOver && state.toMove === "human";

  const humanAllotment = state.humanRole === "breaker" ? state.bias : 1;
  const claimsLeft = humanTurn
    ? humanAllotment - (trailingHumanClaims(state) % humanAllotment)
    : 0;

  const vertices: V[] = [];
  let canExtend = false;
  if (board.bipartite) {
    const lefts = shownCount(board.left, maxFiniteLabel(state, "L"), SIDE_CAP, prefs.extraRounds);
    const rights = shownCount(board.right, maxFiniteLabel(state, "R"), SIDE_CAP, prefs.extraRounds);
    for (let i = 0; i < lefts.count; i++) vertices.push(vertex(i, "L"));
    for (let i = 0; i < rights.count; i++) vertices.push(vertex(i, "R"));
    canExtend = lefts.canExtend || rights.canExtend;
  } else {
    const shown = shownCount(board.left, maxFiniteLabel(state, null), VIEW_CAP, prefs.extraRounds);
    for (let i = 0; i < shown.count; i++) vertices.push(vertex(i));
    canExtend = shown.canExtend;
  }

  const owners = new Map<string, "maker" | "breaker">();
  for (const pair of state.makerClaims) owners.set(edgeKey(edgeFromJson(pair)), "maker");
  for (const pair of state.breakerClaims) owners.set(edgeKey(edgeFromJson(pair)), "breaker");

  const witnessVertices = witnessKeys(state.witness);

  const edges: EdgeView[] = [];
  const push = (a: V, b: V) => {
    const e = edge(a, b);
    const key = edgeKey(e);
    const owner = owners.get(key) ?? null;
    edges.push({
      key,
      e,
      owner,
      byHuman: owner !== null && owner === state.humanRole,
      selectable: owner === null && humanTurn,
      inWitness:
        owner === "maker" &&
        witnessVertices.has(vertexKey(e.a)) &&
        witnessVertices.has(vertexKey(e.b)),
    });
  };
  if (board.bipartite) {
    const lefts = vertices.filter((v) => v.side === "L");
    const rights = vertices.filter((v) => v.side === "R");
    for (const l of lefts) for (const r of rights) push(l, r);
  } else {
    const sorted = [...vertices].sort(compareVertices);
    for (let i = 0; i < sorted.length; i++) {
      for (let j = i + 1; j < sorted.length; j++) push(sorted[i]!, sorted[j]!);
    }
  }

  return {
    board,
    vertices,
    edges,
    canExtend,
    gameOver,
    humanTurn,
    claimsLeft,
    witnessVertices,
    status: statusLine(state, humanTurn, claimsLeft),
  };
}
