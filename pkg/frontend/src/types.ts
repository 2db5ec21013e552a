// Wire types for the session service.  Vertices are `{side?, label}` with
// ordinal labels as strings; everything here mirrors the JSONL transcript
// vocabulary, so a snapshot is readable next to a saved game file.

export type Side = "L" | "R";

export interface VertexJson {
  side?: Side;
  label: string;
}

export interface MoveJson {
  turn: string;
  step: number;
  player: "M" | "B";
  edge: VertexJson[];
}

export type WitnessJson =
  | VertexJson[]
  | { left: VertexJson[]; right: VertexJson[] };

export type GameResult = "maker" | "breaker" | "budget";

export interface SessionState {
  board: string;
  goal: string;
  bias: number;
  breakerFirst: boolean;
  humanRole: "maker" | "breaker";
  engineStrategy: string;
  toMove: "human" | "engine" | null;
  result: GameResult | null;
  reason: string | null;
  history: MoveJson[];
  makerClaims: VertexJson[][];
  breakerClaims: VertexJson[][];
  schedule?: string;
  witness?: WitnessJson;
}

export interface TreeNodeJson {
  label: string;
  parent: string | null;
  depth: number;
}

export interface TreeJson {
  arityBound: number;
  limitMultiplicity: number;
  nodes: TreeNodeJson[];
}

export interface HintCandidate {
  vertex: VertexJson;
  blocked: boolean;
}

export interface HintsJson {
  active: VertexJson | null;
  chain: VertexJson[];
  candidates: HintCandidate[];
}

export interface MoveResponse {
  human: MoveJson;
  engine: MoveJson[];
  result: GameResult | null;
  reason: string | null;
  witness?: WitnessJson;
  tree?: TreeJson;
  hints?: HintsJson;
}

export interface SessionConfig {
  board: string;
  goal: string;
  humanRole: "maker" | "breaker";
  engineStrategy: string;
  seed: number;
  bias?: number;
  budget?: number;
  breakerFirst?: boolean;
  schedule?: string;
}

export interface CreateResponse {
  sessionId: string;
  state: SessionState;
}
