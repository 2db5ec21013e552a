// Scripted sessions against the real service: a spawned instance, the
// typed client, and the same view derivation the page renders from.  The
// script only ever submits edges the view model marked selectable, so a
// green run is evidence for the "whatever looks legal is legal" promise.

import { ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, SessionApi } from "../src/api.js";
import { E, edge, edgeKey, edgeToJson, vertex } from "../src/edges.js";
import { deriveView } from "../src/state.js";
import type { SessionState } from "../src/types.js";

const PORT = 8923;
const BASE = `http://127.0.0.1:${PORT}`;

let proc: ChildProcess;

beforeAll(async () => {
  proc = spawn(
    "python3",
    ["-m", "makerbreaker.cli", "serve", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  const deadline = Date.now() + 20_000;
  for (;;) {
    try {
      const res = await fetch(`${BASE}/sessions/warmup-probe`);
      if (res.status === 404) return;
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) throw new Error("service never came up");
    await new Promise((r) => setTimeout(r, 120));
  }
});

afterAll(() => {
  proc.kill("SIGTERM");
});

interface RunLog {
  humans: string[];
  engines: string[];
  flippedCandidate: string;
  treeSizes: number[];
}

// Far pairs stay high in the rendered window (and the window maxes out at
// 60), well away from the engine's small-label tree building.
function farPair(i: number): E {
  return edge(vertex(58 - 2 * i), vertex(59 - 2 * i));
}

async function scriptedRun(api: SessionApi): Promise<RunLog> {
  const created = await api.createSession({
    board: "Kw",
    goal: "clique:6",
    humanRole: "breaker",
    engineStrategy: "tree",
    seed: 0,
    bias: 2,
    budget: 200,
  });
  const sid = created.sessionId;
  let snapshot: SessionState = created.state;

  // Click "extend view" the way a user would, until the window is full.
  let extra = 0;
  while (deriveView(snapshot, { extraRounds: extra }).canExtend) extra++;
  expect(extra).toBeLessThanOrEqual(6);

  async function submitChecked(e: E) {
    const view = deriveView(snapshot, { extraRounds: extra });
    const shown = view.edges.find((x) => x.key === edgeKey(e));
    expect(shown, `edge ${edgeKey(e)} missing from the view`).toBeDefined();
    expect(shown!.selectable).toBe(true);
    const reply = await api.postMove(sid, edgeToJson(e));
    snapshot = await api.getState(sid); // poll after every submission
    return reply;
  }

  const log: RunLog = { humans: [], engines: [], flippedCandidate: "", treeSizes: [] };
  let pairIdx = 0;

  for (let turn = 0; turn < 12 && log.flippedCandidate === ""; turn++) {
    const hints = await api.getHints(sid);
    const open = hints.candidates.filter((c) => !c.blocked);
    if (hints.active !== null && open.length > 0) {
      // Cut the first open candidate off from the active vertex.  This
      // is the first claim of a bias-2 turn, so the engine must wait...
      const target = open[0]!.vertex.label;
      const block = edge(vertex(hints.active.label), vertex(target));
      const mid = await submitChecked(block);
      log.humans.push(edgeKey(block));
      expect(mid.engine).toEqual([]);
      // ...and the very next poll must show the candidate as blocked.
      const after = await api.getHints(sid);
      const flipped = after.candidates.find((c) => c.vertex.label === target);
      expect(flipped).toBeDefined();
      expect(flipped!.blocked).toBe(true);
      log.flippedCandidate = target;

      const far = farPair(pairIdx++);
      const done = await submitChecked(far);
      log.humans.push(edgeKey(far));
      expect(done.engine.length).toBeGreaterThan(0); // routed around the block
      log.engines.push(JSON.stringify(done.engine));
      log.treeSizes.push((await api.getTree(sid)).nodes.length);
    } else {
      const one = farPair(pairIdx++);
      const midway = await submitChecked(one);
      log.humans.push(edgeKey(one));
      expect(midway.engine).toEqual([]);

      const two = farPair(pairIdx++);
      const full = await submitChecked(two);
      log.humans.push(edgeKey(two));
      expect(full.engine).toHaveLength(1);
      log.engines.push(JSON.stringify(full.engine));
      log.treeSizes.push((await api.getTree(sid)).nodes.length);
    }
  }

  expect(log.flippedCandidate).not.toBe("");
  return log;
}

describe("scripted human-Breaker vs the tree Maker", () => {
  it("accepts every view-legal move, flips hints, and replays identically", async () => {
    const api = new SessionApi(BASE);
    const first = await scriptedRun(api);
    const second = await scriptedRun(api);

    // The tree grows as the script plays.
    expect(first.treeSizes.length).toBeGreaterThan(1);
    expect([...first.treeSizes].sort((a, b) => a - b)).toEqual(first.treeSizes);

    // Same seed, same script: the engine's replies are reproducible.
    expect(second.engines).toEqual(first.engines);
    expect(second.humans).toEqual(first.humans);
    expect(second.flippedCandidate).toBe(first.flippedCandidate);
  });
});

describe("bipartite sessions", () => {
  it("plays without a tree panel and reports illegal claims", async () => {
    const api = new SessionApi(BASE);
    const created = await api.createSession({
      board: "K8,8",
      goal: "biclique:2,3",
      humanRole: "breaker",
      engineStrategy: "bipartite(p=3)",
      seed: 1,
    });
    const sid = created.sessionId;

    // The tree endpoint declines, which is what hides the panel.
    const refusal = await api.getTree(sid).then(() => null, (e: unknown) => e);
    expect(refusal).toBeInstanceOf(ApiError);
    expect((refusal as ApiError).status).toBe(409);

    // A view-legal claim goes through and the engine answers.
    const view = deriveView(created.state, { extraRounds: 0 });
    const pick = view.edges.find((e) => e.selectable)!;
    const reply = await api.postMove(sid, edgeToJson(pick.e));
    expect(reply.engine).toHaveLength(1);

    // Replaying the same claim is refused with the reason shown inline.
    const err = await api
      .postMove(sid, edgeToJson(pick.e))
      .then(() => null, (e: unknown) => e);
    expect((err as ApiError).status).toBe(409);
    expect((err as ApiError).message).toContain("already claimed");
  });
});

describe("instant finishes", () => {
  it("reports an engine win that happens on the opening move", async () => {
    const api = new SessionApi(BASE);
    const created = await api.createSession({
      board: "K4",
      goal: "clique:2",
      humanRole: "breaker",
      engineStrategy: "goal-seeker",
      seed: 0,
    });
    expect(created.state.result).toBe("maker");
    const view = deriveView(created.state, { extraRounds: 0 });
    expect(view.gameOver).toBe(true);
    expect(view.edges.some((e) => e.selectable)).toBe(false);
    expect(view.witnessVertices.size).toBeGreaterThan(0);

    const err = await api
      .postMove(created.sessionId, edgeToJson(edge(vertex(2), vertex(3))))
      .then(() => null, (e: unknown) => e);
    expect((err as ApiError).status).toBe(409);
    expect((err as ApiError).message).toContain("over");
  });
});
