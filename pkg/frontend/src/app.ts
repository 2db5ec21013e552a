// Page wiring.  One session per tab; the UI disables input while any
// request is in flight and re-polls the full snapshot after every
// submission, so what is on screen is always the service's own account.

import { ApiError, SessionApi } from "./api.js";
import { E, edgeToJson } from "./edges.js";
import { renderBoard } from "./boardView.js";
import { renderPanel } from "./movePanel.js";
import { renderTree } from "./treeView.js";
import { deriveView } from "./state.js";
import type {
  HintsJson,
  MoveJson,
  SessionConfig,
  SessionState,
  TreeJson,
} from "./types.js";

interface AppState {
  sid: string;
  snapshot: SessionState;
  tree: TreeJson | null;
  hints: HintsJson | null;
  treeSupported: boolean;
  extraRounds: number;
  busy: boolean;
  error: string | null;
  lastEngine: MoveJson[];
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

export function startApp(): void {
  const base =
    new URLSearchParams(window.location.search).get("service") ??
    "http://127.0.0.1:8128";
  const api = new SessionApi(base);

  const setup = byId<HTMLElement>("setup");
  const game = byId<HTMLElement>("game");
  const boardBox = byId<HTMLElement>("board");
  const treeBox = byId<HTMLElement>("treepanel");
  const panelBox = byId<HTMLElement>("panel");
  const extendBtn = byId<HTMLButtonElement>("extend");
  const resetBtn = byId<HTMLButtonElement>("reset");
  const startBtn = byId<HTMLButtonElement>("start");
  const setupError = byId<HTMLElement>("setup-error");

  let app: AppState | null = null;

  function render(): void {
    if (app === null) return;
    const view = deriveView(app.snapshot, { extraRounds: app.extraRounds });
    extendBtn.hidden = !view.canExtend;
    renderBoard(boardBox, view, submit);
    if (app.treeSupported && app.tree !== null) {
      treeBox.hidden = false;
      renderTree(treeBox, app.tree, app.hints);
    } else {
      treeBox.hidden = true;
    }
    renderPanel(panelBox, {
      view,
      state: app.snapshot,
      lastEngine: app.lastEngine,
      error: app.error,
      busy: app.busy,
    });
  }

  async function refreshAux(): Promise<void> {
    if (app === null || !app.treeSupported) return;
    try {
      app.tree = await api.getTree(app.sid);
      app.hints = await api.getHints(app.sid);
    } catch (exc) {
      if (exc instanceof ApiError && exc.status === 409) {
        app.treeSupported = false; // bipartite game or treeless engine
        app.tree = null;
        app.hints = null;
      } else {
        throw exc;
      }
    }
  }

  async function submit(e: E): Promise<void> {
    if (app === null || app.busy) return;
    app.busy = true;
    app.error = null;
    render();
    try {
      const reply = await api.postMove(app.sid, edgeToJson(e));
      app.lastEngine = reply.engine;
    } catch (exc) {
      app.error = exc instanceof ApiError ? exc.message : String(exc);
    }
    try {
      app.snapshot = await api.getState(app.sid);
      await refreshAux();
    } catch (exc) {
      app.error = exc instanceof ApiError ? exc.message : String(exc);
    }
    app.busy = false;
    render();
  }

  function readConfig(): SessionConfig {
    const field = (id: string) => byId<HTMLInputElement>(id).value.trim();
    const cfg: SessionConfig = {
      board: field("cfg-board"),
      goal: field("cfg-goal"),
      humanRole: byId<HTMLSelectElement>("cfg-role").value as "maker" | "breaker",
      engineStrategy: field("cfg-strategy"),
      seed: Number(field("cfg-seed") || "0"),
    };
    const bias = field("cfg-bias");
    if (bias !== "" && bias !== "1") cfg.bias = Number(bias);
    const budget = field("cfg-budget");
    if (budget !== "") cfg.budget = Number(budget);
    return cfg;
  }

  startBtn.addEventListener("click", async () => {
    setupError.textContent = "";
    startBtn.disabled = true;
    try {
      const created = await api.createSession(readConfig());
      const engineMark = created.state.humanRole === "maker" ? "B" : "M";
      app = {
        sid: created.sessionId,
        snapshot: created.state,
        tree: null,
        hints: null,
        treeSupported: true,
        extraRounds: 0,
        busy: false,
        error: null,
        lastEngine: created.state.history.filter((m) => m.player === engineMark),
      };
      await refreshAux();
      setup.hidden = true;
      game.hidden = false;
      render();
    } catch (exc) {
      setupError.textContent =
        exc instanceof ApiError ? `${exc.message}` : String(exc);
    } finally {
      startBtn.disabled = false;
    }
  });

  extendBtn.addEventListener("click", () => {
    if (app === null) return;
    app.extraRounds += 1;
    render();
  });

  resetBtn.addEventListener("click", () => {
    app = null;
    game.hidden = true;
    setup.hidden = false;
  });
}

startApp();
