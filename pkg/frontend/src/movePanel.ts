// Status and feedback: whose move it is, what the engine just did, why a
// submission was rejected, and the final verdict with its witness.

import { edgeFromJson, edgeLabel } from "./edges.js";
import type { MoveJson, SessionState, WitnessJson } from "./types.js";
import type { ViewModel } from "./state.js";

export interface PanelModel {
  view: ViewModel;
  state: SessionState;
  lastEngine: MoveJson[];
  error: string | null;
  busy: boolean;
}

function witnessText(witness: WitnessJson | undefined): string {
  if (witness === undefined) return "";
  if (Array.isArray(witness)) {
    return `witness clique: {${witness.map((v) => v.label).join(",")}}`;
  }
  const lefts = witness.left.map((v) => "L" + v.label).join(",");
  const rights = witness.right.map((v) => "R" + v.label).join(",");
  return `witness biclique: {${lefts}} x {${rights}}`;
}

export function renderPanel(container: HTMLElement, model: PanelModel): void {
  container.textContent = "";
  const { state, view } = model;

  const head = document.createElement("p");
  head.className = "panel-head";
  head.textContent =
    `${state.board} / ${state.goal} - you are ${state.humanRole}, ` +
    `engine plays ${state.engineStrategy}` +
    (state.bias > 1 ? `, bias ${state.bias}` : "");
  container.appendChild(head);

  const status = document.createElement("p");
  status.className = view.gameOver ? "status over" : "status";
  status.textContent = model.busy ? "waiting for the service..." : view.status;
  container.appendChild(status);

  if (model.lastEngine.length > 0) {
    const reply = document.createElement("p");
    reply.className = "engine-reply";
    reply.textContent =
      "engine claimed " +
      model.lastEngine.map((m) => edgeLabel(edgeFromJson(m.edge))).join(", ");
    container.appendChild(reply);
  }

  if (model.error !== null) {
    const err = document.createElement("p");
    err.className = "error";
    err.textContent = model.error;
    container.appendChild(err);
  }

  const w = witnessText(state.witness);
  if (view.gameOver && w) {
    const witness = document.createElement("p");
    witness.className = "witness-line";
    witness.textContent = w;
    container.appendChild(witness);
  }
}
