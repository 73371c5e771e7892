// Wiring: DOM events, service calls, and panels. One in-flight request per
// user action; series evaluations are guarded against stale responses.

import { Client, LatestOnly, ServiceError } from "./api.js";
import { formatSeries, renderSvg } from "./render.js";
import {
  ExplorerState,
  applyMutation,
  canRedo,
  canUndo,
  createState,
  current,
  exportBundle,
  pin,
  redoOne,
  sequence,
  undo,
} from "./state.js";
import type { QuiverJson } from "./types.js";

const PRESETS: Record<string, QuiverJson> = {
  A2: { n: 2, arrows: [[1, 2, 1]] },
  A3: { n: 3, arrows: [[1, 2, 1], [2, 3, 1]] },
  Kronecker: { n: 2, arrows: [[1, 2, 2]] },
};

const client = new Client(
  (window as { QDILOG_URL?: string }).QDILOG_URL ?? "http://127.0.0.1:8764",
);
const evalGate = new LatestOnly();

let state: ExplorerState | null = null;
let busy = false;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setError(message: string | null) {
  const banner = el<HTMLDivElement>("error");
  banner.textContent = message ?? "";
  banner.style.display = message ? "block" : "none";
}

function describeError(err: unknown): string {
  if (err instanceof ServiceError) return `${err.code}: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}

function renderAll() {
  if (!state) return;
  const snap = current(state);
  el<HTMLDivElement>("canvas").innerHTML = renderSvg(snap.framed, snap.colors);
  el<HTMLDivElement>("maximal-banner").style.display = snap.maximal
    ? "block"
    : "none";
  const rows = state.steps
    .map(
      (s, i) =>
        `<tr><td>${i + 1}</td><td>μ<sub>${s.vertex}</sub></td>` +
        `<td>(${s.beta.join(", ")})</td><td>${s.eps > 0 ? "+1" : "−1"}</td></tr>`,
    )
    .join("");
  el<HTMLTableSectionElement>("steps-body").innerHTML = rows;
  el<HTMLSpanElement>("seq-label").textContent =
    sequence(state).join(", ") || "(empty)";
  el<HTMLButtonElement>("undo").disabled = !canUndo(state);
  el<HTMLButtonElement>("redo").disabled = !canRedo(state);
  el<HTMLSpanElement>("pinned-label").textContent = state.pinned
    ? state.pinned.join(", ") || "(empty)"
    : "none";
  for (const g of el<HTMLDivElement>("canvas").querySelectorAll("g.mutable")) {
    g.addEventListener("click", () => {
      const k = Number((g as SVGGElement).dataset.vertex);
      void mutateAt(k);
    });
  }
  void refreshSeries();
}

async function refreshSeries() {
  if (!state) return;
  const ticket = evalGate.issue();
  const target = el<HTMLDivElement>("series");
  target.textContent = "computing…";
  try {
    const series = await client.evalSeq(
      state.quiver,
      sequence(state),
      state.depth,
    );
    if (!evalGate.isCurrent(ticket)) return; // stale response: drop it
    target.textContent = formatSeries(series.terms);
  } catch (err) {
    if (evalGate.isCurrent(ticket)) target.textContent = describeError(err);
  }
}

async function mutateAt(k: number) {
  if (!state || busy) return;
  busy = true;
  setError(null);
  try {
    const response = await client.mutate(current(state).framed, k);
    state = applyMutation(state, k, response);
    renderAll();
  } catch (err) {
    setError(describeError(err));
  } finally {
    busy = false;
  }
}

async function loadQuiver(quiver: QuiverJson) {
  setError(null);
  try {
    const framed = await client.frame(quiver);
    const depth = Number(el<HTMLInputElement>("depth").value) || 6;
    state = createState(quiver, framed, depth);
    el<HTMLDivElement>("compare-result").textContent = "";
    renderAll();
  } catch (err) {
    setError(describeError(err));
  }
}

async function compareWithPinned() {
  if (!state || state.pinned === null) return;
  const target = el<HTMLDivElement>("compare-result");
  target.textContent = "comparing…";
  try {
    const result = await client.compare(
      state.quiver,
      state.pinned,
      sequence(state),
      state.depth,
    );
    const verdicts = [
      `frozen isomorphism: ${result.frozen_iso ? "yes" : "no"}`,
      `equal series: ${result.equal_series ? "yes" : "no"}`,
    ];
    if (result.first_diff) {
      verdicts.push(
        `first difference at y^(${result.first_diff.monomial.join(",")}): ` +
          `${result.first_diff.left} vs ${result.first_diff.right}`,
      );
    }
    target.textContent = verdicts.join("  —  ");
  } catch (err) {
    target.textContent = describeError(err);
  }
}

function exportHistory() {
  if (!state) return;
  const bundle = exportBundle(state);
  const text = JSON.stringify(bundle, null, 2);
  el<HTMLTextAreaElement>("export-area").value = text;
  const blob = new Blob([text], { type: "application/json" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "greenseq.json";
  link.click();
  URL.revokeObjectURL(link.href);
}

function setup() {
  for (const [name, quiver] of Object.entries(PRESETS)) {
    const button = document.createElement("button");
    button.textContent = name;
    button.addEventListener("click", () => void loadQuiver(quiver));
    el<HTMLDivElement>("presets").appendChild(button);
  }
  el<HTMLButtonElement>("load").addEventListener("click", () => {
    try {
      const quiver = JSON.parse(
        el<HTMLTextAreaElement>("quiver-input").value,
      ) as QuiverJson;
      void loadQuiver(quiver);
    } catch (err) {
      setError(describeError(err));
    }
  });
  el<HTMLButtonElement>("undo").addEventListener("click", () => {
    if (state) {
      state = undo(state);
      renderAll();
    }
  });
  el<HTMLButtonElement>("redo").addEventListener("click", () => {
    if (state) {
      state = redoOne(state);
      renderAll();
    }
  });
  el<HTMLButtonElement>("pin").addEventListener("click", () => {
    if (state) {
      state = pin(state);
      renderAll();
    }
  });
  el<HTMLButtonElement>("compare").addEventListener("click", () => {
    void compareWithPinned();
  });
  el<HTMLButtonElement>("export").addEventListener("click", exportHistory);
  el<HTMLInputElement>("depth").addEventListener("change", () => {
    if (state) {
      state = { ...state, depth: Number(el<HTMLInputElement>("depth").value) || 6 };
      void refreshSeries();
    }
  });
  void loadQuiver(PRESETS.A2);
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", setup);
}
