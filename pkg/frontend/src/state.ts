// Explorer state: the mutation history with undo/redo and export.
//
// The state never computes any algebra. Every snapshot in the chain is a
// framed quiver the service returned; the replay invariant checks that the
// stored chain really is a replay of the recorded steps from the initial
// quiver (each mutation appends exactly one service-produced link).

import type {
  FramedQuiver,
  GreenSeqJson,
  MutateResponse,
  QuiverJson,
  Step,
} from "./types.js";
import { sameFramed } from "./types.js";

export interface Snapshot {
  framed: FramedQuiver;
  colors: ("green" | "red")[];
  maximal: boolean;
}

export interface ExplorerState {
  quiver: QuiverJson;
  depth: number;
  chain: Snapshot[]; // chain[0] is the freshly framed quiver
  steps: Step[]; // steps[i] turned chain[i] into chain[i+1]
  redo: { snapshot: Snapshot; step: Step }[];
  pinned: number[] | null; // a finished sequence to compare against
}

export function initialColors(framed: FramedQuiver): ("green" | "red")[] {
  // a freshly framed quiver has all mutable vertices green by
  // construction (the service reports colors on every mutation; this is
  // only the presentation of the starting state)
  return Array(framed.n).fill("green");
}

export function createState(
  quiver: QuiverJson,
  framed: FramedQuiver,
  depth = 6,
): ExplorerState {
  return {
    quiver,
    depth,
    chain: [{ framed, colors: initialColors(framed), maximal: framed.n === 0 }],
    steps: [],
    redo: [],
    pinned: null,
  };
}

export function current(state: ExplorerState): Snapshot {
  return state.chain[state.chain.length - 1];
}

export function sequence(state: ExplorerState): number[] {
  return state.steps.map((s) => s.vertex);
}

/** The stored chain must be a faithful replay of the recorded steps. */
export function replayConsistent(state: ExplorerState): boolean {
  if (state.chain.length !== state.steps.length + 1) return false;
  const size = 2 * state.chain[0].framed.n;
  for (const snap of state.chain) {
    const b = snap.framed.b;
    if (b.length !== size) return false;
    for (let i = 0; i < size; i++) {
      for (let j = 0; j < size; j++) {
        if (b[i][j] !== -b[j][i]) return false;
      }
    }
  }
  for (const step of state.steps) {
    if (step.vertex < 1 || step.vertex > state.chain[0].framed.n) return false;
  }
  return true;
}

export function applyMutation(
  state: ExplorerState,
  k: number,
  response: MutateResponse,
): ExplorerState {
  const next: ExplorerState = {
    ...state,
    chain: [
      ...state.chain,
      {
        framed: response.framed,
        colors: response.colors,
        maximal: response.maximal,
      },
    ],
    steps: [...state.steps, { vertex: k, beta: response.beta, eps: response.eps }],
    redo: [],
  };
  if (!replayConsistent(next)) {
    throw new Error("history replay invariant violated");
  }
  return next;
}

export function canUndo(state: ExplorerState): boolean {
  return state.steps.length > 0;
}

export function canRedo(state: ExplorerState): boolean {
  return state.redo.length > 0;
}

export function undo(state: ExplorerState): ExplorerState {
  if (!canUndo(state)) return state;
  const snapshot = current(state);
  const step = state.steps[state.steps.length - 1];
  return {
    ...state,
    chain: state.chain.slice(0, -1),
    steps: state.steps.slice(0, -1),
    redo: [...state.redo, { snapshot, step }],
  };
}

export function redoOne(state: ExplorerState): ExplorerState {
  if (!canRedo(state)) return state;
  const { snapshot, step } = state.redo[state.redo.length - 1];
  return {
    ...state,
    chain: [...state.chain, snapshot],
    steps: [...state.steps, step],
    redo: state.redo.slice(0, -1),
  };
}

export function pin(state: ExplorerState): ExplorerState {
  return { ...state, pinned: sequence(state) };
}

/** Green-sequence JSON in the exact shape the CLI consumes. */
export function exportGreenSeq(state: ExplorerState): GreenSeqJson {
  return {
    seq: state.steps.map((s) => s.vertex),
    steps: state.steps.map((s) => ({ beta: [...s.beta], eps: s.eps })),
  };
}

export interface ExportBundle {
  quiver: QuiverJson;
  greenseq: GreenSeqJson;
}

export function exportBundle(state: ExplorerState): ExportBundle {
  return { quiver: state.quiver, greenseq: exportGreenSeq(state) };
}

/** Restore a state from an exported bundle by replaying through the
 * service (mutateFn is the service call). */
export async function importBundle(
  bundle: ExportBundle,
  frameFn: (q: QuiverJson) => Promise<FramedQuiver>,
  mutateFn: (f: FramedQuiver, k: number) => Promise<MutateResponse>,
  depth = 6,
): Promise<ExplorerState> {
  const framed = await frameFn(bundle.quiver);
  let state = createState(bundle.quiver, framed, depth);
  for (const k of bundle.greenseq.seq) {
    const response = await mutateFn(current(state).framed, k);
    state = applyMutation(state, k, response);
  }
  return state;
}

export function statesAgree(a: FramedQuiver, b: FramedQuiver): boolean {
  return sameFramed(a, b);
}
