import { describe, expect, it } from "vitest";

import {
  applyMutation,
  canRedo,
  canUndo,
  createState,
  current,
  exportBundle,
  exportGreenSeq,
  importBundle,
  pin,
  redoOne,
  replayConsistent,
  sequence,
  undo,
} from "../src/state.js";
import type {
  FramedQuiver,
  MutateResponse,
  QuiverJson,
} from "../src/types.js";
import { sameFramed } from "../src/types.js";

// recorded service responses for the A2 walk mu_1 then mu_2 (left branch)
const A2: QuiverJson = { n: 2, arrows: [[1, 2, 1]] };

const FRAMED_A2: FramedQuiver = {
  n: 2,
  b: [
    [0, 1, 1, 0],
    [-1, 0, 0, 1],
    [-1, 0, 0, 0],
    [0, -1, 0, 0],
  ],
};

const AFTER_MU1: MutateResponse = {
  framed: {
    n: 2,
    b: [
      [0, -1, -1, 0],
      [1, 0, 0, 1],
      [1, 0, 0, 0],
      [0, -1, 0, 0],
    ],
  },
  beta: [1, 0],
  eps: 1,
  colors: ["red", "green"],
  maximal: false,
};

const AFTER_MU1_MU2: MutateResponse = {
  framed: {
    n: 2,
    b: [
      [0, 1, -1, 0],
      [-1, 0, 0, -1],
      [1, 0, 0, 0],
      [0, 1, 0, 0],
    ],
  },
  beta: [0, 1],
  eps: 1,
  colors: ["red", "red"],
  maximal: true,
};

function walkLeftBranch() {
  let state = createState(A2, FRAMED_A2);
  state = applyMutation(state, 1, AFTER_MU1);
  state = applyMutation(state, 2, AFTER_MU1_MU2);
  return state;
}

describe("explorer state", () => {
  it("records steps with their c-vector data", () => {
    const state = walkLeftBranch();
    expect(sequence(state)).toEqual([1, 2]);
    expect(state.steps[0]).toEqual({ vertex: 1, beta: [1, 0], eps: 1 });
    expect(state.steps[1]).toEqual({ vertex: 2, beta: [0, 1], eps: 1 });
    expect(current(state).maximal).toBe(true);
    expect(current(state).colors).toEqual(["red", "red"]);
  });

  it("keeps the replay invariant on every mutation", () => {
    const state = walkLeftBranch();
    expect(replayConsistent(state)).toBe(true);
    expect(state.chain).toHaveLength(3);
  });

  it("rejects histories that break the replay invariant", () => {
    const state = createState(A2, FRAMED_A2);
    const broken: MutateResponse = {
      ...AFTER_MU1,
      framed: { n: 2, b: [[0, 1], [1, 0]] }, // wrong size and not antisymmetric
    };
    expect(() => applyMutation(state, 1, broken)).toThrow(/replay/);
  });

  it("undo restores the previous quiver and redo replays it", () => {
    let state = walkLeftBranch();
    expect(canUndo(state)).toBe(true);
    state = undo(state);
    expect(sequence(state)).toEqual([1]);
    expect(sameFramed(current(state).framed, AFTER_MU1.framed)).toBe(true);
    expect(canRedo(state)).toBe(true);
    state = redoOne(state);
    expect(sequence(state)).toEqual([1, 2]);
    expect(current(state).maximal).toBe(true);
  });

  it("undo after one mutation restores the initial quiver", () => {
    let state = createState(A2, FRAMED_A2);
    state = applyMutation(state, 1, AFTER_MU1);
    state = undo(state);
    expect(sameFramed(current(state).framed, FRAMED_A2)).toBe(true);
    expect(sequence(state)).toEqual([]);
    expect(canUndo(state)).toBe(false);
  });

  it("a new mutation clears the redo stack", () => {
    let state = walkLeftBranch();
    state = undo(state);
    state = undo(state);
    state = applyMutation(state, 1, AFTER_MU1);
    expect(canRedo(state)).toBe(false);
  });

  it("pins the current sequence for comparison", () => {
    let state = walkLeftBranch();
    state = pin(state);
    expect(state.pinned).toEqual([1, 2]);
    state = undo(state);
    expect(state.pinned).toEqual([1, 2]); // pin survives further editing
  });

  it("exports green-sequence JSON in the CLI shape", () => {
    const state = walkLeftBranch();
    expect(exportGreenSeq(state)).toEqual({
      seq: [1, 2],
      steps: [
        { beta: [1, 0], eps: 1 },
        { beta: [0, 1], eps: 1 },
      ],
    });
    const bundle = exportBundle(state);
    expect(bundle.quiver).toEqual(A2);
  });

  it("imports an exported bundle by replaying through the service", async () => {
    const original = walkLeftBranch();
    const bundle = exportBundle(original);
    const responses: Record<string, MutateResponse> = {
      "1": AFTER_MU1,
      "2": AFTER_MU1_MU2,
    };
    const restored = await importBundle(
      bundle,
      async () => FRAMED_A2,
      async (_f, k) => responses[String(k)],
    );
    expect(sequence(restored)).toEqual([1, 2]);
    expect(sameFramed(current(restored).framed, current(original).framed)).toBe(
      true,
    );
  });
});
