// Wire types shared with the qdilog service (1-based vertices throughout).

export interface QuiverJson {
  n: number;
  arrows: number[][]; // [source, target, multiplicity]
}

export interface FramedQuiver {
  n: number;
  b: number[][]; // antisymmetric 2n x 2n, frozen vertices n+1..2n
}

export interface MutateResponse {
  framed: FramedQuiver;
  beta: number[];
  eps: 1 | -1;
  colors: ("green" | "red")[];
  maximal: boolean;
}

export interface SeriesTerm {
  exp: number[];
  coeff: string;
}

export interface SeriesJson {
  offset: number[];
  D: number;
  terms: SeriesTerm[];
}

export interface FirstDiff {
  monomial: number[];
  left: string;
  right: string;
}

export interface CompareResponse {
  frozen_iso: boolean;
  equal_series: boolean;
  first_diff: FirstDiff | null;
}

export interface Step {
  vertex: number; // 1-based
  beta: number[];
  eps: 1 | -1;
}

export interface GreenSeqJson {
  seq: number[];
  steps: { beta: number[]; eps: number }[];
}

export interface ApiError {
  code: string;
  message: string;
}

export function deepEqualMatrix(a: number[][], b: number[][]): boolean {
  if (a.length !== b.length) return false;
  for (let i = 0; i < a.length; i++) {
    if (a[i].length !== b[i].length) return false;
    for (let j = 0; j < a[i].length; j++) {
      if (a[i][j] !== b[i][j]) return false;
    }
  }
  return true;
}

export function sameFramed(a: FramedQuiver, b: FramedQuiver): boolean {
  return a.n === b.n && deepEqualMatrix(a.b, b.b);
}
