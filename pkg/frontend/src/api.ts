// Thin typed client for the qdilog service. The explorer never computes
// any algebra itself: everything comes from these five endpoints.

import type {
  ApiError,
  CompareResponse,
  FramedQuiver,
  GreenSeqJson,
  MutateResponse,
  QuiverJson,
  SeriesJson,
} from "./types.js";

export class ServiceError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, body: ApiError) {
    super(body.message);
    this.code = body.code;
    this.status = status;
  }
}

export class Client {
  constructor(readonly baseUrl: string = "http://127.0.0.1:8764") {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      let payload: ApiError = { code: "unknown", message: response.statusText };
      try {
        payload = (await response.json()) as ApiError;
      } catch {
        // keep the fallback payload
      }
      throw new ServiceError(response.status, payload);
    }
    return (await response.json()) as T;
  }

  frame(quiver: QuiverJson): Promise<FramedQuiver> {
    return this.post("/frame", { quiver });
  }

  mutate(framed: FramedQuiver, k: number): Promise<MutateResponse> {
    return this.post("/mutate", { framed, k });
  }

  evalSeq(quiver: QuiverJson, seq: number[], D: number): Promise<SeriesJson> {
    return this.post("/eval", { quiver, seq, D });
  }

  compare(
    quiver: QuiverJson,
    seq1: number[],
    seq2: number[],
    D: number,
  ): Promise<CompareResponse> {
    return this.post("/compare", { quiver, seq1, seq2, D });
  }

  search(
    framed: FramedQuiver,
    maxLen: number,
    maximalOnly: boolean,
  ): Promise<{ sequences: GreenSeqJson[] }> {
    return this.post("/search", {
      framed,
      max_len: maxLen,
      maximal_only: maximalOnly,
    });
  }
}

/**
 * Discards out-of-order responses: each `issue()` hands out a ticket and
 * only the most recently issued ticket is accepted back.
 */
export class LatestOnly {
  private counter = 0;

  issue(): number {
    this.counter += 1;
    return this.counter;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.counter;
  }
}
