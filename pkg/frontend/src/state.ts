// Minimal observable store; views re-render on every committed change.

import type { Pair, ScaleEntry, SessionReport, WorstTriad } from "./api.js";

export type View = "setup" | "question" | "report";

export type UiState = {
  view: View;
  sessionId: string | null;
  criteria: string[];
  scale: ScaleEntry[];
  pairCount: number;
  answeredCount: number;
  // mirror of acknowledged judgments, keyed "i,j"; server stays the source
  // of truth for every derived number
  answered: Record<string, string>;
  currentPair: Pair | null;
  serverNextPair: Pair | null;
  crSoFar: number | null;
  worstTriad: WorstTriad | null;
  report: SessionReport | null;
  error: string | null;
  busy: boolean;
};

export const initialState: UiState = {
  view: "setup",
  sessionId: null,
  criteria: [],
  scale: [],
  pairCount: 0,
  answeredCount: 0,
  answered: {},
  currentPair: null,
  serverNextPair: null,
  crSoFar: null,
  worstTriad: null,
  report: null,
  error: null,
  busy: false,
};

export class Store {
  private state: UiState = { ...initialState };
  private listeners = new Set<(state: UiState) => void>();

  get(): UiState {
    return this.state;
  }

  set(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  reset(): void {
    this.set({ ...initialState });
  }

  subscribe(listener: (state: UiState) => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }
}

export function pairKey(i: number, j: number): string {
  return `${i},${j}`;
}

export function allPairs(criteria: string[]): Pair[] {
  const pairs: Pair[] = [];
  for (let i = 0; i < criteria.length; i++) {
    for (let j = i + 1; j < criteria.length; j++) {
      pairs.push({ i, j, left: criteria[i]!, right: criteria[j]! });
    }
  }
  return pairs;
}
