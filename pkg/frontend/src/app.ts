// Application wiring: setup form -> question wizard -> report. State only
// changes on acknowledged server responses (no optimistic updates).

import { ApiError, SessionApi, type Pair } from "./api.js";
import { activePair, renderQuestion } from "./question.js";
import { renderReport } from "./report.js";
import { pairKey, Store } from "./state.js";

export class App {
  readonly store = new Store();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: SessionApi,
  ) {
    this.store.subscribe(() => this.render());
  }

  start(): void {
    this.render();
  }

  async createSession(criteria: string[], scale: string = "study"): Promise<void> {
    this.store.set({ busy: true, error: null });
    try {
      const created = await this.api.createSession(criteria, scale);
      this.store.set({
        view: "question",
        sessionId: created.session_id,
        criteria: created.criteria,
        scale: created.scale,
        pairCount: created.pair_count,
        answeredCount: created.answered_count,
        answered: {},
        currentPair: null,
        serverNextPair: created.next_pair,
        crSoFar: null,
        worstTriad: null,
        report: null,
        busy: false,
      });
    } catch (err) {
      this.store.set({ busy: false, error: describe(err) });
    }
  }

  async answer(value: string): Promise<void> {
    const state = this.store.get();
    const pair = activePair(state);
    if (!state.sessionId || !pair) return;
    this.store.set({ busy: true });
    try {
      const ack = await this.api.putJudgment(state.sessionId, pair.i, pair.j, value);
      this.store.set({
        answered: { ...state.answered, [pairKey(pair.i, pair.j)]: value },
        answeredCount: ack.answered_count,
        crSoFar: ack.cr_so_far,
        worstTriad: ack.worst_triad,
        serverNextPair: ack.next_pair,
        currentPair: null,
        error: null,
        busy: false,
      });
      if (ack.next_pair === null) {
        await this.showReport();
      }
    } catch (err) {
      // a rejected judgment shows inline and does not advance the wizard
      this.store.set({ busy: false, error: describe(err) });
    }
  }

  revisit(pair: Pair): void {
    this.store.set({ view: "question", currentPair: pair, error: null });
  }

  async showReport(): Promise<void> {
    const state = this.store.get();
    if (!state.sessionId) return;
    this.store.set({ busy: true });
    try {
      const report = await this.api.getReport(state.sessionId);
      this.store.set({ view: "report", report, busy: false, error: null });
    } catch (err) {
      this.store.set({ busy: false, error: describe(err) });
    }
  }

  private render(): void {
    const state = this.store.get();
    if (state.view === "setup") {
      this.renderSetup();
      return;
    }
    if (state.view === "question") {
      renderQuestion(this.root, state, {
        answer: (value) => void this.answer(value),
        revisit: (pair) => this.revisit(pair),
        showReport: () => void this.showReport(),
      });
      return;
    }
    renderReport(this.root, state, this.api, {
      reviseAnswers: () => this.store.set({ view: "question", currentPair: null }),
    });
  }

  private renderSetup(): void {
    this.root.innerHTML = "";
    const heading = document.createElement("h2");
    heading.textContent = "New elicitation session";
    this.root.appendChild(heading);

    const label = document.createElement("label");
    label.textContent = "Criteria (one per line):";
    this.root.appendChild(label);

    const input = document.createElement("textarea");
    input.dataset.testid = "criteria-input";
    input.rows = 12;
    input.value = DEFAULT_CRITERIA.join("\n");
    this.root.appendChild(input);

    const start = document.createElement("button");
    start.dataset.testid = "start";
    start.textContent = "Start";
    start.addEventListener("click", () => {
      const criteria = input.value.split("\n").map((c) => c.trim()).filter(Boolean);
      void this.createSession(criteria);
    });
    this.root.appendChild(start);

    const state = this.store.get();
    if (state.error) {
      const error = document.createElement("p");
      error.className = "error";
      error.dataset.testid = "error";
      error.textContent = state.error;
      this.root.appendChild(error);
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.constraint}: ${err.detail}`;
  return err instanceof Error ? err.message : String(err);
}

export const DEFAULT_CRITERIA = [
  "Back", "Major", "CGPA", "MGPA", "Research", "Interview",
  "UDM", "LDM", "GREQ", "GREV", "GRES", "Tier",
];

export function boot(): App {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  const app = new App(root, new SessionApi(""));
  app.start();
  return app;
}
