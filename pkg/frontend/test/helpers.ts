import { expect } from "vitest";

import { SessionApi } from "../src/api.js";
import { App } from "../src/app.js";

export function mountApp(baseUrl: string): { app: App; root: HTMLElement } {
  document.body.innerHTML = '<main id="app"></main>';
  const root = document.getElementById("app")!;
  const app = new App(root, new SessionApi(baseUrl));
  app.start();
  return { app, root };
}

export function byTestId(root: ParentNode, testid: string): HTMLElement {
  const el = root.querySelector(`[data-testid="${testid}"]`);
  expect(el, `missing element [data-testid=${testid}]`).not.toBeNull();
  return el as HTMLElement;
}

export function click(root: ParentNode, testid: string): void {
  (byTestId(root, testid) as HTMLButtonElement).click();
}

export async function waitFor(
  condition: () => boolean,
  what = "condition",
  timeoutMs = 10_000,
): Promise<void> {
  const start = Date.now();
  while (!condition()) {
    if (Date.now() - start > timeoutMs) {
      throw new Error(`timed out waiting for ${what}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
}
