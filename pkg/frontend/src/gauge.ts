// Live consistency-ratio gauge: green below the 0.1 acceptability bound,
// red at or above it.

import { formatCr, setRaw } from "./format.js";

export function renderGauge(root: HTMLElement, cr: number | null): void {
  root.innerHTML = "";
  const gauge = document.createElement("div");
  gauge.className = "gauge";
  gauge.dataset.testid = "cr-gauge";
  if (cr === null) {
    gauge.classList.add("gauge-empty");
    gauge.textContent = "CR —";
  } else {
    const red = cr >= 0.1;
    gauge.classList.add(red ? "gauge-red" : "gauge-green");
    gauge.textContent = `CR ${formatCr(cr)}`;
    setRaw(gauge, cr);
  }
  root.appendChild(gauge);
}
