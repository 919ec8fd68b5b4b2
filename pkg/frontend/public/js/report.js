// Final (or provisional) session report: ranking table, CR verdict, the
// worst-triad hint, and CSV exports. Every number shown is taken verbatim
// from the report endpoint.
import { formatCr, formatWeight, setRaw } from "./format.js";
import { renderGauge } from "./gauge.js";
export function rankingCsv(state) {
    const lines = ["rank,factor,weight"];
    for (const row of state.report?.ranking ?? []) {
        lines.push(`${row.rank},${row.factor},${row.weight}`);
    }
    return lines.join("\n") + "\n";
}
export function renderReport(root, state, api, actions) {
    root.innerHTML = "";
    const report = state.report;
    if (!report || !state.sessionId) {
        root.textContent = "No report yet.";
        return;
    }
    const heading = document.createElement("h2");
    heading.textContent = report.complete ? "Final ranking" : "Provisional ranking";
    root.appendChild(heading);
    const gaugeSlot = document.createElement("div");
    renderGauge(gaugeSlot, report.consistency.cr);
    root.appendChild(gaugeSlot);
    const verdict = document.createElement("p");
    verdict.dataset.testid = "verdict";
    verdict.className = report.consistency.consistent ? "verdict-ok" : "verdict-bad";
    verdict.textContent = report.consistency.consistent
        ? `Consistent (CR ${formatCr(report.consistency.cr)} < 0.1)`
        : `Inconsistent (CR ${formatCr(report.consistency.cr)} ≥ 0.1)`;
    setRaw(verdict, report.consistency.cr);
    root.appendChild(verdict);
    if (report.worst_triad) {
        const hint = document.createElement("p");
        hint.dataset.testid = "triad-hint";
        hint.textContent = `Least consistent triad: ${report.worst_triad.items.join(" / ")}`;
        root.appendChild(hint);
    }
    const table = document.createElement("table");
    table.dataset.testid = "ranking";
    const head = table.createTHead().insertRow();
    for (const title of ["Rank", "Factor", "Relative Importance"]) {
        const cell = document.createElement("th");
        cell.textContent = title;
        head.appendChild(cell);
    }
    const body = table.createTBody();
    for (const row of report.ranking) {
        const tr = body.insertRow();
        tr.dataset.testid = `rank-${row.rank}`;
        tr.insertCell().textContent = String(row.rank);
        tr.insertCell().textContent = row.factor;
        const weightCell = tr.insertCell();
        weightCell.textContent = formatWeight(row.weight);
        setRaw(weightCell, row.weight);
    }
    root.appendChild(table);
    const downloads = document.createElement("p");
    const rankingLink = document.createElement("a");
    rankingLink.dataset.testid = "download-ranking";
    rankingLink.download = "ranking.csv";
    rankingLink.href = `data:text/csv;charset=utf-8,${encodeURIComponent(rankingCsv(state))}`;
    rankingLink.textContent = "Download ranking CSV";
    downloads.appendChild(rankingLink);
    downloads.appendChild(document.createTextNode(" · "));
    const matrixLink = document.createElement("a");
    matrixLink.dataset.testid = "download-matrix";
    matrixLink.download = "matrix.csv";
    matrixLink.href = api.matrixCsvUrl(state.sessionId);
    matrixLink.textContent = "Download matrix CSV";
    downloads.appendChild(matrixLink);
    root.appendChild(downloads);
    const revise = document.createElement("button");
    revise.dataset.testid = "revise";
    revise.textContent = "Revise answers";
    revise.addEventListener("click", () => actions.reviseAnswers());
    root.appendChild(revise);
}
