// Full 12-criterion session: answer all 66 questions through the UI, then
// re-rank the exported matrix CSV with the command-line tool and require
// the identical ranking.

import { execFile } from "node:child_process";
import { mkdtemp, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";
import { expect, inject, test } from "vitest";

import { SessionApi } from "../src/api.js";
import { DEFAULT_CRITERIA } from "../src/app.js";
import { byTestId, click, mountApp, waitFor } from "./helpers.js";

const execFileAsync = promisify(execFile);
const baseUrl = inject("baseUrl");

test("66 answered questions; CLI re-ranking of the export is identical", async () => {
  const { app, root } = mountApp(baseUrl);
  const api = new SessionApi(baseUrl);

  await app.createSession(DEFAULT_CRITERIA, "study");
  await waitFor(() => app.store.get().view === "question", "question view");
  expect(byTestId(root, "progress").textContent).toBe("0 / 66");

  const values = ["1", "2", "1/2", "3", "1/3"];
  for (let k = 0; k < 66; k++) {
    click(root, `scale-${values[k % values.length]}`);
    await waitFor(
      () => app.store.get().answeredCount === k + 1 || app.store.get().view === "report",
      `answer ${k + 1}`,
    );
  }
  await waitFor(() => app.store.get().view === "report", "report view");

  const sessionId = app.store.get().sessionId!;
  const report = await api.getReport(sessionId);
  expect(report.complete).toBe(true);
  expect(report.ranking).toHaveLength(12);

  // displayed ranking mirrors the API bit-for-bit
  for (const row of report.ranking) {
    const tr = byTestId(root, `rank-${row.rank}`);
    expect(tr.textContent).toContain(row.factor);
    expect(tr.querySelector<HTMLElement>("[data-raw]")!.dataset.raw).toBe(
      String(row.weight),
    );
  }

  // the ranking CSV download reflects the same rows
  const href = byTestId(root, "download-ranking").getAttribute("href")!;
  const csv = decodeURIComponent(href.replace("data:text/csv;charset=utf-8,", ""));
  const lines = csv.trim().split("\n");
  expect(lines[0]).toBe("rank,factor,weight");
  expect(lines).toHaveLength(13);
  expect(lines[1]).toBe(
    `${report.ranking[0]!.rank},${report.ranking[0]!.factor},${report.ranking[0]!.weight}`,
  );

  // export the matrix and re-rank it with the CLI
  const matrixHref = byTestId(root, "download-matrix").getAttribute("href")!;
  expect(matrixHref).toBe(api.matrixCsvUrl(sessionId));
  const matrixCsv = await api.getMatrixCsv(sessionId);
  expect(matrixCsv.split("\n")[0]).toBe("row,col,value,provisional");
  expect(matrixCsv).not.toContain(",yes");  // nothing provisional remains

  const dir = await mkdtemp(join(tmpdir(), "ahpkit-ui-"));
  const matrixPath = join(dir, "session-matrix.csv");
  await writeFile(matrixPath, matrixCsv, "utf-8");
  const { stdout } = await execFileAsync("python3", [
    "-m", "ahpkit.cli", "rank", matrixPath, "--method", "eigenvector",
  ]);
  const cli = JSON.parse(stdout) as {
    ranking: { rank: number; factor: string; weight: number }[];
    consistency: { cr: number };
  };
  expect(cli.ranking).toEqual(report.ranking);
  expect(cli.consistency.cr).toBe(report.consistency.cr);
});
