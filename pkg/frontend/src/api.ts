// Typed client for the ahpkit session API. The UI never computes weights
// or consistency itself; every displayed number comes from these calls.

export type Pair = { i: number; j: number; left: string; right: string };

export type ScaleEntry = { value: string; float: number; label: string };

export type WorstTriad = {
  indices: [number, number, number];
  items: [string, string, string];
  deviation: number;
};

export type SessionCreated = {
  session_id: string;
  criteria: string[];
  scale: ScaleEntry[];
  pair_count: number;
  answered_count: number;
  next_pair: Pair | null;
};

export type JudgmentAck = {
  cr_so_far: number;
  basis: string[];
  worst_triad: WorstTriad | null;
  answered_count: number;
  next_pair: Pair | null;
};

export type Consistency = {
  lambda_max: number;
  ci: number;
  ri: number;
  cr: number;
  consistent: boolean;
  order: number;
};

export type RankingRow = { rank: number; factor: string; weight: number };

export type SessionReport = {
  session_id: string;
  criteria: string[];
  answered_count: number;
  pair_count: number;
  complete: boolean;
  weights: { rowsum: Record<string, number>; eigenvector: Record<string, number> };
  ranking: RankingRow[];
  consistency: Consistency;
  worst_triad: WorstTriad | null;
};

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly constraint: string,
    readonly detail: string,
  ) {
    super(`${constraint}: ${detail}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const text = await response.text();
  if (!response.ok) {
    let constraint = `http-${response.status}`;
    let detail = text;
    try {
      const body = JSON.parse(text) as { error?: string; detail?: string };
      constraint = body.error ?? constraint;
      detail = body.detail ?? detail;
    } catch {
      // non-JSON error body; keep raw text
    }
    throw new ApiError(response.status, constraint, detail);
  }
  return JSON.parse(text) as T;
}

export class SessionApi {
  constructor(readonly baseUrl: string = "") {}

  createSession(criteria: string[], scale: string = "study"): Promise<SessionCreated> {
    return request<SessionCreated>(`${this.baseUrl}/api/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ criteria, scale }),
    });
  }

  putJudgment(sessionId: string, i: number, j: number, value: string): Promise<JudgmentAck> {
    return request<JudgmentAck>(`${this.baseUrl}/api/sessions/${sessionId}/judgments`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ i, j, value }),
    });
  }

  getReport(sessionId: string): Promise<SessionReport> {
    return request<SessionReport>(`${this.baseUrl}/api/sessions/${sessionId}/report`);
  }

  matrixCsvUrl(sessionId: string): string {
    return `${this.baseUrl}/api/sessions/${sessionId}/matrix.csv`;
  }

  async getMatrixCsv(sessionId: string): Promise<string> {
    const response = await fetch(this.matrixCsvUrl(sessionId));
    if (!response.ok) {
      throw new ApiError(response.status, `http-${response.status}`, await response.text());
    }
    return response.text();
  }
}
