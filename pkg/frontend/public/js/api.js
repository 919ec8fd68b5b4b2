// Typed client for the ahpkit session API. The UI never computes weights
// or consistency itself; every displayed number comes from these calls.
export class ApiError extends Error {
    status;
    constraint;
    detail;
    constructor(status, constraint, detail) {
        super(`${constraint}: ${detail}`);
        this.status = status;
        this.constraint = constraint;
        this.detail = detail;
    }
}
async function request(url, init) {
    const response = await fetch(url, init);
    const text = await response.text();
    if (!response.ok) {
        let constraint = `http-${response.status}`;
        let detail = text;
        try {
            const body = JSON.parse(text);
            constraint = body.error ?? constraint;
            detail = body.detail ?? detail;
        }
        catch {
            // non-JSON error body; keep raw text
        }
        throw new ApiError(response.status, constraint, detail);
    }
    return JSON.parse(text);
}
export class SessionApi {
    baseUrl;
    constructor(baseUrl = "") {
        this.baseUrl = baseUrl;
    }
    createSession(criteria, scale = "study") {
        return request(`${this.baseUrl}/api/sessions`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ criteria, scale }),
        });
    }
    putJudgment(sessionId, i, j, value) {
        return request(`${this.baseUrl}/api/sessions/${sessionId}/judgments`, {
            method: "PUT",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ i, j, value }),
        });
    }
    getReport(sessionId) {
        return request(`${this.baseUrl}/api/sessions/${sessionId}/report`);
    }
    matrixCsvUrl(sessionId) {
        return `${this.baseUrl}/api/sessions/${sessionId}/matrix.csv`;
    }
    async getMatrixCsv(sessionId) {
        const response = await fetch(this.matrixCsvUrl(sessionId));
        if (!response.ok) {
            throw new ApiError(response.status, `http-${response.status}`, await response.text());
        }
        return response.text();
    }
}
