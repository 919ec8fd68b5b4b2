"""HTTP/JSON session API behind the elicitation UI, on the stdlib server.

Endpoints (JSON bodies, UTF-8):

* ``POST /api/sessions`` {criteria[], scale?} -> {session_id, next_pair, ...}
* ``PUT  /api/sessions/{id}/judgments`` {i, j, value}
  -> {cr_so_far, answered_count, next_pair, worst_triad}
* ``GET  /api/sessions/{id}/report`` -> weights (both methods), ranking,
  consistency report, worst triad
* ``GET  /api/sessions/{id}/matrix.csv`` -> pair-list CSV, unanswered pairs
  as 1 with provisional=yes

Unknown sessions give 404; invalid judgments give 422 naming the violated
constraint. Anything else under the server root serves the static UI
bundle. GETs are side-effect free; per-session writes serialize.
"""

from __future__ import annotations

import json
import mimetypes
import re
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .errors import DomainError, ParseError
from .ingest import _num, write_matrix_pairs_csv
from .session import SessionStore, resolve_scale

_SESSION_URL = re.compile(r"^/api/sessions/([0-9a-f]+)(/.*)?$")


def _render_numbers(obj):
    """Apply the shared 6-significant-digit JSON number convention."""
    if isinstance(obj, float):
        return _num(obj)
    if isinstance(obj, dict):
        return {k: _render_numbers(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_render_numbers(v) for v in obj]
    return obj


class AhpRequestHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "ahpkit"

    # injected by make_server
    store: SessionStore = None
    static_dir: Path | None = None

    def log_message(self, fmt, *args):  # quiet by default; tests parse stdout
        pass

    # -- helpers ------------------------------------------------------------

    def _send(self, status: int, payload: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def _json(self, status: int, obj) -> None:
        body = json.dumps(_render_numbers(obj), indent=2).encode("utf-8")
        self._send(status, body, "application/json; charset=utf-8")

    def _error(self, status: int, constraint: str, detail: str, **extra) -> None:
        self._json(status, {"error": constraint, "detail": detail, **extra})

    def _body_json(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ParseError(f"request body is not valid JSON: {exc}")

    def _session_or_404(self, session_id):
        session = self.store.get(session_id)
        if session is None:
            self._error(404, "unknown-session", f"no session {session_id!r}")
        return session

    # -- routes -------------------------------------------------------------

    def do_POST(self):
        if self.path.rstrip("/") != "/api/sessions":
            self._error(404, "not-found", f"no route {self.path!r}")
            return
        try:
            body = self._body_json()
            criteria = body.get("criteria")
            if not isinstance(criteria, list) or not criteria:
                raise DomainError("body must include a nonempty 'criteria' list")
            scale = resolve_scale(body.get("scale"))
            session = self.store.create(criteria, scale)
        except (DomainError, ParseError) as exc:
            self._error(422, "bad-session", str(exc))
            return
        self._json(201, {
            "session_id": session.session_id,
            "criteria": list(session.criteria),
            "scale": self.store.scale_payload(session),
            "pair_count": len(session.pairs),
            "answered_count": 0,
            "next_pair": self.store.pair_payload(session, session.next_pair()),
        })

    def do_PUT(self):
        match = _SESSION_URL.match(self.path)
        if not match or match.group(2) != "/judgments":
            self._error(404, "not-found", f"no route {self.path!r}")
            return
        session = self._session_or_404(match.group(1))
        if session is None:
            return
        try:
            body = self._body_json()
        except ParseError as exc:
            self._error(422, "bad-json", str(exc))
            return
        if not {"i", "j", "value"} <= set(body):
            self._error(422, "bad-judgment", "body must include i, j, value")
            return
        i, j = body["i"], body["j"]
        n = len(session.criteria)
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < n):
            self._error(422, "bad-pair", f"need integers 0 <= i < j < {n}, got ({i!r}, {j!r})")
            return
        try:
            progress = self.store.record_judgment(session, i, j, body["value"])
        except (ParseError, DomainError) as exc:
            self._error(
                422, "out-of-scale", str(exc),
                admissible=[str(v) for v in session.scale.values],
            )
            return
        self._json(200, progress)

    def do_GET(self):
        match = _SESSION_URL.match(self.path)
        if match:
            session = self._session_or_404(match.group(1))
            if session is None:
                return
            tail = match.group(2) or ""
            if tail == "/report":
                self._json(200, session.report())
            elif tail == "/matrix.csv":
                answered = set(session.answered)
                provisional = [p for p in session.pairs if p not in answered]
                body = write_matrix_pairs_csv(session.provisional_matrix(), provisional)
                self._send(200, body, "text/csv; charset=utf-8")
            elif tail in ("", "/"):
                self._json(200, {
                    "session_id": session.session_id,
                    "criteria": list(session.criteria),
                    "scale": self.store.scale_payload(session),
                    "pair_count": len(session.pairs),
                    "answered_count": len(session.answered),
                    "next_pair": self.store.pair_payload(session, session.next_pair()),
                })
            else:
                self._error(404, "not-found", f"no route {self.path!r}")
            return
        if self.path.startswith("/api/"):
            self._error(404, "not-found", f"no route {self.path!r}")
            return
        self._static()

    def _static(self):
        if self.static_dir is None:
            self._error(404, "not-found", "no static bundle configured")
            return
        rel = self.path.split("?", 1)[0].lstrip("/") or "index.html"
        root = self.static_dir.resolve()
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            self._error(404, "not-found", "path escapes static root")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._error(404, "not-found", f"no such file {rel!r}")
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), ctype)


def make_server(
    host: str = "127.0.0.1",
    port: int = 8000,
    static_dir: str | Path | None = None,
    journal_dir: str | Path | None = None,
) -> ThreadingHTTPServer:
    """Build (but do not start) the session API server."""
    store = SessionStore(journal_dir=journal_dir)
    handler = type("BoundHandler", (AhpRequestHandler,), {
        "store": store,
        "static_dir": Path(static_dir) if static_dir else None,
    })
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    server.store = store  # exposed for tests
    return server


def serve_forever(host, port, static_dir=None, journal_dir=None) -> None:
    server = make_server(host, port, static_dir, journal_dir)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
