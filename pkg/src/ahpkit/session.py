"""Elicitation sessions: one matrix being filled in, one pair at a time.

Sessions live in memory; an optional append-only JSON-lines journal (one
file per session) makes them survive restarts via replay. All mutation
goes through SessionStore, which serializes writers per session.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import numpy as np

from .core import (
    ComparisonMatrix,
    consistency_report,
    most_inconsistent_triad,
    principal_eigenpair,
    rank_criteria,
    rowsum_weights,
)
from .errors import DomainError
from .scales import JudgmentScale, STUDY_SCALE, scale_by_name


@dataclass
class ElicitationSession:
    session_id: str
    criteria: tuple[str, ...]
    scale: JudgmentScale
    answered: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(combinations(range(len(self.criteria)), 2))

    def next_pair(self) -> tuple[int, int] | None:
        """First unanswered pair in canonical order."""
        for pair in self.pairs:
            if pair not in self.answered:
                return pair
        return None

    def provisional_matrix(self) -> ComparisonMatrix:
        """Current matrix with unanswered pairs provisionally set to 1."""
        n = len(self.criteria)
        a = np.ones((n, n))
        for (i, j), v in self.answered.items():
            a[i, j] = float(v)
            a[j, i] = 1.0 / float(v)
        return ComparisonMatrix(self.criteria, a)

    def answered_submatrix(self) -> list[int]:
        """Largest fully-answered principal submatrix, grown in canonical order.

        A criterion joins the basis only if its pair with every criterion
        already in the basis has been answered."""
        basis: list[int] = []
        for c in range(len(self.criteria)):
            if all((min(b, c), max(b, c)) in self.answered for b in basis):
                basis.append(c)
        return basis

    def progress(self) -> dict:
        """cr_so_far over the answered submatrix, plus the worst triad in it."""
        basis = self.answered_submatrix()
        cr = 0.0
        worst = None
        if len(basis) >= 3:
            sub = self.provisional_matrix().entries[np.ix_(basis, basis)]
            m = ComparisonMatrix(tuple(self.criteria[k] for k in basis), sub)
            cr = consistency_report(m).cr
            i, j, k, dev = most_inconsistent_triad(m)
            worst = {
                "indices": [basis[i], basis[j], basis[k]],
                "items": [m.labels[i], m.labels[j], m.labels[k]],
                "deviation": dev,
            }
        return {"cr_so_far": cr, "basis": [self.criteria[k] for k in basis], "worst_triad": worst}

    def report(self) -> dict:
        """Full report over the (possibly provisional) matrix, both methods."""
        m = self.provisional_matrix()
        rowsum = rowsum_weights(m)
        _, eigen = principal_eigenpair(m)
        rep = consistency_report(m)
        worst = None
        if m.order >= 3:
            i, j, k, dev = most_inconsistent_triad(m)
            worst = {
                "indices": [i, j, k],
                "items": [m.labels[i], m.labels[j], m.labels[k]],
                "deviation": dev,
            }
        return {
            "session_id": self.session_id,
            "criteria": list(self.criteria),
            "answered_count": len(self.answered),
            "pair_count": len(self.pairs),
            "complete": len(self.answered) == len(self.pairs),
            "weights": {"rowsum": rowsum.as_dict(), "eigenvector": eigen.as_dict()},
            "ranking": [
                {"rank": r.rank, "factor": r.label, "weight": r.relative_importance}
                for r in rank_criteria(eigen).rows
            ],
            "consistency": {
                "lambda_max": rep.lambda_max, "ci": rep.ci, "ri": rep.ri,
                "cr": rep.cr, "consistent": rep.consistent, "order": rep.order,
            },
            "worst_triad": worst,
        }


def _scale_payload(scale: JudgmentScale) -> list[dict]:
    return [
        {"value": str(v), "float": float(v), "label": scale.label_for(v)}
        for v in scale.values
    ]


class SessionStore:
    """Thread-safe registry of sessions with optional journal persistence."""

    def __init__(self, journal_dir: str | Path | None = None):
        self._sessions: dict[str, ElicitationSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self.journal_dir = Path(journal_dir) if journal_dir else None
        if self.journal_dir:
            self.journal_dir.mkdir(parents=True, exist_ok=True)
            self._replay()

    def create(self, criteria, scale) -> ElicitationSession:
        criteria = tuple(str(c) for c in criteria)
        if not 1 <= len(criteria) <= 15:
            raise DomainError("need between 1 and 15 criteria (random-index table bound)")
        if len(set(criteria)) != len(criteria):
            raise DomainError("criteria must be unique")
        session = ElicitationSession(uuid.uuid4().hex, criteria, scale)
        with self._registry_lock:
            self._sessions[session.session_id] = session
            self._locks[session.session_id] = threading.Lock()
        self._journal(session.session_id, {
            "event": "created",
            "criteria": list(criteria),
            "scale": {
                "name": scale.name,
                "values": [str(v) for v in scale.values],
                "labels": list(scale.labels),
            },
            "ts": session.created,
        })
        return session

    def get(self, session_id: str) -> ElicitationSession | None:
        with self._registry_lock:
            return self._sessions.get(session_id)

    def record_judgment(self, session: ElicitationSession, i: int, j: int, value) -> dict:
        """Validate and store one judgment (idempotent overwrite); returns progress."""
        n = len(session.criteria)
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < n):
            raise DomainError(f"bad pair ({i}, {j}): need 0 <= i < j < {n}")
        parsed = session.scale.parse(value)
        with self._locks[session.session_id]:
            session.answered[(i, j)] = parsed
            session.updated = time.time()
            self._journal(session.session_id, {
                "event": "judgment", "i": i, "j": j, "value": str(parsed),
                "ts": session.updated,
            })
            progress = session.progress()
            progress["answered_count"] = len(session.answered)
            nxt = session.next_pair()
        progress["next_pair"] = self.pair_payload(session, nxt)
        return progress

    @staticmethod
    def pair_payload(session: ElicitationSession, pair: tuple[int, int] | None):
        if pair is None:
            return None
        i, j = pair
        return {"i": i, "j": j, "left": session.criteria[i], "right": session.criteria[j]}

    @staticmethod
    def scale_payload(session: ElicitationSession) -> list[dict]:
        return _scale_payload(session.scale)

    # -- journaling ---------------------------------------------------------

    def _journal(self, session_id: str, event: dict) -> None:
        if not self.journal_dir:
            return
        path = self.journal_dir / f"{session_id}.jsonl"
        with path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event) + "\n")

    def _replay(self) -> None:
        for path in sorted(self.journal_dir.glob("*.jsonl")):
            session = None
            for line in path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                event = json.loads(line)
                if event["event"] == "created":
                    sc = event["scale"]
                    try:
                        scale = scale_by_name(sc["name"])
                    except DomainError:
                        scale = JudgmentScale(
                            sc["name"],
                            tuple(Fraction(v) for v in sc["values"]),
                            tuple(sc.get("labels", ())),
                        )
                    session = ElicitationSession(
                        path.stem, tuple(event["criteria"]), scale,
                        created=event["ts"], updated=event["ts"],
                    )
                elif event["event"] == "judgment" and session is not None:
                    session.answered[(event["i"], event["j"])] = Fraction(event["value"])
                    session.updated = event["ts"]
            if session is not None:
                self._sessions[session.session_id] = session
                self._locks[session.session_id] = threading.Lock()


def resolve_scale(spec) -> JudgmentScale:
    """Scale from a request payload: a name, or {values, labels?, name?}."""
    if spec is None:
        return STUDY_SCALE
    if isinstance(spec, str):
        return scale_by_name(spec)
    if isinstance(spec, dict) and "values" in spec:
        try:
            values = tuple(Fraction(str(v)) for v in spec["values"])
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad scale values: {exc}")
        return JudgmentScale(
            str(spec.get("name", "custom")), values, tuple(spec.get("labels", ()))
        )
    raise DomainError("scale must be a name or an object with 'values'")
