"""Annotation workflow state machine with event-sourced persistence.

All mutations go through events (enqueued, record_submitted, adjudicated)
appended to an in-memory list and, when a data directory is configured,
to an append-only JSONL log. Replaying the log reconstructs identical
state; a periodic snapshot (atomic file replace) bounds startup replay.

Labeling model: each annotator grades a pair on the 0-5 similarity scale;
degrees 4-5 map to "paraphrase", 0-3 to "non_paraphrase". A pair is final
when every assigned annotator has submitted and the mapped labels agree,
or when a third-party adjudication resolves a conflict. The
near-paraphrase flag marks semantically close negatives and is only
accepted together with a non-paraphrase judgment (degree <= 3).
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
import threading
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from itertools import combinations
from pathlib import Path

from ..dataset.splits import LABEL_NON_PARAPHRASE, LABEL_PARAPHRASE, LABELS, ORIGIN_BACKTRANSLATION, LabeledPair
from ..metrics import KappaReport, cohens_kappa

logger = logging.getLogger(__name__)

TASK_PENDING = "pending"
TASK_DONE = "done"

METHOD_UNANIMOUS = "unanimous"
METHOD_ADJUDICATED = "adjudicated"


class ServiceError(Exception):
    """Workflow rule violation; ``code`` is a stable machine-readable tag."""

    def __init__(self, message: str, code: str = "service_error", http_status: int = 400):
        super().__init__(message)
        self.code = code
        self.http_status = http_status


@dataclass(frozen=True)
class PairEntry:
    pair_id: str
    sentence_1: str
    sentence_2: str


@dataclass
class AnnotationTask:
    task_id: str
    pair_id: str
    annotator_id: str
    state: str
    assigned_at: str


@dataclass(frozen=True)
class AnnotationRecord:
    pair_id: str
    annotator_id: str
    sts_degree: int
    near_paraphrase: bool
    submitted_at: str
    revision: int


@dataclass(frozen=True)
class AdjudicatedLabel:
    pair_id: str
    final_label: str
    near_paraphrase: bool
    method: str
    adjudicator_id: str | None = None


def degree_to_label(sts_degree: int) -> str:
    """Map a similarity degree to the binary paraphrase decision."""
    if not isinstance(sts_degree, int) or isinstance(sts_degree, bool) or not 0 <= sts_degree <= 5:
        raise ServiceError(f"sts_degree must be an integer in 0..5, got {sts_degree!r}", code="invalid_degree")
    return LABEL_PARAPHRASE if sts_degree >= 4 else LABEL_NON_PARAPHRASE


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class AnnotationService:
    def __init__(self, data_dir: str | Path | None = None, snapshot_every: int = 1000):
        self._lock = threading.RLock()
        self._data_dir = Path(data_dir) if data_dir else None
        self._snapshot_every = snapshot_every
        self._events: list[dict] = []
        self._log_fh = None

        self.pairs: dict[str, PairEntry] = {}
        self.tasks: dict[tuple[str, str], AnnotationTask] = {}
        self.records: dict[tuple[str, str], list[AnnotationRecord]] = {}
        self.adjudications: dict[str, AdjudicatedLabel] = {}
        self._task_order: dict[str, list[str]] = {}  # annotator -> pair_ids, assignment order
        self._annotators_of: dict[str, list[str]] = {}  # pair -> annotators, assignment order
        self._submitted_of: dict[str, set[str]] = {}  # pair -> annotators with records
        self._task_seq = 0

        if self._data_dir is not None:
            self._data_dir.mkdir(parents=True, exist_ok=True)
            self._recover()
            self._log_fh = open(self._log_path(), "a", encoding="utf-8")

    # ---------------------------------------------------------------- storage

    def _log_path(self) -> Path:
        assert self._data_dir is not None
        return self._data_dir / "events.jsonl"

    def _snapshot_path(self) -> Path:
        assert self._data_dir is not None
        return self._data_dir / "snapshot.json"

    def _recover(self) -> None:
        snap_path = self._snapshot_path()
        start_seq = 0
        if snap_path.exists():
            snap = json.loads(snap_path.read_text(encoding="utf-8"))
            start_seq = snap["last_seq"]
            for event in snap["events"]:
                self._events.append(event)
                self._apply(event)
        log_path = self._log_path()
        if log_path.exists():
            with open(log_path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    event = json.loads(line)
                    if event["seq"] <= start_seq:
                        continue
                    self._events.append(event)
                    self._apply(event)

    def snapshot(self) -> None:
        """Compact the event history into a snapshot file (atomic replace)."""
        if self._data_dir is None:
            return
        with self._lock:
            payload = {"last_seq": len(self._events), "events": self._events}
            tmp = self._snapshot_path().with_suffix(".tmp")
            tmp.write_text(json.dumps(payload, ensure_ascii=False), encoding="utf-8")
            tmp.replace(self._snapshot_path())

    def _emit(self, event: dict) -> None:
        event["seq"] = len(self._events) + 1
        self._events.append(event)
        self._apply(event)
        if self._log_fh is not None:
            self._log_fh.write(json.dumps(event, ensure_ascii=False) + "\n")
            self._log_fh.flush()
            if event["seq"] % self._snapshot_every == 0:
                self.snapshot()

    def close(self) -> None:
        if self._log_fh is not None:
            self._log_fh.close()
            self._log_fh = None

    # ------------------------------------------------------------- event apply

    def _apply(self, event: dict) -> None:
        kind = event["type"]
        if kind == "enqueued":
            for rec in event["pairs"]:
                self.pairs[rec["pair_id"]] = PairEntry(**rec)
            for rec in event["tasks"]:
                task = AnnotationTask(
                    task_id=rec["task_id"],
                    pair_id=rec["pair_id"],
                    annotator_id=rec["annotator_id"],
                    state=TASK_PENDING,
                    assigned_at=rec["assigned_at"],
                )
                self.tasks[(task.pair_id, task.annotator_id)] = task
                self._task_order.setdefault(task.annotator_id, []).append(task.pair_id)
                self._annotators_of.setdefault(task.pair_id, []).append(task.annotator_id)
                self._task_seq = max(self._task_seq, int(task.task_id.split("-")[1]))
        elif kind == "record_submitted":
            rec = AnnotationRecord(
                pair_id=event["pair_id"],
                annotator_id=event["annotator_id"],
                sts_degree=event["sts_degree"],
                near_paraphrase=event["near_paraphrase"],
                submitted_at=event["submitted_at"],
                revision=event["revision"],
            )
            self.records.setdefault((rec.pair_id, rec.annotator_id), []).append(rec)
            self._submitted_of.setdefault(rec.pair_id, set()).add(rec.annotator_id)
            self.tasks[(rec.pair_id, rec.annotator_id)].state = TASK_DONE
        elif kind == "adjudicated":
            adj = AdjudicatedLabel(
                pair_id=event["pair_id"],
                final_label=event["final_label"],
                near_paraphrase=event["near_paraphrase"],
                method=METHOD_ADJUDICATED,
                adjudicator_id=event["adjudicator_id"],
            )
            self.adjudications[adj.pair_id] = adj
        else:
            raise ValueError(f"unknown event type {kind!r}")

    # ------------------------------------------------------------- operations

    def enqueue(
        self,
        pairs: list[tuple[str, str, str]],
        annotators: list[str],
        per_pair_count: int,
        seed: int,
    ) -> list[AnnotationTask]:
        """Register pairs and assign each to ``per_pair_count`` annotators.

        Assignment is load-balanced greedily with seeded tie-breaking, so a
        fixed seed reproduces the same task list. ``pairs`` are
        (pair_id, sentence_1, sentence_2) triples.
        """
        if per_pair_count < 1:
            raise ServiceError("per_pair_count must be >= 1", code="infeasible_assignment")
        unique_annotators = list(dict.fromkeys(annotators))
        if per_pair_count > len(unique_annotators):
            raise ServiceError(
                f"cannot assign {per_pair_count} annotators per pair with only {len(unique_annotators)} annotators",
                code="infeasible_assignment",
            )
        with self._lock:
            seen = set()
            for pair_id, _, _ in pairs:
                if pair_id in self.pairs or pair_id in seen:
                    raise ServiceError(f"pair {pair_id!r} already enqueued", code="duplicate_pair")
                seen.add(pair_id)
            rng = random.Random(seed)
            load = {a: 0 for a in unique_annotators}
            drafted: list[dict] = []
            now = _now()
            seq = self._task_seq
            for pair_id, _, _ in pairs:
                ranked = sorted(unique_annotators, key=lambda a: (load[a], rng.random()))
                for annotator in ranked[:per_pair_count]:
                    load[annotator] += 1
                    seq += 1
                    drafted.append(
                        {
                            "task_id": f"task-{seq:06d}",
                            "pair_id": pair_id,
                            "annotator_id": annotator,
                            "assigned_at": now,
                        }
                    )
            self._emit(
                {
                    "type": "enqueued",
                    "pairs": [{"pair_id": p, "sentence_1": s1, "sentence_2": s2} for p, s1, s2 in pairs],
                    "tasks": drafted,
                }
            )
            return [self.tasks[(t["pair_id"], t["annotator_id"])] for t in drafted]

    def next_task(self, annotator_id: str) -> AnnotationTask | None:
        """Oldest pending task for the annotator, or None when the queue is empty."""
        with self._lock:
            for pair_id in self._task_order.get(annotator_id, []):
                task = self.tasks[(pair_id, annotator_id)]
                if task.state == TASK_PENDING:
                    return task
            return None

    def submit(
        self,
        annotator_id: str,
        pair_id: str,
        sts_degree: int,
        near_paraphrase: bool = False,
        supersede: bool = False,
    ) -> AnnotationRecord:
        """Record a judgment for a pending task.

        Submitted records are immutable; a correction must pass
        supersede=True and produces a new record with a higher revision.
        Corrections are refused once the pair has been adjudicated, which
        keeps finality single-sourced.
        """
        label = degree_to_label(sts_degree)
        if near_paraphrase and label != LABEL_NON_PARAPHRASE:
            raise ServiceError(
                "near_paraphrase flag requires a non-paraphrase judgment (degree <= 3)",
                code="near_flag_invalid",
            )
        with self._lock:
            task = self.tasks.get((pair_id, annotator_id))
            if task is None:
                raise ServiceError(
                    f"no task for annotator {annotator_id!r} on pair {pair_id!r}",
                    code="no_task",
                    http_status=404,
                )
            if task.state == TASK_DONE:
                if not supersede:
                    raise ServiceError(
                        f"pair {pair_id!r} already annotated by {annotator_id!r}; pass supersede to correct",
                        code="task_already_done",
                        http_status=409,
                    )
                if pair_id in self.adjudications:
                    raise ServiceError(
                        f"pair {pair_id!r} was adjudicated; corrections are closed",
                        code="pair_finalized",
                        http_status=409,
                    )
            previous = self.records.get((pair_id, annotator_id), [])
            self._emit(
                {
                    "type": "record_submitted",
                    "pair_id": pair_id,
                    "annotator_id": annotator_id,
                    "sts_degree": sts_degree,
                    "near_paraphrase": near_paraphrase,
                    "submitted_at": _now(),
                    "revision": len(previous) + 1,
                }
            )
            return self.records[(pair_id, annotator_id)][-1]

    def latest_records(self, pair_id: str) -> dict[str, AnnotationRecord]:
        """Current (highest-revision) record per annotator for the pair."""
        with self._lock:
            return {
                a: self.records[(pair_id, a)][-1]
                for a in sorted(self._submitted_of.get(pair_id, ()))
            }

    def _pair_state(self, pair_id: str) -> str:
        """One of: open, disagreement, final."""
        annotators = self._annotators_of.get(pair_id, [])
        if not annotators or any(self.tasks[(pair_id, a)].state != TASK_DONE for a in annotators):
            return "open"
        if pair_id in self.adjudications:
            return "final"
        labels = {
            degree_to_label(self.records[(pair_id, a)][-1].sts_degree) for a in annotators
        }
        return "disagreement" if len(labels) > 1 else "final"

    def disagreements(self) -> list[str]:
        """Pairs fully annotated with conflicting mapped labels and no adjudication."""
        with self._lock:
            return sorted(p for p in self.pairs if self._pair_state(p) == "disagreement")

    def adjudicate(
        self,
        adjudicator_id: str,
        pair_id: str,
        final_label: str,
        near_paraphrase: bool = False,
    ) -> AdjudicatedLabel:
        if final_label not in LABELS:
            raise ServiceError(f"final_label must be one of {LABELS}", code="invalid_label")
        if near_paraphrase and final_label != LABEL_NON_PARAPHRASE:
            raise ServiceError(
                "near_paraphrase flag requires a non-paraphrase final label",
                code="near_flag_invalid",
            )
        with self._lock:
            if pair_id not in self.pairs:
                raise ServiceError(f"unknown pair {pair_id!r}", code="unknown_pair", http_status=404)
            state = self._pair_state(pair_id)
            if state != "disagreement":
                raise ServiceError(
                    f"pair {pair_id!r} is not awaiting adjudication (state: {state})",
                    code="not_in_disagreement",
                    http_status=409,
                )
            if adjudicator_id in self._annotators_of.get(pair_id, []):
                raise ServiceError(
                    f"adjudicator {adjudicator_id!r} annotated pair {pair_id!r} and cannot resolve it",
                    code="adjudicator_conflict",
                )
            self._emit(
                {
                    "type": "adjudicated",
                    "pair_id": pair_id,
                    "final_label": final_label,
                    "near_paraphrase": near_paraphrase,
                    "adjudicator_id": adjudicator_id,
                }
            )
            return self.adjudications[pair_id]

    def final_label(self, pair_id: str) -> AdjudicatedLabel | None:
        """The pair's final decision, or None while it is unresolved."""
        with self._lock:
            if self._pair_state(pair_id) != "final":
                return None
            if pair_id in self.adjudications:
                return self.adjudications[pair_id]
            latest = self.latest_records(pair_id)
            labels = {degree_to_label(r.sts_degree) for r in latest.values()}
            label = labels.pop()
            near = label == LABEL_NON_PARAPHRASE and any(r.near_paraphrase for r in latest.values())
            return AdjudicatedLabel(
                pair_id=pair_id,
                final_label=label,
                near_paraphrase=near,
                method=METHOD_UNANIMOUS,
            )

    def agreement_report(self) -> list[KappaReport]:
        """Pairwise Cohen's kappa on mapped labels over co-annotated pairs."""
        with self._lock:
            by_annotator: dict[str, dict[str, str]] = {}
            for (pair_id, annotator), revs in self.records.items():
                by_annotator.setdefault(annotator, {})[pair_id] = degree_to_label(revs[-1].sts_degree)
            reports = []
            for a, b in combinations(sorted(by_annotator), 2):
                shared = sorted(set(by_annotator[a]) & set(by_annotator[b]))
                if not shared:
                    continue
                reports.append(
                    cohens_kappa(
                        [by_annotator[a][p] for p in shared],
                        [by_annotator[b][p] for p in shared],
                        annotator_a=a,
                        annotator_b=b,
                    )
                )
            return reports

    def export_adjudicated(self) -> list[LabeledPair]:
        """All pairs with final labels, for the dataset builder.

        Raises listing the unresolved pair_ids if any pair is still open
        or awaiting adjudication.
        """
        with self._lock:
            unresolved = sorted(p for p in self.pairs if self._pair_state(p) != "final")
            if unresolved:
                raise ServiceError(
                    f"{len(unresolved)} pairs are not finalized: {', '.join(unresolved[:10])}",
                    code="unfinalized_pairs",
                    http_status=409,
                )
            out = []
            for pair_id in sorted(self.pairs):
                final = self.final_label(pair_id)
                assert final is not None
                entry = self.pairs[pair_id]
                out.append(
                    LabeledPair(
                        pair_id=pair_id,
                        sentence_1=entry.sentence_1,
                        sentence_2=entry.sentence_2,
                        label=final.final_label,
                        near_paraphrase=final.near_paraphrase,
                        origin=ORIGIN_BACKTRANSLATION,
                    )
                )
            return out

    # ------------------------------------------------------------- diagnostics

    def state_digest(self) -> str:
        """Content hash of the derived state, for replay-equivalence checks."""
        with self._lock:
            state = {
                "pairs": {p: asdict(e) for p, e in sorted(self.pairs.items())},
                "tasks": {f"{p}|{a}": asdict(t) for (p, a), t in sorted(self.tasks.items())},
                "records": {f"{p}|{a}": [asdict(r) for r in revs] for (p, a), revs in sorted(self.records.items())},
                "adjudications": {p: asdict(adj) for p, adj in sorted(self.adjudications.items())},
            }
            return hashlib.sha256(json.dumps(state, sort_keys=True, ensure_ascii=False).encode()).hexdigest()

    def replay_events(self) -> "AnnotationService":
        """Fresh in-memory service rebuilt from this one's event history."""
        twin = AnnotationService(data_dir=None)
        for event in self._events:
            twin._events.append(event)
            twin._apply(event)
        return twin
