"""Three-stage assessment workflow: an explicit, persisted state machine.

A round walks topic selection -> belief elicitation -> article review ->
done. The central contract is reveal-after-commit: the data hive is never
computed or exposed until the user's belief hive is finalized, and the
engine (not the UI) enforces it. Every operation, including rejected ones,
lands in the session's transition log so the contract is auditable.
"""

from __future__ import annotations

import hashlib
import json
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Callable, Optional

from . import hive as hive_ops
from .aggregate import (
    DEFAULT_SEG,
    SegmentationPoint,
    SentimentCategory,
    build_topic_stats,
    cooccurrence_counts,
)
from .annotate import AnnotatedCorpus
from .errors import InputError, NotFoundError, StageError
from .hive import ConflictReport, HiveSpec


class Stage(str, Enum):
    TOPIC_SELECTION = "topic_selection"
    BELIEF_ELICITATION = "belief_elicitation"
    ARTICLE_REVIEW = "article_review"
    DONE = "done"


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class Note:
    text: str
    created_at: str
    article_id: Optional[str] = None
    paragraph_index: Optional[int] = None

    def to_record(self) -> dict:
        return {
            "text": self.text,
            "created_at": self.created_at,
            "article_id": self.article_id,
            "paragraph_index": self.paragraph_index,
        }


@dataclass
class Round:
    index: int
    stage: Stage = Stage.TOPIC_SELECTION
    topic: Optional[str] = None
    outlet: Optional[str] = None
    user_hive: Optional[HiveSpec] = None
    data_hive: Optional[HiveSpec] = None
    conflicts: Optional[ConflictReport] = None
    selected_conflict: Optional[str] = None
    notes: list[Note] = field(default_factory=list)

    def to_record(self) -> dict:
        return {
            "index": self.index,
            "stage": self.stage.value,
            "topic": self.topic,
            "outlet": self.outlet,
            "user_hive": self.user_hive.to_record() if self.user_hive else None,
            "data_hive": self.data_hive.to_record() if self.data_hive else None,
            "conflicts": self.conflicts.to_record() if self.conflicts else None,
            "selected_conflict": self.selected_conflict,
            "notes": [n.to_record() for n in self.notes],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Round":
        return cls(
            index=rec["index"],
            stage=Stage(rec["stage"]),
            topic=rec.get("topic"),
            outlet=rec.get("outlet"),
            user_hive=HiveSpec.from_record(rec["user_hive"]) if rec.get("user_hive") else None,
            data_hive=HiveSpec.from_record(rec["data_hive"]) if rec.get("data_hive") else None,
            conflicts=ConflictReport.from_record(rec["conflicts"]) if rec.get("conflicts") else None,
            selected_conflict=rec.get("selected_conflict"),
            notes=[
                Note(
                    text=n["text"],
                    created_at=n["created_at"],
                    article_id=n.get("article_id"),
                    paragraph_index=n.get("paragraph_index"),
                )
                for n in rec.get("notes", [])
            ],
        )


@dataclass
class Transition:
    op: str
    round_index: Optional[int]
    at: str
    ok: bool
    detail: Optional[str] = None

    def to_record(self) -> dict:
        return {
            "op": self.op,
            "round_index": self.round_index,
            "at": self.at,
            "ok": self.ok,
            "detail": self.detail,
        }


@dataclass
class Session:
    id: str
    created_at: str
    seg: SegmentationPoint = DEFAULT_SEG
    threshold: int = 0
    rounds: list[Round] = field(default_factory=list)
    transitions: list[Transition] = field(default_factory=list)

    @property
    def current_round(self) -> Optional[Round]:
        if self.rounds and self.rounds[-1].stage is not Stage.DONE:
            return self.rounds[-1]
        return None

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "created_at": self.created_at,
            "seg": {"sx": self.seg.sx, "sy": self.seg.sy},
            "threshold": self.threshold,
            "rounds": [r.to_record() for r in self.rounds],
            "transitions": [t.to_record() for t in self.transitions],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Session":
        return cls(
            id=rec["id"],
            created_at=rec["created_at"],
            seg=SegmentationPoint(rec["seg"]["sx"], rec["seg"]["sy"]),
            threshold=rec["threshold"],
            rounds=[Round.from_record(r) for r in rec.get("rounds", [])],
            transitions=[
                Transition(
                    op=t["op"],
                    round_index=t.get("round_index"),
                    at=t["at"],
                    ok=t["ok"],
                    detail=t.get("detail"),
                )
                for t in rec.get("transitions", [])
            ],
        )


class Workflow:
    """Session operations over one annotated corpus.

    A ``clock`` callable can be injected for deterministic tests; it must
    return ISO timestamps.
    """

    def __init__(self, ann: AnnotatedCorpus, clock: Callable[[], str] = _utcnow):
        self.ann = ann
        self.clock = clock
        self._outlets = set(ann.snapshot.outlets)

    def new_session(
        self,
        seg: SegmentationPoint = DEFAULT_SEG,
        threshold: int = 0,
        session_id: str | None = None,
    ) -> Session:
        if threshold < 0:
            raise InputError("threshold must be >= 0")
        return Session(
            id=session_id or uuid.uuid4().hex,
            created_at=self.clock(),
            seg=seg,
            threshold=threshold,
        )

    def _log(self, session: Session, op: str, ok: bool, detail: str | None = None) -> None:
        round_index = session.rounds[-1].index if session.rounds else None
        ts = self.clock()
        if session.transitions and session.transitions[-1].at > ts:
            ts = session.transitions[-1].at
        session.transitions.append(
            Transition(op=op, round_index=round_index, at=ts, ok=ok, detail=detail)
        )

    def _guarded(self, session: Session, op: str, fn: Callable[[], object]):
        try:
            result = fn()
        except Exception as exc:
            self._log(session, op, ok=False, detail=str(exc))
            raise
        self._log(session, op, ok=True)
        return result

    def _active_round(self, session: Session, *stages: Stage) -> Round:
        rnd = session.current_round
        if rnd is None:
            raise StageError("no active round")
        if stages and rnd.stage not in stages:
            raise StageError(
                f"operation not allowed in stage {rnd.stage.value}"
            )
        return rnd

    # --- stage transitions -------------------------------------------------

    def start_round(self, session: Session) -> Round:
        def run() -> Round:
            if session.current_round is not None:
                raise StageError("a round is already active")
            rnd = Round(index=len(session.rounds))
            session.rounds.append(rnd)
            return rnd

        return self._guarded(session, "start_round", run)

    def update_settings(
        self,
        session: Session,
        seg: SegmentationPoint | None = None,
        threshold: int | None = None,
    ) -> Session:
        def run() -> Session:
            if seg is not None:
                session.seg = seg
            if threshold is not None:
                if threshold < 0:
                    raise InputError("threshold must be >= 0")
                session.threshold = threshold
            return session

        return self._guarded(session, "update_settings", run)

    def choose_topic_outlet(self, session: Session, topic: str, outlet: str) -> Round:
        def run() -> Round:
            rnd = self._active_round(session, Stage.TOPIC_SELECTION)
            if outlet not in self._outlets:
                raise NotFoundError(f"unknown outlet: {outlet!r}", code="unknown-outlet")
            stats = {t.entity: t for t in build_topic_stats(self.ann)}
            if topic not in stats:
                raise NotFoundError(f"unknown topic: {topic!r}", code="unknown-topic")
            if stats[topic].total_articles < session.threshold:
                raise InputError(
                    f"topic {topic!r} has {stats[topic].total_articles} articles, "
                    f"below threshold {session.threshold}",
                    code="below-threshold",
                )
            table = cooccurrence_counts(self.ann, outlet)
            candidates = hive_ops.candidate_topics(topic, table)
            if not candidates:
                raise NotFoundError(
                    f"no co-occurring topics for {topic!r} under outlet {outlet!r}",
                    code="no-candidates",
                )
            rnd.topic = topic
            rnd.outlet = outlet
            rnd.user_hive = hive_ops.new_user_hive(topic, outlet, candidates)
            rnd.stage = Stage.BELIEF_ELICITATION
            return rnd

        return self._guarded(session, "choose_topic_outlet", run)

    def assign(self, session: Session, topic: str, region: SentimentCategory) -> Round:
        def run() -> Round:
            rnd = self._active_round(session, Stage.BELIEF_ELICITATION)
            hive_ops.assign_topic(rnd.user_hive, topic, region)
            return rnd

        return self._guarded(session, "assign", run)

    def set_center(self, session: Session, category: SentimentCategory) -> Round:
        def run() -> Round:
            rnd = self._active_round(session, Stage.BELIEF_ELICITATION)
            hive_ops.set_center_sentiment(rnd.user_hive, category)
            return rnd

        return self._guarded(session, "set_center", run)

    def finalize_user_hive(self, session: Session) -> Round:
        def run() -> Round:
            rnd = self._active_round(session, Stage.BELIEF_ELICITATION)
            hive_ops.finalize(rnd.user_hive)
            return rnd

        return self._guarded(session, "finalize", run)

    def reveal(self, session: Session) -> Round:
        """Compute the data hive and the conflict list.

        Rejected outright while the user hive is unfinalized: the belief
        must be committed before the data is ever computed.
        """

        def run() -> Round:
            rnd = self._active_round(session, Stage.BELIEF_ELICITATION)
            if rnd.user_hive is None or not rnd.user_hive.finalized:
                raise StageError("user hive must be finalized before reveal")
            if rnd.data_hive is not None:
                raise StageError("data hive already revealed")
            rnd.data_hive = hive_ops.data_hive(
                self.ann,
                rnd.topic,
                rnd.outlet,
                session.seg,
                candidates=rnd.user_hive.candidates,
            )
            rnd.conflicts = hive_ops.detect_conflicts(rnd.user_hive, rnd.data_hive)
            return rnd

        return self._guarded(session, "reveal", run)

    def select_conflict(self, session: Session, topic: str) -> Round:
        def run() -> Round:
            rnd = self._active_round(session, Stage.BELIEF_ELICITATION, Stage.ARTICLE_REVIEW)
            if rnd.conflicts is None:
                raise StageError("conflicts not revealed yet")
            allowed = set(rnd.user_hive.candidates) | {c.entity for c in rnd.conflicts.conflicts}
            if topic not in allowed:
                raise NotFoundError(
                    f"topic {topic!r} is neither a conflict nor a hive candidate",
                    code="unknown-topic",
                )
            rnd.selected_conflict = topic
            rnd.stage = Stage.ARTICLE_REVIEW
            return rnd

        return self._guarded(session, "select_conflict", run)

    def add_note(
        self,
        session: Session,
        text: str,
        article_id: str | None = None,
        paragraph_index: int | None = None,
    ) -> Note:
        def run() -> Note:
            rnd = self._active_round(session, Stage.ARTICLE_REVIEW)
            if article_id is not None:
                article = self.ann.snapshot.article(article_id)
                if paragraph_index is not None and not (
                    0 <= paragraph_index < len(article.paragraphs)
                ):
                    raise InputError(
                        f"paragraph {paragraph_index} not in article {article_id!r}",
                        code="dangling-reference",
                    )
            elif paragraph_index is not None:
                raise InputError("a paragraph reference needs an article id")
            ts = self.clock()
            if rnd.notes and rnd.notes[-1].created_at > ts:
                ts = rnd.notes[-1].created_at
            note = Note(
                text=text,
                created_at=ts,
                article_id=article_id,
                paragraph_index=paragraph_index,
            )
            rnd.notes.append(note)
            return note

        return self._guarded(session, "add_note", run)

    def complete_round(self, session: Session) -> Round:
        def run() -> Round:
            rnd = self._active_round(session, Stage.ARTICLE_REVIEW)
            rnd.stage = Stage.DONE
            return rnd

        return self._guarded(session, "complete_round", run)

    def summary(self, session: Session) -> dict:
        """Everything the summary panel shows, in round order."""
        return {
            "session_id": session.id,
            "created_at": session.created_at,
            "seg": {"sx": session.seg.sx, "sy": session.seg.sy},
            "threshold": session.threshold,
            "rounds": [r.to_record() for r in session.rounds],
        }


# --- persistence -------------------------------------------------------------


def _checksum(data: dict) -> str:
    blob = json.dumps(data, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class SessionStore:
    """One directory per session holding an append-only log.

    Each line is ``{"type", "data", "sha256"}``; transition lines accumulate
    as the session progresses and every save appends a fresh snapshot line.
    Loading replays the latest snapshot after verifying every checksum.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _log_path(self, session_id: str) -> Path:
        return self.root / session_id / "log.jsonl"

    def save(self, session: Session) -> None:
        path = self._log_path(session.id)
        path.parent.mkdir(parents=True, exist_ok=True)
        already = 0
        if path.exists():
            with path.open(encoding="utf-8") as fh:
                for line in fh:
                    if line.strip() and json.loads(line).get("type") == "transition":
                        already += 1
        lines = []
        for t in session.transitions[already:]:
            data = t.to_record()
            lines.append(
                json.dumps(
                    {"type": "transition", "data": data, "sha256": _checksum(data)},
                    sort_keys=True,
                    ensure_ascii=False,
                )
            )
        data = session.to_record()
        lines.append(
            json.dumps(
                {"type": "snapshot", "data": data, "sha256": _checksum(data)},
                sort_keys=True,
                ensure_ascii=False,
            )
        )
        with path.open("a", encoding="utf-8") as fh:
            for line in lines:
                fh.write(line + "\n")

    def load(self, session_id: str) -> Session:
        path = self._log_path(session_id)
        if not path.exists():
            raise NotFoundError(f"unknown session: {session_id!r}", code="unknown-session")
        snapshot = None
        with path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    raise InputError(
                        f"corrupt session log {session_id!r} at line {lineno}",
                        code="corrupt-session",
                    )
                if _checksum(rec.get("data", {})) != rec.get("sha256"):
                    raise InputError(
                        f"checksum mismatch in session {session_id!r} at line {lineno}",
                        code="corrupt-session",
                    )
                if rec["type"] == "snapshot":
                    snapshot = rec["data"]
        if snapshot is None:
            raise InputError(
                f"session log {session_id!r} holds no snapshot", code="corrupt-session"
            )
        return Session.from_record(snapshot)

    def list_sessions(self) -> list[str]:
        return sorted(p.name for p in self.root.iterdir() if (p / "log.jsonl").exists())
