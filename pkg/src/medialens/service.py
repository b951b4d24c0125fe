"""HTTP adapter over the engine.

The service computes nothing novel: every endpoint delegates to the
aggregate, hive, and session modules over one immutable annotated corpus,
so identical queries always produce identical bodies. Session mutations
are serialized per session id; reads take no locks.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .aggregate import (
    DEFAULT_SEG,
    SegmentationPoint,
    SentenceSentimentCounts,
    SentimentCategory,
    TopicStats,
    build_topic_stats,
    classify,
    document_sentiment,
    scatter_data,
)
from .annotate import AnnotatedCorpus, SentimentLabel
from .errors import EngineError, InputError, NotFoundError, StageError
from .hive import data_hive, layout
from .session import Session, SessionStore, Workflow


@dataclass(frozen=True)
class ArticleListing:
    article_id: str
    outlet: str
    title: str
    published_at: str
    polarity: SentimentLabel
    matched_topics: tuple[str, ...]

    def to_record(self) -> dict:
        return {
            "article_id": self.article_id,
            "outlet": self.outlet,
            "title": self.title,
            "published_at": self.published_at,
            "polarity": self.polarity.value,
            "matched_topics": list(self.matched_topics),
        }


@dataclass(frozen=True)
class Highlight:
    paragraph_index: int
    start: int
    end: int
    entity: str
    sentiment: SentimentLabel

    def to_record(self) -> dict:
        return {
            "paragraph_index": self.paragraph_index,
            "start": self.start,
            "end": self.end,
            "entity": self.entity,
            "sentiment": self.sentiment.value,
        }


@dataclass(frozen=True)
class HighlightedArticle:
    article_id: str
    title: str
    outlet: str
    published_at: str
    paragraphs: tuple[str, ...]
    highlights: tuple[Highlight, ...]

    def to_record(self) -> dict:
        return {
            "article_id": self.article_id,
            "title": self.title,
            "outlet": self.outlet,
            "published_at": self.published_at,
            "paragraphs": list(self.paragraphs),
            "highlights": [h.to_record() for h in self.highlights],
        }


def articles_for(
    ann: AnnotatedCorpus,
    topic: str,
    co_topic: str | None = None,
    outlet: str | None = None,
    polarity: SentimentLabel | None = None,
) -> dict[str, list[ArticleListing]]:
    """Articles mentioning the topic (and co-topic, in the outlet), grouped
    by document-level polarity toward the topic.

    Order inside each group: published_at descending, id ascending. With a
    polarity filter the other groups come back empty.
    """
    known = {m.entity for m in ann.mentions}
    if topic not in known:
        raise NotFoundError(f"unknown topic: {topic!r}", code="unknown-topic")
    if co_topic is not None and co_topic not in known:
        raise NotFoundError(f"unknown topic: {co_topic!r}", code="unknown-topic")
    if outlet is not None and outlet not in ann.snapshot.outlets:
        raise NotFoundError(f"unknown outlet: {outlet!r}", code="unknown-outlet")

    groups: dict[str, list[ArticleListing]] = {"positive": [], "negative": [], "neutral": []}
    for article in ann.snapshot.articles:
        if outlet is not None and article.outlet != outlet:
            continue
        counts = ann.label_counts(article.id)
        if topic not in counts:
            continue
        if co_topic is not None and co_topic not in counts:
            continue
        pos, neg, neu = counts[topic]
        label = document_sentiment(
            SentenceSentimentCounts(article.id, topic, pos, neg, neu)
        )
        if polarity is not None and label is not polarity:
            continue
        groups[label.value].append(
            ArticleListing(
                article_id=article.id,
                outlet=article.outlet,
                title=article.title,
                published_at=article.published_at,
                polarity=label,
                matched_topics=tuple(sorted(counts)),
            )
        )
    for listing in groups.values():
        # stable two-pass sort: id ascending inside equal timestamps
        listing.sort(key=lambda a: a.article_id)
        listing.sort(key=lambda a: a.published_at, reverse=True)
    return groups


def highlighted_article(
    ann: AnnotatedCorpus, article_id: str, topics: set[str]
) -> HighlightedArticle:
    """All mentions of the given topics with paragraph-relative spans."""
    article = ann.snapshot.article(article_id)
    sentences = {s.index: s for s in ann.snapshot.sentences_of(article_id)}
    highlights = []
    for m in ann.mentions_of(article_id):
        if m.entity not in topics:
            continue
        sent = sentences[m.sentence_index]
        highlights.append(
            Highlight(
                paragraph_index=sent.paragraph_index,
                start=sent.start + m.start,
                end=sent.start + m.end,
                entity=m.entity,
                sentiment=m.sentiment or SentimentLabel.NEUTRAL,
            )
        )
    highlights.sort(key=lambda h: (h.paragraph_index, h.start))
    return HighlightedArticle(
        article_id=article.id,
        title=article.title,
        outlet=article.outlet,
        published_at=article.published_at,
        paragraphs=article.paragraphs,
        highlights=tuple(highlights),
    )


class Engine:
    """Immutable corpus state plus cached aggregates and live sessions."""

    def __init__(self, ann: AnnotatedCorpus, store: SessionStore, bucket_count: int = 6):
        self.ann = ann
        self.store = store
        self.bucket_count = bucket_count
        self.workflow = Workflow(ann)
        self.outlets = list(ann.snapshot.outlets)
        self._stats_cache: dict[Optional[str], list[TopicStats]] = {}
        self._stats_lock = threading.Lock()
        self._sessions: dict[str, Session] = {}
        self._session_locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def stats(self, outlet: str | None = None) -> list[TopicStats]:
        with self._stats_lock:
            if outlet not in self._stats_cache:
                self._stats_cache[outlet] = build_topic_stats(self.ann, outlet)
            return self._stats_cache[outlet]

    def stats_by_entity(self, outlet: str | None = None) -> dict[str, TopicStats]:
        return {t.entity: t for t in self.stats(outlet)}

    def session_lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._session_locks.setdefault(session_id, threading.Lock())

    def get_session(self, session_id: str) -> Session:
        with self._registry_lock:
            if session_id in self._sessions:
                return self._sessions[session_id]
        session = self.store.load(session_id)
        with self._registry_lock:
            return self._sessions.setdefault(session_id, session)

    def register(self, session: Session) -> None:
        with self._registry_lock:
            self._sessions[session.id] = session


def load_engine(
    snapshot_path: str | Path,
    sessions_dir: str | Path | None = None,
    bucket_count: int = 6,
) -> Engine:
    ann = AnnotatedCorpus.load(snapshot_path)
    root = Path(sessions_dir) if sessions_dir else Path(snapshot_path).parent / "sessions"
    return Engine(ann, SessionStore(root), bucket_count)


# --- request bodies ----------------------------------------------------------


class SessionCreate(BaseModel):
    sx: float = DEFAULT_SEG.sx
    sy: float = DEFAULT_SEG.sy
    threshold: int = 0


class ChooseBody(BaseModel):
    topic: str
    outlet: str
    sx: Optional[float] = None
    sy: Optional[float] = None
    threshold: Optional[int] = None


class AssignBody(BaseModel):
    topic: str
    region: str


class SetCenterBody(BaseModel):
    category: str


class SelectConflictBody(BaseModel):
    topic: str


class NoteBody(BaseModel):
    text: str
    article_id: Optional[str] = None
    paragraph_index: Optional[int] = None


_STATUS_BY_CODE = {
    "not-ready": 503,
    "corrupt-session": 500,
}


def _category(value: str) -> SentimentCategory:
    try:
        return SentimentCategory(value)
    except ValueError:
        raise InputError(f"unknown sentiment category: {value!r}")


def _seg(sx: float, sy: float) -> SegmentationPoint:
    return SegmentationPoint(sx, sy)


def create_app(engine: Engine | None = None) -> FastAPI:
    """Build the API. ``engine`` may be attached later via app.state; until
    then every data endpoint answers 503."""
    app = FastAPI(title="medialens", docs_url=None, redoc_url=None)
    app.state.engine = engine
    # the browser client may be served from a different origin in development
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(EngineError)
    async def engine_error_handler(request: Request, exc: EngineError):
        status = _STATUS_BY_CODE.get(exc.code)
        if status is None:
            if isinstance(exc, NotFoundError):
                status = 404
            elif isinstance(exc, StageError):
                status = 409
            elif isinstance(exc, InputError):
                status = 400
            else:
                status = 500
        return JSONResponse(
            status_code=status,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    def engine_or_503() -> Engine:
        eng = app.state.engine
        if eng is None:
            raise EngineError("snapshot not loaded yet", code="not-ready")
        return eng

    @app.get("/health")
    def health():
        return {"status": "ok", "ready": app.state.engine is not None}

    @app.get("/outlets")
    def outlets():
        return {"outlets": engine_or_503().outlets}

    @app.get("/topics")
    def topics(threshold: int = 0, outlet: Optional[str] = None):
        eng = engine_or_503()
        if outlet is not None and outlet not in eng.outlets:
            raise NotFoundError(f"unknown outlet: {outlet!r}", code="unknown-outlet")
        rows = [
            {
                "entity": t.entity,
                "name": t.name,
                "total": t.total_articles,
                "pos": t.pos_articles,
                "neg": t.neg_articles,
                "neu": t.neu_articles,
                "score_pos": t.score_pos,
                "score_neg": t.score_neg,
            }
            for t in eng.stats(outlet)
            if t.total_articles >= threshold
        ]
        rows.sort(key=lambda r: (-r["total"], r["entity"]))
        return {"topics": rows}

    @app.get("/scatter")
    def scatter(
        threshold: int = 0,
        sx: float = DEFAULT_SEG.sx,
        sy: float = DEFAULT_SEG.sy,
        outlet: Optional[str] = None,
    ):
        eng = engine_or_503()
        if outlet is not None and outlet not in eng.outlets:
            raise NotFoundError(f"unknown outlet: {outlet!r}", code="unknown-outlet")
        seg = _seg(sx, sy)
        points = scatter_data(eng.stats(outlet), threshold, seg, eng.bucket_count)
        return {
            "seg": {"sx": seg.sx, "sy": seg.sy},
            "threshold": threshold,
            "points": [
                {
                    "entity": p.stats.entity,
                    "name": p.stats.name,
                    "total": p.stats.total_articles,
                    "pos": p.stats.pos_articles,
                    "neg": p.stats.neg_articles,
                    "neu": p.stats.neu_articles,
                    "score_pos": p.stats.score_pos,
                    "score_neg": p.stats.score_neg,
                    "category": p.category.value,
                    "bucket": p.color_bucket,
                }
                for p in points
            ],
        }

    @app.get("/topics/{entity_id}/narration")
    def narration(
        entity_id: str, sx: float = DEFAULT_SEG.sx, sy: float = DEFAULT_SEG.sy
    ):
        eng = engine_or_503()
        stats = eng.stats_by_entity()
        if entity_id not in stats:
            raise NotFoundError(f"unknown topic: {entity_id!r}", code="unknown-topic")
        t = stats[entity_id]
        seg = _seg(sx, sy)
        category = classify(t.score_pos, t.score_neg, seg)
        text = (
            f"{t.name} appears in {t.total_articles} articles: "
            f"{t.pos_articles} lean positive, {t.neg_articles} lean negative, "
            f"and {t.neu_articles} read neutral. "
            f"Its positive score is {t.score_pos:.2f} and its negative score is "
            f"{t.score_neg:.2f}, so with the segmentation point at "
            f"({seg.sx:.2f}, {seg.sy:.2f}) this coverage is classified as {category.value}."
        )
        return {
            "entity": t.entity,
            "name": t.name,
            "total": t.total_articles,
            "pos": t.pos_articles,
            "neg": t.neg_articles,
            "neu": t.neu_articles,
            "score_pos": t.score_pos,
            "score_neg": t.score_neg,
            "category": category.value,
            "text": text,
        }

    @app.get("/hive/data")
    def hive_data(
        center: str,
        outlet: str,
        sx: float = DEFAULT_SEG.sx,
        sy: float = DEFAULT_SEG.sy,
        k: int = 20,
    ):
        eng = engine_or_503()
        if outlet not in eng.outlets:
            raise NotFoundError(f"unknown outlet: {outlet!r}", code="unknown-outlet")
        spec = data_hive(eng.ann, center, outlet, _seg(sx, sy), k)
        record = spec.to_record()
        record["layout"] = layout(spec).to_record()["cells"]
        return record

    # --- sessions ------------------------------------------------------------

    def _round_payload(eng: Engine, session: Session) -> dict:
        rnd = session.rounds[-1] if session.rounds else None
        payload: dict = {
            "session_id": session.id,
            "seg": {"sx": session.seg.sx, "sy": session.seg.sy},
            "threshold": session.threshold,
            "round": rnd.to_record() if rnd else None,
        }
        if rnd and rnd.user_hive and rnd.user_hive.finalized:
            payload["user_layout"] = layout(rnd.user_hive).to_record()["cells"]
        if rnd and rnd.data_hive:
            payload["data_layout"] = layout(rnd.data_hive).to_record()["cells"]
        # the data hive stays server-side until reveal; strip it from payloads
        if rnd and payload["round"] and rnd.data_hive is None:
            payload["round"].pop("data_hive", None)
            payload["round"].pop("conflicts", None)
        return payload

    @app.post("/sessions")
    def create_session(body: SessionCreate):
        eng = engine_or_503()
        session = eng.workflow.new_session(
            seg=_seg(body.sx, body.sy), threshold=body.threshold
        )
        eng.register(session)
        eng.store.save(session)
        return _round_payload(eng, session)

    @app.get("/sessions/{session_id}/summary")
    def summary(session_id: str):
        eng = engine_or_503()
        session = eng.get_session(session_id)
        return eng.workflow.summary(session)

    def _mutate(session_id: str, fn) -> dict:
        eng = engine_or_503()
        session = eng.get_session(session_id)
        with eng.session_lock(session_id):
            try:
                fn(eng, session)
            finally:
                eng.store.save(session)
            return _round_payload(eng, session)

    @app.post("/sessions/{session_id}/rounds")
    def start_round(session_id: str):
        return _mutate(session_id, lambda eng, s: eng.workflow.start_round(s))

    @app.post("/sessions/{session_id}/rounds/current/choose")
    def choose(session_id: str, body: ChooseBody):
        def run(eng: Engine, session: Session):
            if body.sx is not None or body.sy is not None or body.threshold is not None:
                seg = None
                if body.sx is not None or body.sy is not None:
                    seg = _seg(
                        body.sx if body.sx is not None else session.seg.sx,
                        body.sy if body.sy is not None else session.seg.sy,
                    )
                eng.workflow.update_settings(session, seg=seg, threshold=body.threshold)
            eng.workflow.choose_topic_outlet(session, body.topic, body.outlet)

        return _mutate(session_id, run)

    @app.post("/sessions/{session_id}/rounds/current/assign")
    def assign(session_id: str, body: AssignBody):
        return _mutate(
            session_id,
            lambda eng, s: eng.workflow.assign(s, body.topic, _category(body.region)),
        )

    @app.post("/sessions/{session_id}/rounds/current/set-center")
    def set_center(session_id: str, body: SetCenterBody):
        return _mutate(
            session_id,
            lambda eng, s: eng.workflow.set_center(s, _category(body.category)),
        )

    @app.post("/sessions/{session_id}/rounds/current/finalize")
    def finalize_hive(session_id: str):
        return _mutate(session_id, lambda eng, s: eng.workflow.finalize_user_hive(s))

    @app.post("/sessions/{session_id}/rounds/current/reveal")
    def reveal(session_id: str):
        return _mutate(session_id, lambda eng, s: eng.workflow.reveal(s))

    @app.post("/sessions/{session_id}/rounds/current/select-conflict")
    def select_conflict(session_id: str, body: SelectConflictBody):
        return _mutate(
            session_id, lambda eng, s: eng.workflow.select_conflict(s, body.topic)
        )

    @app.post("/sessions/{session_id}/rounds/current/notes")
    def add_note(session_id: str, body: NoteBody):
        return _mutate(
            session_id,
            lambda eng, s: eng.workflow.add_note(
                s, body.text, body.article_id, body.paragraph_index
            ),
        )

    @app.post("/sessions/{session_id}/rounds/current/complete")
    def complete(session_id: str):
        return _mutate(session_id, lambda eng, s: eng.workflow.complete_round(s))

    # --- articles --------------------------------------------------------------

    @app.get("/articles")
    def articles(
        topic: str,
        co_topic: Optional[str] = None,
        outlet: Optional[str] = None,
        polarity: Optional[str] = None,
    ):
        eng = engine_or_503()
        pol = None
        if polarity is not None:
            try:
                pol = SentimentLabel(polarity)
            except ValueError:
                raise InputError(f"unknown polarity: {polarity!r}")
        groups = articles_for(eng.ann, topic, co_topic, outlet, pol)
        return {
            key: [a.to_record() for a in listing] for key, listing in groups.items()
        }

    @app.get("/articles/{article_id}")
    def article(article_id: str, highlight: str = Query(default="")):
        eng = engine_or_503()
        topics = {t for t in highlight.split(",") if t}
        return highlighted_article(eng.ann, article_id, topics).to_record()

    return app
