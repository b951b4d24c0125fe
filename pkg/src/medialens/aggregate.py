"""Aggregation math over an annotated corpus.

Per-article target sentiment uses the max rule over sentence-label counts.
Per-topic article counts feed a two-dimensional score: positive and negative
article counts are min-max normalized independently into [0, 1], so
polarizing topics (high on both axes) stay distinguishable from neutral
ones. A movable segmentation point splits score space into four categories.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

from .annotate import AnnotatedCorpus, SentimentLabel
from .errors import InputError


class SentimentCategory(str, Enum):
    NEUTRAL = "neutral"
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED = "mixed"


@dataclass(frozen=True)
class SegmentationPoint:
    sx: float
    sy: float

    def __post_init__(self):
        if not (0.0 <= self.sx <= 1.0 and 0.0 <= self.sy <= 1.0):
            raise InputError(f"segmentation point out of [0,1]: ({self.sx}, {self.sy})")


DEFAULT_SEG = SegmentationPoint(0.5, 0.5)


@dataclass(frozen=True)
class SentenceSentimentCounts:
    """Labeled-mention counts for one (article, entity) pair."""

    article_id: str
    entity: str
    pos: int
    neg: int
    neu: int

    @property
    def total(self) -> int:
        return self.pos + self.neg + self.neu


@dataclass(frozen=True)
class DocumentEntitySentiment:
    article_id: str
    entity: str
    counts: SentenceSentimentCounts
    label: SentimentLabel


@dataclass(frozen=True)
class TopicCounts:
    entity: str
    pos_articles: int
    neg_articles: int
    neu_articles: int

    @property
    def total_articles(self) -> int:
        return self.pos_articles + self.neg_articles + self.neu_articles


@dataclass(frozen=True)
class TopicStats:
    entity: str
    name: str
    outlet_filter: str | None
    total_articles: int
    pos_articles: int
    neg_articles: int
    neu_articles: int
    score_pos: float
    score_neg: float


@dataclass(frozen=True)
class ScatterPoint:
    stats: TopicStats
    category: SentimentCategory
    color_bucket: int


def document_sentiment(counts: SentenceSentimentCounts) -> SentimentLabel:
    """Max rule over (pos, neg, neu); ties prefer neutral, then negative."""
    if counts.pos < 0 or counts.neg < 0 or counts.neu < 0:
        raise InputError("sentence counts must be non-negative")
    if counts.total == 0:
        raise InputError(
            f"entity {counts.entity!r} has no labeled sentences in article {counts.article_id!r}"
        )
    best = max(counts.pos, counts.neg, counts.neu)
    if counts.neu == best:
        return SentimentLabel.NEUTRAL
    if counts.neg == best:
        return SentimentLabel.NEGATIVE
    return SentimentLabel.POSITIVE


def article_entity_sentiments(
    ann: AnnotatedCorpus, article_id: str
) -> dict[str, DocumentEntitySentiment]:
    """Document-level label toward each entity the article mentions."""
    out: dict[str, DocumentEntitySentiment] = {}
    for entity, (pos, neg, neu) in ann.label_counts(article_id).items():
        counts = SentenceSentimentCounts(article_id, entity, pos, neg, neu)
        out[entity] = DocumentEntitySentiment(article_id, entity, counts, document_sentiment(counts))
    return out


def _iter_articles(ann: AnnotatedCorpus, outlet_filter: str | None):
    for article in ann.snapshot.articles:
        if outlet_filter is None or article.outlet == outlet_filter:
            yield article


def topic_counts(
    ann: AnnotatedCorpus, outlet_filter: str | None = None
) -> dict[str, TopicCounts]:
    """Per entity: articles whose document label toward it is pos/neg/neu."""
    acc: dict[str, list[int]] = {}
    for article in _iter_articles(ann, outlet_filter):
        for entity, des in article_entity_sentiments(ann, article.id).items():
            row = acc.setdefault(entity, [0, 0, 0])
            if des.label is SentimentLabel.POSITIVE:
                row[0] += 1
            elif des.label is SentimentLabel.NEGATIVE:
                row[1] += 1
            else:
                row[2] += 1
    return {
        entity: TopicCounts(entity, row[0], row[1], row[2])
        for entity, row in sorted(acc.items())
    }


def minmax_scores(
    counts_by_topic: Mapping[str, tuple[int, int]]
) -> dict[str, tuple[float, float]]:
    """Min-max normalize (pos, neg) counts into [0, 1] per axis.

    The normalization population is exactly the mapping passed in. A
    degenerate axis (max == min) maps to 0.0 for every topic.
    """
    if not counts_by_topic:
        raise InputError("empty normalization population")
    pos_values = [p for p, _ in counts_by_topic.values()]
    neg_values = [n for _, n in counts_by_topic.values()]
    pos_min, pos_max = min(pos_values), max(pos_values)
    neg_min, neg_max = min(neg_values), max(neg_values)
    pos_range = pos_max - pos_min
    neg_range = neg_max - neg_min

    def norm(value: int, lo: int, rng: int) -> float:
        return 0.0 if rng == 0 else (value - lo) / rng

    return {
        entity: (norm(p, pos_min, pos_range), norm(n, neg_min, neg_range))
        for entity, (p, n) in counts_by_topic.items()
    }


def build_topic_stats(
    ann: AnnotatedCorpus, outlet_filter: str | None = None
) -> list[TopicStats]:
    """Counts plus scores for every topic; sorted by entity id.

    The normalization population is all topics in the (optionally
    outlet-filtered) corpus, never a threshold-filtered subset.
    """
    counts = topic_counts(ann, outlet_filter)
    if not counts:
        return []
    scores = minmax_scores(
        {e: (c.pos_articles, c.neg_articles) for e, c in counts.items()}
    )
    return [
        TopicStats(
            entity=entity,
            name=ann.display_name(entity),
            outlet_filter=outlet_filter,
            total_articles=c.total_articles,
            pos_articles=c.pos_articles,
            neg_articles=c.neg_articles,
            neu_articles=c.neu_articles,
            score_pos=scores[entity][0],
            score_neg=scores[entity][1],
        )
        for entity, c in sorted(counts.items())
    ]


def classify(score_pos: float, score_neg: float, seg: SegmentationPoint) -> SentimentCategory:
    """Four-way partition of score space around the segmentation point.

    The boundary is inclusive toward the non-neutral side: a score equal to
    the controller coordinate counts as past it.
    """
    hi_pos = score_pos >= seg.sx
    hi_neg = score_neg >= seg.sy
    if hi_pos and hi_neg:
        return SentimentCategory.MIXED
    if hi_pos:
        return SentimentCategory.POSITIVE
    if hi_neg:
        return SentimentCategory.NEGATIVE
    return SentimentCategory.NEUTRAL


def cooccurrence_counts(
    ann: AnnotatedCorpus, outlet_filter: str | None = None
) -> dict[tuple[str, str], int]:
    """Articles mentioning both entities of a pair; keys sorted, no self-pairs."""
    table: dict[tuple[str, str], int] = {}
    for article in _iter_articles(ann, outlet_filter):
        entities = sorted(ann.entities_of(article.id))
        for i in range(len(entities)):
            for j in range(i + 1, len(entities)):
                pair = (entities[i], entities[j])
                table[pair] = table.get(pair, 0) + 1
    return table


def color_bucket(total_articles: int, bucket_count: int = 6) -> int:
    """Logarithmic color bucket: floor(log10(n) + 1), clamped to the palette."""
    if total_articles < 1:
        raise InputError("color bucket needs a positive article count")
    return min(len(str(total_articles)), bucket_count)


def scatter_data(
    stats: Sequence[TopicStats],
    threshold: int,
    seg: SegmentationPoint,
    bucket_count: int = 6,
) -> list[ScatterPoint]:
    """Threshold-filtered scatter points with category and color bucket.

    Scores come in precomputed on ``stats`` and are not re-normalized here,
    so raising the threshold never moves the surviving dots.
    """
    if threshold < 0:
        raise InputError("threshold must be >= 0")
    return [
        ScatterPoint(
            stats=t,
            category=classify(t.score_pos, t.score_neg, seg),
            color_bucket=color_bucket(t.total_articles, bucket_count),
        )
        for t in stats
        if t.total_articles >= threshold
    ]


def export_topic_stats(stats: Sequence[TopicStats], path: str | Path) -> None:
    """Canonical line-record export, sorted by entity id."""
    lines = []
    for t in sorted(stats, key=lambda t: t.entity):
        lines.append(
            json.dumps(
                {
                    "entity": t.entity,
                    "name": t.name,
                    "outlet": t.outlet_filter,
                    "total": t.total_articles,
                    "pos": t.pos_articles,
                    "neg": t.neg_articles,
                    "neu": t.neu_articles,
                    "score_pos": t.score_pos,
                    "score_neg": t.score_neg,
                },
                sort_keys=True,
                ensure_ascii=False,
            )
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def export_cooccurrence(
    table: Mapping[tuple[str, str], int], path: str | Path, outlet_filter: str | None = None
) -> None:
    """Canonical line-record export, pairs sorted lexicographically."""
    lines = []
    for (a, b), count in sorted(table.items()):
        lines.append(
            json.dumps(
                {"a": a, "b": b, "count": count, "outlet": outlet_filter},
                sort_keys=True,
                ensure_ascii=False,
            )
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
