"""Topic hives: region-encoded hexagon arrangements around a center topic.

A hive holds a center topic, an outlet, and up to K co-occurring candidate
topics, each assigned to one of four sentiment regions. Data hives derive
their assignments from outlet-conditioned co-coverage counts; user hives
are built interactively and compared against the data hive to surface
conflicts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .aggregate import (
    SegmentationPoint,
    SentenceSentimentCounts,
    SentimentCategory,
    classify,
    cooccurrence_counts,
    document_sentiment,
    minmax_scores,
)
from .annotate import AnnotatedCorpus, SentimentLabel
from .errors import InputError, NotFoundError, StageError

DEFAULT_K = 20


@dataclass
class HiveSpec:
    center: str
    center_sentiment: SentimentCategory
    outlet: str
    candidates: tuple[str, ...]
    assignments: dict[str, SentimentCategory] = field(default_factory=dict)
    kind: str = "user"  # "user" | "data"
    seg: SegmentationPoint | None = None
    finalized: bool = False

    def __post_init__(self):
        if len(set(self.candidates)) != len(self.candidates):
            raise InputError("hive candidates must be distinct")
        if self.center in self.candidates:
            raise InputError("hive center cannot be a candidate")

    @property
    def unassigned(self) -> list[str]:
        return [c for c in self.candidates if c not in self.assignments]

    def to_record(self) -> dict:
        return {
            "center": self.center,
            "center_sentiment": self.center_sentiment.value,
            "outlet": self.outlet,
            "candidates": list(self.candidates),
            "assignments": {
                e: c.value for e, c in sorted(self.assignments.items())
            },
            "kind": self.kind,
            "seg": {"sx": self.seg.sx, "sy": self.seg.sy} if self.seg else None,
            "finalized": self.finalized,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "HiveSpec":
        seg = rec.get("seg")
        return cls(
            center=rec["center"],
            center_sentiment=SentimentCategory(rec["center_sentiment"]),
            outlet=rec["outlet"],
            candidates=tuple(rec["candidates"]),
            assignments={
                e: SentimentCategory(c) for e, c in rec.get("assignments", {}).items()
            },
            kind=rec.get("kind", "user"),
            seg=SegmentationPoint(seg["sx"], seg["sy"]) if seg else None,
            finalized=rec.get("finalized", False),
        )


@dataclass(frozen=True)
class Conflict:
    entity: str
    user_category: SentimentCategory
    data_category: SentimentCategory


@dataclass(frozen=True)
class ConflictReport:
    conflicts: tuple[Conflict, ...]

    @property
    def count(self) -> int:
        return len(self.conflicts)

    def to_record(self) -> dict:
        return {
            "count": self.count,
            "conflicts": [
                {
                    "entity": c.entity,
                    "user_category": c.user_category.value,
                    "data_category": c.data_category.value,
                }
                for c in self.conflicts
            ],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "ConflictReport":
        return cls(
            conflicts=tuple(
                Conflict(
                    c["entity"],
                    SentimentCategory(c["user_category"]),
                    SentimentCategory(c["data_category"]),
                )
                for c in rec.get("conflicts", [])
            )
        )


@dataclass(frozen=True)
class HiveCell:
    entity: str
    q: int
    r: int
    region: SentimentCategory
    is_center: bool = False


@dataclass(frozen=True)
class HiveLayout:
    cells: tuple[HiveCell, ...]

    def to_record(self) -> dict:
        return {
            "cells": [
                {
                    "entity": c.entity,
                    "q": c.q,
                    "r": c.r,
                    "region": c.region.value,
                    "is_center": c.is_center,
                }
                for c in self.cells
            ]
        }


def candidate_topics(
    center: str,
    cooccurrence: Mapping[tuple[str, str], int],
    k: int = DEFAULT_K,
) -> list[str]:
    """Top-k co-occurring topics for a center, count descending, id ascending.

    The table passed in decides the conditioning (whole corpus or a single
    outlet). An isolated center yields an empty list.
    """
    if k < 1:
        raise InputError("k must be >= 1")
    scored: list[tuple[int, str]] = []
    for (a, b), count in cooccurrence.items():
        if a == center:
            scored.append((count, b))
        elif b == center:
            scored.append((count, a))
    scored.sort(key=lambda t: (-t[0], t[1]))
    return [entity for _, entity in scored[:k]]


def _joint_label_counts(
    ann: AnnotatedCorpus, center: str, outlet: str, candidates: Sequence[str]
) -> dict[str, tuple[int, int, int]]:
    """Per candidate: (pos, neg, neu) article counts toward the candidate,
    over outlet articles that mention both the center and the candidate."""
    wanted = set(candidates)
    acc = {c: [0, 0, 0] for c in candidates}
    for article in ann.snapshot.articles:
        if article.outlet != outlet:
            continue
        counts = ann.label_counts(article.id)
        if center not in counts:
            continue
        for entity in wanted.intersection(counts):
            pos, neg, neu = counts[entity]
            label = document_sentiment(
                SentenceSentimentCounts(article.id, entity, pos, neg, neu)
            )
            row = acc[entity]
            if label is SentimentLabel.POSITIVE:
                row[0] += 1
            elif label is SentimentLabel.NEGATIVE:
                row[1] += 1
            else:
                row[2] += 1
    return {c: (row[0], row[1], row[2]) for c, row in acc.items()}


def _center_label_counts(ann: AnnotatedCorpus, center: str, outlet: str) -> tuple[int, int]:
    pos_n = neg_n = 0
    for article in ann.snapshot.articles:
        if article.outlet != outlet:
            continue
        counts = ann.label_counts(article.id)
        if center not in counts:
            continue
        pos, neg, neu = counts[center]
        label = document_sentiment(
            SentenceSentimentCounts(article.id, center, pos, neg, neu)
        )
        if label is SentimentLabel.POSITIVE:
            pos_n += 1
        elif label is SentimentLabel.NEGATIVE:
            neg_n += 1
    return pos_n, neg_n


def data_hive(
    ann: AnnotatedCorpus,
    center: str,
    outlet: str,
    seg: SegmentationPoint,
    k: int = DEFAULT_K,
    candidates: Sequence[str] | None = None,
) -> HiveSpec:
    """Build the data-generated hive for (center, outlet).

    Candidate sentiment is conditioned on co-coverage: only outlet articles
    mentioning both the center and the candidate count. Scores are min-max
    normalized within the candidate set (hive-local), then classified with
    the segmentation point. The center is scored on the same candidate-set
    scales, clamped into [0, 1]. Candidates with zero qualifying articles
    are dropped.
    """
    if candidates is None:
        table = cooccurrence_counts(ann, outlet)
        candidates = candidate_topics(center, table, k)
    if not candidates:
        raise NotFoundError(
            f"no co-occurring topics for {center!r} under outlet {outlet!r}",
            code="no-candidates",
        )
    joint = _joint_label_counts(ann, center, outlet, candidates)
    kept = [c for c in candidates if sum(joint[c]) > 0]
    if not kept:
        raise NotFoundError(
            f"no qualifying articles for any candidate of {center!r} under {outlet!r}",
            code="no-candidates",
        )
    scores = minmax_scores({c: (joint[c][0], joint[c][1]) for c in kept})
    assignments = {
        c: classify(scores[c][0], scores[c][1], seg) for c in kept
    }

    pos_values = [joint[c][0] for c in kept]
    neg_values = [joint[c][1] for c in kept]
    center_pos, center_neg = _center_label_counts(ann, center, outlet)

    def scale(value: int, lo: int, hi: int) -> float:
        if hi == lo:
            return 0.0
        return min(1.0, max(0.0, (value - lo) / (hi - lo)))

    center_cat = classify(
        scale(center_pos, min(pos_values), max(pos_values)),
        scale(center_neg, min(neg_values), max(neg_values)),
        seg,
    )
    return HiveSpec(
        center=center,
        center_sentiment=center_cat,
        outlet=outlet,
        candidates=tuple(kept),
        assignments=assignments,
        kind="data",
        seg=seg,
        finalized=True,
    )


def new_user_hive(center: str, outlet: str, candidates: Sequence[str]) -> HiveSpec:
    """Fresh, unfinalized belief hive: nothing assigned, center neutral."""
    if not candidates:
        raise InputError("a user hive needs at least one candidate")
    return HiveSpec(
        center=center,
        center_sentiment=SentimentCategory.NEUTRAL,
        outlet=outlet,
        candidates=tuple(candidates),
        kind="user",
    )


def assign_topic(hive: HiveSpec, topic: str, region: SentimentCategory) -> HiveSpec:
    """Assign (or re-assign) a candidate to a region. Regions never fill up;
    the five visible slots are presentation only."""
    if hive.finalized:
        raise StageError("hive is finalized; assignments are immutable")
    if topic not in hive.candidates:
        raise NotFoundError(f"not a candidate of this hive: {topic!r}", code="unknown-topic")
    hive.assignments[topic] = region
    return hive


def set_center_sentiment(hive: HiveSpec, category: SentimentCategory) -> HiveSpec:
    if hive.finalized:
        raise StageError("hive is finalized; center sentiment is immutable")
    hive.center_sentiment = category
    return hive


def finalize(hive: HiveSpec) -> HiveSpec:
    """Lock the hive. Every candidate must be assigned first."""
    if hive.finalized:
        raise StageError("hive is already finalized")
    missing = hive.unassigned
    if missing:
        raise StageError(
            f"cannot finalize: {len(missing)} unassigned candidate(s): {', '.join(missing[:5])}"
        )
    hive.finalized = True
    return hive


def detect_conflicts(user: HiveSpec, data: HiveSpec) -> ConflictReport:
    """Entries where the user's category differs from the data's.

    Candidates are reported in the user hive's candidate order; the center
    cell is compared last.
    """
    if not user.finalized or not data.finalized:
        raise StageError("conflict detection requires two finalized hives")
    if (
        user.center != data.center
        or user.outlet != data.outlet
        or set(user.candidates) != set(data.candidates)
    ):
        raise InputError("hives disagree on center, outlet, or candidate set")
    conflicts = [
        Conflict(c, user.assignments[c], data.assignments[c])
        for c in user.candidates
        if user.assignments[c] != data.assignments[c]
    ]
    if user.center_sentiment != data.center_sentiment:
        conflicts.append(Conflict(user.center, user.center_sentiment, data.center_sentiment))
    return ConflictReport(conflicts=tuple(conflicts))


# --- hexagon layout ---------------------------------------------------------
#
# Axial coordinates (q, r) mapped to the plane with the pointy-top transform
# x = sqrt(3) * (q + r/2), y = 1.5 * r. The plane splits into four quadrant
# wedges around the center: positive east, negative west, mixed north,
# neutral south (ties on the diagonals go east/west). Within a wedge, slots
# are consumed ring by ring outward, each ring walked in ascending angle, so
# the sixth and later topics in a region land in the next ring out.

_REGION_ORDER = (
    SentimentCategory.POSITIVE,
    SentimentCategory.NEGATIVE,
    SentimentCategory.MIXED,
    SentimentCategory.NEUTRAL,
)


def _to_plane(q: int, r: int) -> tuple[float, float]:
    return (math.sqrt(3.0) * (q + r / 2.0), 1.5 * r)


def _region_of(q: int, r: int) -> SentimentCategory:
    x, y = _to_plane(q, r)
    if abs(x) >= abs(y):
        return SentimentCategory.POSITIVE if x > 0 else SentimentCategory.NEGATIVE
    return SentimentCategory.MIXED if y < 0 else SentimentCategory.NEUTRAL


def _ring(k: int) -> list[tuple[int, int]]:
    """Cells at hex distance k, sorted by plane angle from east."""
    cells = []
    for q in range(-k, k + 1):
        for r in range(max(-k, -q - k), min(k, -q + k) + 1):
            if max(abs(q), abs(r), abs(-q - r)) == k:
                cells.append((q, r))

    def angle(cell: tuple[int, int]) -> float:
        x, y = _to_plane(*cell)
        return math.atan2(y, x) % (2.0 * math.pi)

    cells.sort(key=angle)
    return cells


def _region_slots(region: SentimentCategory, needed: int) -> list[tuple[int, int]]:
    slots: list[tuple[int, int]] = []
    k = 1
    while len(slots) < needed:
        slots.extend(cell for cell in _ring(k) if _region_of(*cell) == region)
        k += 1
    return slots[:needed]


def layout(hive: HiveSpec) -> HiveLayout:
    """Deterministic cell placement for a finalized hive."""
    if not hive.finalized:
        raise StageError("layout requires a finalized hive")
    cells = [
        HiveCell(entity=hive.center, q=0, r=0, region=hive.center_sentiment, is_center=True)
    ]
    for region in _REGION_ORDER:
        topics = [c for c in hive.candidates if hive.assignments.get(c) == region]
        for topic, (q, r) in zip(topics, _region_slots(region, len(topics))):
            cells.append(HiveCell(entity=topic, q=q, r=r, region=region))
    return HiveLayout(cells=tuple(cells))


def export_hive(hive: HiveSpec, path: str | Path) -> None:
    """Canonical hive record with layout coordinates."""
    record = hive.to_record()
    record["layout"] = layout(hive).to_record()["cells"]
    Path(path).write_text(
        json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8"
    )
