"""Sentence-level entity mentions with target-dependent sentiment.

Two ways to annotate a corpus: the built-in deterministic annotator (a
gazetteer for alias matching plus a valence lexicon for per-target
sentiment), or an import of externally produced annotation records. Either
path ends in an :class:`AnnotatedCorpus`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .corpus import CorpusSnapshot, RecordError, Sentence
from .errors import InputError

ANNOTATED_FORMAT = "medialens-annotated/1"


class SentimentLabel(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class EntityMention:
    """One mention of a linked entity inside one sentence."""

    article_id: str
    sentence_index: int
    entity: str
    surface: str
    start: int  # offsets within the sentence text
    end: int
    sentiment: SentimentLabel | None = None

    def sort_key(self) -> tuple:
        return (self.article_id, self.sentence_index, self.start, self.end, self.entity)


class Gazetteer:
    """Alias table mapping canonical entity ids to their surface forms.

    Matching is case-sensitive and only fires on token boundaries.
    """

    def __init__(self, entries: Mapping[str, Sequence[str]], display_names: Mapping[str, str]):
        self.aliases: dict[str, tuple[str, ...]] = {}
        self.display_names: dict[str, str] = {}
        for entity_id, aliases in entries.items():
            if not entity_id:
                raise InputError("gazetteer entity id must be non-empty")
            alias_list = tuple(a for a in aliases if a)
            if not alias_list:
                raise InputError(f"gazetteer entry {entity_id!r} has no aliases")
            self.aliases[entity_id] = alias_list
            self.display_names[entity_id] = display_names.get(entity_id, entity_id)
        # ordered longest-first so the scanner can take the first hit
        self._scan_order: list[tuple[str, str]] = sorted(
            ((alias, eid) for eid, al in self.aliases.items() for alias in al),
            key=lambda t: (-len(t[0]), t[1]),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "Gazetteer":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        entries = {}
        names = {}
        for eid, spec in data.items():
            if isinstance(spec, list):
                entries[eid] = spec
                names[eid] = eid
            else:
                entries[eid] = spec.get("aliases", [])
                names[eid] = spec.get("name", eid)
        return cls(entries, names)

    def to_file(self, path: str | Path) -> None:
        data = {
            eid: {"name": self.display_names[eid], "aliases": list(aliases)}
            for eid, aliases in sorted(self.aliases.items())
        }
        Path(path).write_text(
            json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )


class Lexicon:
    """Token valences in [-3, +3]; zero entries are rejected as dead weight."""

    def __init__(self, term_scores: Mapping[str, int]):
        self.term_scores: dict[str, int] = {}
        for term, score in term_scores.items():
            if score == 0:
                raise InputError(f"lexicon term {term!r} has zero valence")
            if not -3 <= score <= 3:
                raise InputError(f"lexicon term {term!r} valence out of range: {score}")
            self.term_scores[term.lower()] = int(score)

    @classmethod
    def from_file(cls, path: str | Path) -> "Lexicon":
        return cls(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_file(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(dict(sorted(self.term_scores.items())), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )


def tokens_with_spans(text: str) -> list[tuple[int, int]]:
    """Spans of maximal alphanumeric runs."""
    spans = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isalnum():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            spans.append((i, j))
            i = j
        else:
            i += 1
    return spans


def _boundary(text: str, start: int, end: int) -> bool:
    before_ok = start == 0 or not text[start - 1].isalnum()
    after_ok = end == len(text) or not text[end].isalnum()
    return before_ok and after_ok


def link_entities(sentence: Sentence, gazetteer: Gazetteer) -> list[EntityMention]:
    """Longest-match-wins, left-to-right, non-overlapping alias scan.

    When two entities share an alias of equal length at the same position,
    the smaller entity id wins (fixed for reproducibility).
    """
    text = sentence.text
    mentions: list[EntityMention] = []
    i = 0
    n = len(text)
    while i < n:
        if i > 0 and text[i - 1].isalnum() and text[i].isalnum():
            i += 1
            continue
        hit = None
        for alias, entity_id in gazetteer._scan_order:
            end = i + len(alias)
            if text.startswith(alias, i) and _boundary(text, i, end):
                hit = (alias, entity_id, end)
                break
        if hit is None:
            i += 1
            continue
        alias, entity_id, end = hit
        mentions.append(
            EntityMention(
                article_id=sentence.article_id,
                sentence_index=sentence.index,
                entity=entity_id,
                surface=alias,
                start=i,
                end=end,
            )
        )
        i = end
    return mentions


def classify_target_sentiment(
    sentence: Sentence, mention: EntityMention, lexicon: Lexicon
) -> SentimentLabel:
    """Valence sum over sentence tokens, excluding the mention's own tokens.

    Positive sum -> positive, negative -> negative, zero -> neutral. Each
    mention in a sentence is classified independently; only its own span is
    excluded from its sum.
    """
    text = sentence.text
    score = 0
    for tstart, tend in tokens_with_spans(text):
        if tstart < mention.end and tend > mention.start:
            continue
        score += lexicon.term_scores.get(text[tstart:tend].lower(), 0)
    if score > 0:
        return SentimentLabel.POSITIVE
    if score < 0:
        return SentimentLabel.NEGATIVE
    return SentimentLabel.NEUTRAL


class AnnotatedCorpus:
    """A corpus snapshot plus its sentence-level mention table."""

    def __init__(
        self,
        snapshot: CorpusSnapshot,
        mentions: Iterable[EntityMention],
        entity_names: Mapping[str, str],
    ):
        self.snapshot = snapshot
        self.mentions: tuple[EntityMention, ...] = tuple(
            sorted(mentions, key=EntityMention.sort_key)
        )
        self.entity_names: dict[str, str] = dict(entity_names)
        self._by_article: dict[str, list[EntityMention]] = {}
        for m in self.mentions:
            self._by_article.setdefault(m.article_id, []).append(m)

    def mentions_of(self, article_id: str) -> list[EntityMention]:
        return self._by_article.get(article_id, [])

    def entities_of(self, article_id: str) -> set[str]:
        return {m.entity for m in self.mentions_of(article_id)}

    def label_counts(self, article_id: str) -> dict[str, list[int]]:
        """Per entity: [positive, negative, neutral] labeled-mention counts."""
        counts: dict[str, list[int]] = {}
        for m in self.mentions_of(article_id):
            row = counts.setdefault(m.entity, [0, 0, 0])
            if m.sentiment is SentimentLabel.POSITIVE:
                row[0] += 1
            elif m.sentiment is SentimentLabel.NEGATIVE:
                row[1] += 1
            elif m.sentiment is SentimentLabel.NEUTRAL:
                row[2] += 1
        return counts

    def display_name(self, entity_id: str) -> str:
        return self.entity_names.get(entity_id, entity_id)

    def to_record(self) -> dict:
        return {
            "format": ANNOTATED_FORMAT,
            "snapshot": self.snapshot.to_record(),
            "entities": dict(sorted(self.entity_names.items())),
            "mentions": [
                {
                    "article_id": m.article_id,
                    "sentence_index": m.sentence_index,
                    "entity": m.entity,
                    "start": m.start,
                    "end": m.end,
                    "sentiment": m.sentiment.value if m.sentiment else None,
                }
                for m in self.mentions
            ],
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_record(), sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def from_record(cls, record: dict) -> "AnnotatedCorpus":
        if record.get("format") != ANNOTATED_FORMAT:
            raise InputError(f"not an annotated corpus: format={record.get('format')!r}")
        snapshot = CorpusSnapshot.from_record(record["snapshot"])
        sentences = {
            (s.article_id, s.index): s for s in snapshot.sentences
        }
        mentions = []
        for m in record["mentions"]:
            sent = sentences[(m["article_id"], m["sentence_index"])]
            mentions.append(
                EntityMention(
                    article_id=m["article_id"],
                    sentence_index=m["sentence_index"],
                    entity=m["entity"],
                    surface=sent.text[m["start"] : m["end"]],
                    start=m["start"],
                    end=m["end"],
                    sentiment=SentimentLabel(m["sentiment"]) if m["sentiment"] else None,
                )
            )
        return cls(snapshot, mentions, record.get("entities", {}))

    @classmethod
    def load(cls, path: str | Path) -> "AnnotatedCorpus":
        return cls.from_record(json.loads(Path(path).read_text(encoding="utf-8")))


def annotate_corpus(
    snapshot: CorpusSnapshot, gazetteer: Gazetteer, lexicon: Lexicon
) -> AnnotatedCorpus:
    """Run the deterministic annotator over every sentence."""
    mentions: list[EntityMention] = []
    seen_entities: set[str] = set()
    for sentence in snapshot.sentences:
        for mention in link_entities(sentence, gazetteer):
            label = classify_target_sentiment(sentence, mention, lexicon)
            mentions.append(replace(mention, sentiment=label))
            seen_entities.add(mention.entity)
    names = {eid: gazetteer.display_names[eid] for eid in seen_entities}
    return AnnotatedCorpus(snapshot, mentions, names)


@dataclass(frozen=True)
class ImportResult:
    corpus: AnnotatedCorpus
    rejected: tuple[RecordError, ...]
    accepted_count: int
    input_count: int


_LABEL_VALUES = {label.value for label in SentimentLabel}


def import_annotations(
    records: Iterable[tuple[str, int, dict]],
    snapshot: CorpusSnapshot,
) -> ImportResult:
    """Attach externally produced annotation records to a snapshot.

    ``records`` yields (source, line number, record dict). A record must
    reference an existing article and sentence, stay inside the sentence
    bounds, carry a known sentiment label, not overlap an already accepted
    mention in the same sentence, and not contradict an earlier record's
    display name for the same entity.
    """
    mentions: list[EntityMention] = []
    rejected: list[RecordError] = []
    names: dict[str, str] = {}
    taken: dict[tuple[str, int], list[tuple[int, int]]] = {}
    total = 0

    for source, lineno, rec in records:
        total += 1

        def reject(code: str, message: str) -> None:
            rejected.append(RecordError(source, lineno, code, message))

        try:
            article_id = rec["article_id"]
            sentence_index = int(rec["sentence_index"])
            entity_id = rec["entity_id"]
            start = int(rec["start"])
            end = int(rec["end"])
            sentiment = rec["sentiment"]
            display_name = rec.get("display_name", entity_id)
        except (KeyError, TypeError, ValueError) as exc:
            reject("malformed-record", f"bad annotation record: {exc}")
            continue
        if not snapshot.has_article(article_id):
            reject("dangling-reference", f"unknown article: {article_id!r}")
            continue
        sents = snapshot.sentences_of(article_id)
        local = sentence_index - (sents[0].index if sents else 0)
        if not sents or local < 0 or local >= len(sents):
            reject("dangling-reference", f"sentence {sentence_index} not in article {article_id!r}")
            continue
        sentence = sents[local]
        if not (0 <= start < end <= len(sentence.text)):
            reject("offset-out-of-bounds", f"span ({start}, {end}) outside sentence of length {len(sentence.text)}")
            continue
        if sentiment not in _LABEL_VALUES:
            reject("unknown-sentiment", f"unknown sentiment label: {sentiment!r}")
            continue
        key = (article_id, sentence_index)
        if any(start < e and end > s for s, e in taken.get(key, [])):
            reject("overlapping-mention", f"span ({start}, {end}) overlaps an accepted mention")
            continue
        if entity_id in names and names[entity_id] != display_name:
            reject("conflicting-display-name", f"entity {entity_id!r} already named {names[entity_id]!r}")
            continue
        names.setdefault(entity_id, display_name)
        taken.setdefault(key, []).append((start, end))
        mentions.append(
            EntityMention(
                article_id=article_id,
                sentence_index=sentence.index,
                entity=entity_id,
                surface=sentence.text[start:end],
                start=start,
                end=end,
                sentiment=SentimentLabel(sentiment),
            )
        )

    corpus = AnnotatedCorpus(snapshot, mentions, names)
    return ImportResult(
        corpus=corpus,
        rejected=tuple(rejected),
        accepted_count=len(mentions),
        input_count=total,
    )


def read_annotation_lines(path: str | Path) -> list[tuple[str, int, dict]]:
    """Parse an annotation line-record file into (source, line, record) triples."""
    out: list[tuple[str, int, dict]] = []
    p = Path(path)
    with p.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                rec = {"_malformed": line}
            out.append((p.name, lineno, rec))
    return out
