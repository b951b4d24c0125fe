"""Corpus data model and ingestion.

Articles arrive as line records (one JSON object per line) and are frozen
into an immutable :class:`CorpusSnapshot`. Sentence segmentation is
rule-based: a sentence ends at ``.``, ``!`` or ``?`` followed by whitespace
(or end of paragraph), unless the word carrying the period is on the
abbreviation guard list. The snapshot's fingerprint depends only on content,
never on file or line ordering.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import InputError, NotFoundError

SNAPSHOT_FORMAT = "medialens-snapshot/1"

# Abbreviations that keep their trailing period from ending a sentence.
DEFAULT_GUARD = frozenset(
    {
        "U.S.", "U.K.", "U.N.", "D.C.", "Mr.", "Mrs.", "Ms.", "Dr.",
        "Gov.", "Sen.", "Rep.", "Gen.", "Jr.", "Sr.", "St.", "Inc.",
        "Co.", "Corp.", "vs.", "etc.", "e.g.", "i.e.", "No.",
    }
)

TERMINALS = ".!?"


@dataclass(frozen=True)
class Article:
    id: str
    outlet: str
    title: str
    paragraphs: tuple[str, ...]
    published_at: str  # ISO-8601, UTC
    url: str

    def to_record(self) -> dict:
        return {
            "id": self.id,
            "outlet": self.outlet,
            "title": self.title,
            "paragraphs": list(self.paragraphs),
            "published_at": self.published_at,
            "url": self.url,
        }


@dataclass(frozen=True)
class Sentence:
    """One sentence of an article; ``start``/``end`` index into its paragraph."""

    article_id: str
    index: int
    paragraph_index: int
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class RecordError:
    """One rejected input record, with enough context to fix the file."""

    source: str
    line: int
    code: str  # malformed-record | duplicate-id | unknown-outlet
    message: str


@dataclass(frozen=True)
class IngestResult:
    snapshot: "CorpusSnapshot"
    rejected: tuple[RecordError, ...]
    accepted_count: int
    input_count: int


def _guarded(text: str, dot: int, guard: frozenset[str]) -> bool:
    """True when the period at ``dot`` belongs to a guarded abbreviation."""
    j = dot
    while j > 0 and not text[j - 1].isspace():
        j -= 1
    return text[j : dot + 1] in guard


def split_sentences(
    article: Article, guard: frozenset[str] = DEFAULT_GUARD, index_base: int = 0
) -> list[Sentence]:
    """Segment an article's paragraphs into sentences.

    Spans never overlap, stay inside their paragraph, and cover every
    non-whitespace character. Empty or all-whitespace paragraphs yield
    no sentences.
    """
    sentences: list[Sentence] = []
    idx = index_base
    for pi, para in enumerate(article.paragraphs):
        pos = 0
        n = len(para)
        while pos < n:
            while pos < n and para[pos].isspace():
                pos += 1
            if pos >= n:
                break
            end = None
            for i in range(pos, n):
                ch = para[i]
                if ch not in TERMINALS:
                    continue
                if i + 1 < n and not para[i + 1].isspace():
                    continue
                if ch == "." and _guarded(para, i, guard):
                    continue
                end = i + 1
                break
            if end is None:
                end = n
                while end > pos and para[end - 1].isspace():
                    end -= 1
            sentences.append(
                Sentence(
                    article_id=article.id,
                    index=idx,
                    paragraph_index=pi,
                    text=para[pos:end],
                    start=pos,
                    end=end,
                )
            )
            idx += 1
            pos = end
    return sentences


class CorpusSnapshot:
    """Immutable corpus: validated articles plus the derived sentence table.

    ``outlets`` is the configured outlet set; it defaults to the outlets
    present in the articles when not given.
    """

    def __init__(
        self,
        articles: Sequence[Article],
        guard: frozenset[str] = DEFAULT_GUARD,
        outlets: Iterable[str] | None = None,
    ):
        self.guard = frozenset(guard)
        self.articles: tuple[Article, ...] = tuple(sorted(articles, key=lambda a: a.id))
        if outlets is None:
            outlets = {a.outlet for a in self.articles}
        self.outlets: tuple[str, ...] = tuple(sorted(outlets))
        self._by_id = {a.id: a for a in self.articles}
        sentences: list[Sentence] = []
        self._sentences_by_article: dict[str, tuple[Sentence, ...]] = {}
        for art in self.articles:
            sents = tuple(split_sentences(art, self.guard))
            self._sentences_by_article[art.id] = sents
            sentences.extend(sents)
        self.sentences: tuple[Sentence, ...] = tuple(sentences)
        self.fingerprint = self._compute_fingerprint()

    def _compute_fingerprint(self) -> str:
        payload = {
            "guard": sorted(self.guard),
            "outlets": list(self.outlets),
            "articles": [a.to_record() for a in self.articles],
        }
        blob = json.dumps(payload, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    def __len__(self) -> int:
        return len(self.articles)

    def article(self, article_id: str) -> Article:
        try:
            return self._by_id[article_id]
        except KeyError:
            raise NotFoundError(f"unknown article: {article_id}", code="unknown-article")

    def has_article(self, article_id: str) -> bool:
        return article_id in self._by_id

    def sentences_of(self, article_id: str) -> tuple[Sentence, ...]:
        if article_id not in self._by_id:
            raise NotFoundError(f"unknown article: {article_id}", code="unknown-article")
        return self._sentences_by_article[article_id]

    def to_record(self) -> dict:
        return {
            "format": SNAPSHOT_FORMAT,
            "guard": sorted(self.guard),
            "outlets": list(self.outlets),
            "articles": [a.to_record() for a in self.articles],
            "fingerprint": self.fingerprint,
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_record(), sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def from_record(cls, record: dict) -> "CorpusSnapshot":
        if record.get("format") != SNAPSHOT_FORMAT:
            raise InputError(f"not a corpus snapshot: format={record.get('format')!r}")
        articles = [
            Article(
                id=r["id"],
                outlet=r["outlet"],
                title=r["title"],
                paragraphs=tuple(r["paragraphs"]),
                published_at=r["published_at"],
                url=r["url"],
            )
            for r in record["articles"]
        ]
        snap = cls(articles, frozenset(record.get("guard", [])), record.get("outlets"))
        stored = record.get("fingerprint")
        if stored and stored != snap.fingerprint:
            raise InputError("snapshot fingerprint mismatch", code="corrupt-snapshot")
        return snap

    @classmethod
    def load(cls, path: str | Path) -> "CorpusSnapshot":
        return cls.from_record(json.loads(Path(path).read_text(encoding="utf-8")))


def _parse_timestamp(value: str) -> None:
    try:
        datetime.fromisoformat(value.replace("Z", "+00:00"))
    except (ValueError, AttributeError, TypeError):
        raise ValueError(f"bad timestamp: {value!r}")


def _validate_record(obj: dict) -> Article:
    if not isinstance(obj, dict):
        raise ValueError("record is not an object")
    for key in ("id", "outlet", "title", "paragraphs", "published_at", "url"):
        if key not in obj:
            raise ValueError(f"missing field: {key}")
    if not isinstance(obj["id"], str) or not obj["id"]:
        raise ValueError("id must be a non-empty string")
    paragraphs = obj["paragraphs"]
    if (
        not isinstance(paragraphs, list)
        or not paragraphs
        or not all(isinstance(p, str) for p in paragraphs)
    ):
        raise ValueError("paragraphs must be a non-empty list of strings")
    for key in ("outlet", "title", "url"):
        if not isinstance(obj[key], str):
            raise ValueError(f"{key} must be a string")
    _parse_timestamp(obj["published_at"])
    return Article(
        id=obj["id"],
        outlet=obj["outlet"],
        title=obj["title"],
        paragraphs=tuple(paragraphs),
        published_at=obj["published_at"],
        url=obj["url"],
    )


def _iter_lines(path: Path) -> Iterator[tuple[str, int, str]]:
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.strip():
                yield (path.name, lineno, line)


def ingest_records(
    records: Iterable[tuple[str, int, str]],
    outlets: Iterable[str],
    guard: frozenset[str] = DEFAULT_GUARD,
) -> IngestResult:
    """Validate raw line records into a snapshot.

    ``records`` yields (source, line number, raw line). Rejections are
    itemized and never cause other records to be dropped. Duplicate ids are
    resolved order-independently: the copy with the smallest canonical
    serialization wins, all others are rejected.
    """
    outlet_set = set(outlets)
    if not outlet_set:
        raise InputError("outlet configuration is empty")
    rejected: list[RecordError] = []
    candidates: dict[str, list[tuple[str, str, int, Article]]] = {}
    total = 0
    for source, lineno, raw in records:
        total += 1
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            rejected.append(RecordError(source, lineno, "malformed-record", f"bad JSON: {exc}"))
            continue
        try:
            article = _validate_record(obj)
        except ValueError as exc:
            rejected.append(RecordError(source, lineno, "malformed-record", str(exc)))
            continue
        if article.outlet not in outlet_set:
            rejected.append(
                RecordError(source, lineno, "unknown-outlet", f"outlet not configured: {article.outlet!r}")
            )
            continue
        canon = json.dumps(article.to_record(), sort_keys=True, ensure_ascii=False)
        candidates.setdefault(article.id, []).append((canon, source, lineno, article))

    accepted: list[Article] = []
    for art_id in sorted(candidates):
        group = sorted(candidates[art_id], key=lambda t: (t[0], t[1], t[2]))
        accepted.append(group[0][3])
        for canon, source, lineno, _ in group[1:]:
            rejected.append(
                RecordError(source, lineno, "duplicate-id", f"duplicate article id: {art_id!r}")
            )

    snapshot = CorpusSnapshot(accepted, guard, outlet_set)
    return IngestResult(
        snapshot=snapshot,
        rejected=tuple(rejected),
        accepted_count=len(accepted),
        input_count=total,
    )


def ingest(
    path: str | Path,
    outlets: Iterable[str],
    guard: frozenset[str] = DEFAULT_GUARD,
) -> IngestResult:
    """Ingest one ``.jsonl`` file, or every ``*.jsonl`` in a directory."""
    p = Path(path)
    if p.is_dir():
        files = sorted(p.glob("*.jsonl"))
    elif p.exists():
        files = [p]
    else:
        raise NotFoundError(f"corpus path does not exist: {p}")

    def all_lines() -> Iterator[tuple[str, int, str]]:
        for f in files:
            yield from _iter_lines(f)

    return ingest_records(all_lines(), outlets, guard)


def load_outlets(path: str | Path) -> list[str]:
    """Outlet config file: JSON array of outlet names."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise InputError("outlet config must be a JSON array of strings")
    return data


def load_guard(path: str | Path) -> frozenset[str]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise InputError("guard config must be a JSON array of strings")
    return frozenset(data)
