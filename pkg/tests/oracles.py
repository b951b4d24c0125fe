"""Independent brute-force oracles.

Everything here recomputes expected values from raw records with nested
loops and its own logic, never by calling the code under test.
"""

from __future__ import annotations


def sentence_count(paragraph: str, guard: frozenset[str]) -> int:
    """Word-level recount of the documented segmentation rule.

    A boundary sits after any non-final whitespace-delimited word that ends
    with ! or ?, or with a period when the word is not a guarded
    abbreviation (a terminal followed by whitespace is always word-final).
    """
    words = paragraph.split()
    if not words:
        return 0
    boundaries = 0
    for w in words[:-1]:
        if w.endswith(("!", "?")) or (w.endswith(".") and w not in guard):
            boundaries += 1
    return boundaries + 1


def doc_label(pos: int, neg: int, neu: int) -> str:
    """Max rule with neutral > negative > positive tie priority."""
    best = max(pos, neg, neu)
    for label, value in (("neutral", neu), ("negative", neg), ("positive", pos)):
        if value == best:
            return label
    raise AssertionError("unreachable")


def classify(score_pos: float, score_neg: float, sx: float, sy: float) -> str:
    if score_pos >= sx:
        return "mixed" if score_neg >= sy else "positive"
    return "negative" if score_neg >= sy else "neutral"


def minmax(counts: dict[str, tuple[int, int]]) -> dict[str, tuple[float, float]]:
    ps = [p for p, _ in counts.values()]
    ns = [n for _, n in counts.values()]
    out = {}
    for key, (p, n) in counts.items():
        sp = 0.0 if max(ps) == min(ps) else (p - min(ps)) / (max(ps) - min(ps))
        sn = 0.0 if max(ns) == min(ns) else (n - min(ns)) / (max(ns) - min(ns))
        out[key] = (sp, sn)
    return out


def _article_entity_labels(annotations: list[dict]) -> dict[str, dict[str, str]]:
    """article id -> entity -> document label, straight from raw records."""
    tally: dict[str, dict[str, list[int]]] = {}
    for rec in annotations:
        per_article = tally.setdefault(rec["article_id"], {})
        row = per_article.setdefault(rec["entity_id"], [0, 0, 0])
        idx = {"positive": 0, "negative": 1, "neutral": 2}[rec["sentiment"]]
        row[idx] += 1
    return {
        art: {ent: doc_label(row[0], row[1], row[2]) for ent, row in per.items()}
        for art, per in tally.items()
    }


def topic_counts(
    articles: list[dict], annotations: list[dict], outlet: str | None = None
) -> dict[str, tuple[int, int, int]]:
    """entity -> (pos, neg, neu) article counts."""
    labels = _article_entity_labels(annotations)
    acc: dict[str, list[int]] = {}
    for art in articles:
        if outlet is not None and art["outlet"] != outlet:
            continue
        for entity, label in labels.get(art["id"], {}).items():
            row = acc.setdefault(entity, [0, 0, 0])
            row[{"positive": 0, "negative": 1, "neutral": 2}[label]] += 1
    return {e: (r[0], r[1], r[2]) for e, r in acc.items()}


def cooccurrence(
    articles: list[dict], annotations: list[dict], outlet: str | None = None
) -> dict[tuple[str, str], int]:
    mentioned: dict[str, set[str]] = {}
    for rec in annotations:
        mentioned.setdefault(rec["article_id"], set()).add(rec["entity_id"])
    table: dict[tuple[str, str], int] = {}
    for art in articles:
        if outlet is not None and art["outlet"] != outlet:
            continue
        entities = sorted(mentioned.get(art["id"], set()))
        for i in range(len(entities)):
            for j in range(i + 1, len(entities)):
                key = (entities[i], entities[j])
                table[key] = table.get(key, 0) + 1
    return table


def article_groups(
    articles: list[dict],
    annotations: list[dict],
    topic: str,
    co_topic: str | None = None,
    outlet: str | None = None,
) -> dict[str, set[str]]:
    """Membership (article id sets) per polarity group toward ``topic``."""
    labels = _article_entity_labels(annotations)
    groups: dict[str, set[str]] = {"positive": set(), "negative": set(), "neutral": set()}
    for art in articles:
        if outlet is not None and art["outlet"] != outlet:
            continue
        per = labels.get(art["id"], {})
        if topic not in per:
            continue
        if co_topic is not None and co_topic not in per:
            continue
        groups[per[topic]].add(art["id"])
    return groups


def hive_assignments(
    articles: list[dict],
    annotations: list[dict],
    center: str,
    outlet: str,
    candidates: list[str],
    sx: float,
    sy: float,
) -> dict[str, str]:
    """Recompute data-hive candidate categories from raw records."""
    labels = _article_entity_labels(annotations)
    per_candidate: dict[str, list[int]] = {c: [0, 0] for c in candidates}
    for art in articles:
        if art["outlet"] != outlet:
            continue
        per = labels.get(art["id"], {})
        if center not in per:
            continue
        for cand in candidates:
            if cand in per:
                if per[cand] == "positive":
                    per_candidate[cand][0] += 1
                elif per[cand] == "negative":
                    per_candidate[cand][1] += 1
    scores = minmax({c: (v[0], v[1]) for c, v in per_candidate.items()})
    return {c: classify(scores[c][0], scores[c][1], sx, sy) for c in candidates}
