from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import corpusgen
import oracles
from medialens.aggregate import (
    SegmentationPoint,
    SentenceSentimentCounts,
    SentimentCategory,
    TopicStats,
    build_topic_stats,
    classify,
    color_bucket,
    cooccurrence_counts,
    document_sentiment,
    export_cooccurrence,
    export_topic_stats,
    minmax_scores,
    scatter_data,
    topic_counts,
)
from medialens.annotate import SentimentLabel
from medialens.errors import InputError


def counts(pos, neg, neu, article_id="a1", entity="E1"):
    return SentenceSentimentCounts(article_id, entity, pos, neg, neu)


class TestDocumentSentiment:
    def test_clear_majority(self):
        assert document_sentiment(counts(3, 1, 0)) is SentimentLabel.POSITIVE

    def test_tie_prefers_negative_over_positive(self):
        assert document_sentiment(counts(2, 2, 0)) is SentimentLabel.NEGATIVE

    def test_tie_prefers_neutral(self):
        assert document_sentiment(counts(2, 2, 2)) is SentimentLabel.NEUTRAL

    def test_all_zero_is_error(self):
        with pytest.raises(InputError):
            document_sentiment(counts(0, 0, 0))

    def test_exhaustive_against_oracle(self):
        for pos, neg, neu in itertools.product(range(6), repeat=3):
            if (pos, neg, neu) == (0, 0, 0):
                continue
            label = document_sentiment(counts(pos, neg, neu))
            assert label.value == oracles.doc_label(pos, neg, neu)
            chosen = {"positive": pos, "negative": neg, "neutral": neu}[label.value]
            assert chosen == max(pos, neg, neu)


class TestMinmax:
    def test_endpoints(self):
        scores = minmax_scores({"a": (0, 0), "b": (10, 5)})
        assert scores["a"] == (0.0, 0.0)
        assert scores["b"] == (1.0, 1.0)

    def test_degenerate_population_all_zero(self):
        scores = minmax_scores({"a": (7, 1), "b": (7, 9)})
        assert scores["a"][0] == 0.0 and scores["b"][0] == 0.0
        assert scores["a"][1] == 0.0 and scores["b"][1] == 1.0

    def test_empty_population_errors(self):
        with pytest.raises(InputError):
            minmax_scores({})

    def test_thirty_topics_match_oracle(self):
        rng = random.Random(5)
        pop = {f"t{i}": (rng.randint(0, 400), rng.randint(0, 400)) for i in range(30)}
        got = minmax_scores(pop)
        want = oracles.minmax(pop)
        for key in pop:
            assert abs(got[key][0] - want[key][0]) < 1e-12
            assert abs(got[key][1] - want[key][1]) < 1e-12

    @given(
        st.dictionaries(
            st.text(min_size=1, max_size=4),
            st.tuples(st.integers(0, 10_000), st.integers(0, 10_000)),
            min_size=1,
            max_size=40,
        )
    )
    def test_bounded_and_monotone(self, pop):
        scores = minmax_scores(pop)
        for sp, sn in scores.values():
            assert 0.0 <= sp <= 1.0 and 0.0 <= sn <= 1.0
        keys = list(pop)
        for k1 in keys:
            for k2 in keys:
                if pop[k1][0] <= pop[k2][0]:
                    assert scores[k1][0] <= scores[k2][0] + 1e-15
                if pop[k1][1] <= pop[k2][1]:
                    assert scores[k1][1] <= scores[k2][1] + 1e-15


class TestClassify:
    def test_positive_region(self):
        assert classify(0.7, 0.2, SegmentationPoint(0.5, 0.5)) is SentimentCategory.POSITIVE

    def test_origin_seg_is_all_mixed(self):
        rng = random.Random(1)
        seg = SegmentationPoint(0.0, 0.0)
        for _ in range(200):
            assert classify(rng.random(), rng.random(), seg) is SentimentCategory.MIXED

    def test_random_points_match_oracle(self):
        rng = random.Random(2)
        for _ in range(1000):
            sp, sn = rng.random(), rng.random()
            sx, sy = rng.random(), rng.random()
            got = classify(sp, sn, SegmentationPoint(sx, sy))
            assert got.value == oracles.classify(sp, sn, sx, sy)

    @given(
        st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1)
    )
    def test_total_partition(self, sp, sn, sx, sy):
        seg = SegmentationPoint(sx, sy)
        category = classify(sp, sn, seg)
        memberships = [
            sp >= sx and sn < sy,   # positive
            sp < sx and sn >= sy,   # negative
            sp >= sx and sn >= sy,  # mixed
            sp < sx and sn < sy,    # neutral
        ]
        assert memberships.count(True) == 1
        index = ["positive", "negative", "mixed", "neutral"][memberships.index(True)]
        assert category.value == index

    def test_seg_validation(self):
        with pytest.raises(InputError):
            SegmentationPoint(1.5, 0.0)


def make_stats(entity, total, pos=0, neg=0, sp=0.0, sn=0.0):
    return TopicStats(
        entity=entity,
        name=entity,
        outlet_filter=None,
        total_articles=total,
        pos_articles=pos,
        neg_articles=neg,
        neu_articles=total - pos - neg,
        score_pos=sp,
        score_neg=sn,
    )


class TestScatter:
    def test_threshold_zero_returns_all(self):
        stats = [make_stats(f"t{i}", i + 1) for i in range(5)]
        assert len(scatter_data(stats, 0, SegmentationPoint(0.5, 0.5))) == 5

    def test_antitone_in_threshold(self):
        rng = random.Random(9)
        stats = [make_stats(f"t{i}", rng.randint(1, 500)) for i in range(40)]
        seg = SegmentationPoint(0.5, 0.5)
        for _ in range(200):
            t1, t2 = sorted((rng.randint(0, 600), rng.randint(0, 600)))
            low = {p.stats.entity for p in scatter_data(stats, t1, seg)}
            high = {p.stats.entity for p in scatter_data(stats, t2, seg)}
            assert high <= low

    def test_color_buckets(self):
        assert color_bucket(1) == 1
        assert color_bucket(9) == 1
        assert color_bucket(10) == 2
        assert color_bucket(999) == 3
        assert color_bucket(1000) == 4
        assert color_bucket(10**9, bucket_count=6) == 6

    def test_negative_threshold_rejected(self):
        with pytest.raises(InputError):
            scatter_data([], -1, SegmentationPoint(0.5, 0.5))

    def test_scores_not_renormalized(self):
        stats = [make_stats("a", 10, sp=0.25, sn=0.5), make_stats("b", 500, sp=1.0, sn=0.0)]
        points = scatter_data(stats, 100, SegmentationPoint(0.5, 0.5))
        assert len(points) == 1
        assert points[0].stats.score_pos == 1.0  # untouched by the filter


class TestCorpusAggregates:
    def test_single_article_single_entity(self):
        articles, annotations = [
            {
                "id": "a1",
                "outlet": "CNN",
                "title": "t",
                "paragraphs": ["w w w"],
                "published_at": "2021-01-01T00:00:00Z",
                "url": "u",
            }
        ], [
            {
                "article_id": "a1",
                "sentence_index": 0,
                "entity_id": "E1",
                "display_name": "E1",
                "start": 0,
                "end": 1,
                "sentiment": "positive",
            }
        ]
        ann = corpusgen.build_annotated(articles, annotations)
        got = topic_counts(ann)
        assert got["E1"].pos_articles == 1
        assert got["E1"].neg_articles == 0
        assert got["E1"].neu_articles == 0

    def test_random_corpus_matches_oracles(self):
        rng = random.Random(42)
        articles, annotations = corpusgen.random_records(rng, max_articles=60)
        ann = corpusgen.build_annotated(articles, annotations)
        for outlet in (None, "CNN", "Breitbart"):
            got = {
                e: (c.pos_articles, c.neg_articles, c.neu_articles)
                for e, c in topic_counts(ann, outlet).items()
            }
            assert got == oracles.topic_counts(articles, annotations, outlet)
            assert cooccurrence_counts(ann, outlet) == oracles.cooccurrence(
                articles, annotations, outlet
            )

    def test_cooccurrence_triple(self):
        articles = [
            {
                "id": "a1",
                "outlet": "CNN",
                "title": "t",
                "paragraphs": ["aa bb cc"],
                "published_at": "2021-01-01T00:00:00Z",
                "url": "u",
            }
        ]
        annotations = [
            {
                "article_id": "a1",
                "sentence_index": 0,
                "entity_id": e,
                "display_name": e,
                "start": s,
                "end": s + 2,
                "sentiment": "neutral",
            }
            for e, s in (("A", 0), ("B", 3), ("C", 6))
        ]
        ann = corpusgen.build_annotated(articles, annotations)
        table = cooccurrence_counts(ann)
        assert table == {("A", "B"): 1, ("A", "C"): 1, ("B", "C"): 1}

    def test_lonely_entity_has_no_pairs(self):
        articles, annotations = corpusgen.random_records(random.Random(8), max_articles=30)
        # add an article that mentions only a fresh entity
        articles.append(
            {
                "id": "zz999",
                "outlet": "CNN",
                "title": "t",
                "paragraphs": ["xy"],
                "published_at": "2021-01-01T00:00:00Z",
                "url": "u",
            }
        )
        annotations.append(
            {
                "article_id": "zz999",
                "sentence_index": 0,
                "entity_id": "LONER",
                "display_name": "LONER",
                "start": 0,
                "end": 2,
                "sentiment": "neutral",
            }
        )
        ann = corpusgen.build_annotated(articles, annotations)
        table = cooccurrence_counts(ann)
        assert not any("LONER" in pair for pair in table)

    def test_cooccurrence_bounded_by_totals(self):
        rng = random.Random(13)
        articles, annotations = corpusgen.random_records(rng, max_articles=50)
        ann = corpusgen.build_annotated(articles, annotations)
        totals = {e: c.total_articles for e, c in topic_counts(ann).items()}
        for (a, b), n in cooccurrence_counts(ann).items():
            assert n <= min(totals[a], totals[b])

    def test_stats_population_is_full_snapshot(self):
        rng = random.Random(21)
        articles, annotations = corpusgen.random_records(rng, max_articles=40)
        ann = corpusgen.build_annotated(articles, annotations)
        stats = build_topic_stats(ann)
        pop = {
            t.entity: (t.pos_articles, t.neg_articles) for t in stats
        }
        want = oracles.minmax(pop)
        for t in stats:
            assert abs(t.score_pos - want[t.entity][0]) < 1e-12
            assert abs(t.score_neg - want[t.entity][1]) < 1e-12


class TestExports:
    def test_byte_reproducible(self, tmp_path):
        rng = random.Random(77)
        articles, annotations = corpusgen.random_records(rng, max_articles=40)
        ann = corpusgen.build_annotated(articles, annotations)
        paths = []
        for run in range(2):
            out = tmp_path / f"run{run}"
            out.mkdir()
            export_topic_stats(build_topic_stats(ann), out / "topics.jsonl")
            export_cooccurrence(cooccurrence_counts(ann), out / "cooc.jsonl")
            paths.append(out)
        assert (paths[0] / "topics.jsonl").read_bytes() == (paths[1] / "topics.jsonl").read_bytes()
        assert (paths[0] / "cooc.jsonl").read_bytes() == (paths[1] / "cooc.jsonl").read_bytes()

    def test_sorted_by_entity(self, tmp_path):
        import json

        stats = [make_stats("zz", 2), make_stats("aa", 3)]
        export_topic_stats(stats, tmp_path / "topics.jsonl")
        rows = [
            json.loads(line)
            for line in (tmp_path / "topics.jsonl").read_text().splitlines()
        ]
        assert [r["entity"] for r in rows] == ["aa", "zz"]
