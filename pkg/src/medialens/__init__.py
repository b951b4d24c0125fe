"""Media-coverage analytics engine with a belief self-assessment workflow."""

__version__ = "0.1.0"

from .aggregate import (  # noqa: F401
    SegmentationPoint,
    SentimentCategory,
    classify,
    document_sentiment,
    minmax_scores,
)
from .annotate import AnnotatedCorpus, Gazetteer, Lexicon, SentimentLabel  # noqa: F401
from .corpus import Article, CorpusSnapshot, Sentence, ingest  # noqa: F401
