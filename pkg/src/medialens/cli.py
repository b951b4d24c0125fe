"""Operator command line: ingest, annotate, aggregate, hive, serve, gen-fixture."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import aggregate as agg
from . import fixtures
from .annotate import (
    AnnotatedCorpus,
    Gazetteer,
    Lexicon,
    annotate_corpus,
    import_annotations,
    read_annotation_lines,
)
from .aggregate import SegmentationPoint
from .corpus import DEFAULT_GUARD, CorpusSnapshot, ingest as ingest_corpus, load_guard, load_outlets
from .errors import EngineError
from .hive import data_hive, export_hive


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _parse_seg(value: str) -> SegmentationPoint:
    try:
        sx, sy = (float(part) for part in value.split(","))
        return SegmentationPoint(sx, sy)
    except (ValueError, EngineError):
        _fail(f"bad segmentation point {value!r}; expected e.g. 0.5,0.5")


@click.group()
def main():
    """Media-coverage analytics engine."""


@main.command()
@click.option("--corpus", "corpus_path", required=True, type=click.Path(exists=True))
@click.option("--outlets", "outlets_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--guard", "guard_path", type=click.Path(exists=True), default=None)
def ingest(corpus_path, outlets_path, out_path, guard_path):
    """Validate raw article records into a corpus snapshot."""
    outlets = load_outlets(outlets_path)
    guard = load_guard(guard_path) if guard_path else DEFAULT_GUARD
    try:
        result = ingest_corpus(corpus_path, outlets, guard)
    except EngineError as exc:
        _fail(exc.message)
    for err in result.rejected:
        click.echo(f"rejected {err.source}:{err.line} [{err.code}] {err.message}", err=True)
    result.snapshot.save(out_path)
    click.echo(
        f"ingested {result.accepted_count}/{result.input_count} records "
        f"({len(result.rejected)} rejected); fingerprint {result.snapshot.fingerprint[:12]}"
    )


@main.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(exists=True))
@click.option("--gazetteer", "gazetteer_path", type=click.Path(exists=True), default=None)
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True), default=None)
@click.option("--import", "import_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_path", required=True, type=click.Path())
def annotate(snapshot_path, gazetteer_path, lexicon_path, import_path, out_path):
    """Attach entity mentions and target sentiment to a snapshot."""
    snapshot = CorpusSnapshot.load(snapshot_path)
    if import_path:
        result = import_annotations(read_annotation_lines(import_path), snapshot)
        for err in result.rejected:
            click.echo(f"rejected {err.source}:{err.line} [{err.code}] {err.message}", err=True)
        ann = result.corpus
        click.echo(f"imported {result.accepted_count}/{result.input_count} annotation records")
    elif gazetteer_path and lexicon_path:
        ann = annotate_corpus(
            snapshot, Gazetteer.from_file(gazetteer_path), Lexicon.from_file(lexicon_path)
        )
        click.echo(f"annotated {len(ann.mentions)} mentions over {len(snapshot)} articles")
    else:
        _fail("provide either --gazetteer and --lexicon, or --import")
    ann.save(out_path)


@main.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(exists=True))
@click.option("--outlet", default=None)
@click.option("--out", "out_dir", required=True, type=click.Path())
def aggregate(snapshot_path, outlet, out_dir):
    """Export per-topic stats and co-occurrence tables."""
    ann = AnnotatedCorpus.load(snapshot_path)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stats = agg.build_topic_stats(ann, outlet)
    table = agg.cooccurrence_counts(ann, outlet)
    suffix = f".{outlet.replace(' ', '_')}" if outlet else ""
    agg.export_topic_stats(stats, out / f"topics{suffix}.jsonl")
    agg.export_cooccurrence(table, out / f"cooccurrence{suffix}.jsonl", outlet)
    click.echo(f"wrote {len(stats)} topics and {len(table)} pairs to {out}")


@main.command("hive")
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(exists=True))
@click.option("--center", required=True)
@click.option("--outlet", required=True)
@click.option("--seg", "seg_value", default="0.5,0.5", show_default=True)
@click.option("--k", default=20, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def hive_cmd(snapshot_path, center, outlet, seg_value, k, out_path):
    """Export the data-generated hive for a center topic and outlet."""
    ann = AnnotatedCorpus.load(snapshot_path)
    seg = _parse_seg(seg_value)
    try:
        spec = data_hive(ann, center, outlet, seg, k)
    except EngineError as exc:
        _fail(exc.message)
    export_hive(spec, out_path)
    click.echo(f"wrote hive for {center!r} under {outlet!r} with {len(spec.candidates)} candidates")


@main.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path(exists=True))
@click.option("--port", default=8765, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--sessions", "sessions_dir", type=click.Path(), default=None)
def serve(snapshot_path, port, host, config_path, sessions_dir):
    """Serve the engine over HTTP."""
    import uvicorn

    from .service import create_app, load_engine

    config = json.loads(Path(config_path).read_text(encoding="utf-8")) if config_path else {}
    engine = load_engine(
        snapshot_path,
        sessions_dir or config.get("sessions_dir"),
        bucket_count=config.get("bucket_count", 6),
    )
    app = create_app(engine)
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command("gen-fixture")
@click.option("--spec", "spec_value", default="scenario", show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def gen_fixture(spec_value, out_dir):
    """Generate a synthetic corpus plus annotator configs."""
    try:
        spec = fixtures.load_fixture_spec(spec_value)
        result = fixtures.generate_fixture(spec, out_dir)
    except EngineError as exc:
        _fail(exc.message)
    click.echo(f"generated {result['articles']} articles in {result['out']}")


if __name__ == "__main__":
    main()
