"""Command-line interface for the summarization pipeline."""

from __future__ import annotations

import sys

import click

from . import __version__, pipeline
from .errors import ReferatError


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(1)


def _input_options(func):
    decorators = [
        click.option(
            "--input",
            "-i",
            "inputs",
            multiple=True,
            required=True,
            type=click.Path(exists=True, dir_okay=False),
            help="Input document; repeat for multiple documents.",
        ),
        click.option(
            "--format",
            "fmt",
            type=click.Choice(["docjson", "txt"]),
            default="docjson",
            show_default=True,
            help="Input format: rich docjson blocks or plain text.",
        ),
        click.option(
            "--lang",
            type=click.Choice(["uk", "en"]),
            default="uk",
            show_default=True,
            help="Document language (no auto-detection).",
        ),
        click.option("--rules", type=click.Path(exists=True, dir_okay=False), help="Custom recognition rule table (JSON)."),
        click.option("--cues", type=click.Path(exists=True, dir_okay=False), help="Cue phrase list, one per line."),
        click.option("--stopwords", type=click.Path(exists=True, dir_okay=False), help="Stopword list, one per line."),
        click.option("--user-weights", type=click.Path(exists=True, dir_okay=False), help="JSON map of word to user weight in [0, 1]."),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Structure-aware extractive summarizer for Ukrainian and English texts.

    Recognizes title/authors/keywords/main/literature blocks, weighs each
    sentence by location, cue phrases, keyword coverage and title overlap,
    ranks with a redundancy-clipping greedy pass, and fuses near-duplicate
    sentences across documents.
    """


@main.command()
@_input_options
@click.option("--ratio", type=float, default=None, help="Summary size as a fraction of the sentences. [default: 0.2]")
@click.option("--max-sentences", type=int, default=None, help="Summary size as an absolute sentence count (instead of --ratio).")
@click.option("--clip-factor", type=float, default=2.0, show_default=True, help="Redundancy penalty strength k (>0).")
@click.option("--dup-threshold", type=float, default=0.8, show_default=True, help="Similarity at or above which a sentence is dropped.")
@click.option("--fuse-threshold", type=float, default=0.5, show_default=True, help="Similarity at or above which two sentences are fused.")
@click.option("--boost", is_flag=True, help="Add the mean user weight of matched words to sentence scores.")
@click.option("--keywords", "keyword_count", type=int, default=5, show_default=True, help="Derived keyword count when the author gave none.")
@click.option("--subjects", type=click.Path(exists=True, dir_okay=False), help="Subject-constant dictionary for relation extraction.")
@click.option("--out", type=click.Path(dir_okay=False), help="Summary output file (default: stdout).")
@click.option("--trace", type=click.Path(dir_okay=False), help="Scoring trace output file (JSON).")
@click.option("--relations", "relations_out", type=click.Path(dir_okay=False), help="Relation graph output file (JSON).")
def summarize(
    inputs, fmt, lang, rules, cues, stopwords, user_weights,
    ratio, max_sentences, clip_factor, dup_threshold, fuse_threshold,
    boost, keyword_count, subjects, out, trace, relations_out,
):
    """Summarize one or more documents into a single abstract."""
    config = pipeline.PipelineConfig(
        inputs=tuple(inputs),
        format=fmt,
        lang=lang,
        ratio=ratio,
        max_sentences=max_sentences,
        clip_factor=clip_factor,
        dup_threshold=dup_threshold,
        fuse_threshold=fuse_threshold,
        boost=boost,
        keyword_count=keyword_count,
        cues_path=cues,
        user_weights_path=user_weights,
        subjects_path=subjects,
        stopwords_path=stopwords,
        rules_path=rules,
        out_path=out,
        trace_path=trace,
        relations_path=relations_out,
    )
    try:
        result = pipeline.run(config)
    except ReferatError as exc:
        _fail(exc)
    if not out:
        click.echo(result.abstract, nl=False)


@main.command()
@_input_options
@click.option("--boost", is_flag=True, help="Add the mean user weight of matched words to sentence scores.")
@click.option("--keywords", "keyword_count", type=int, default=5, show_default=True, help="Derived keyword count when the author gave none.")
@click.option("--trace", type=click.Path(dir_okay=False), help="Trace output file (default: stdout).")
def analyze(inputs, fmt, lang, rules, cues, stopwords, user_weights, boost, keyword_count, trace):
    """Weigh and rank sentences, emit the scoring trace only."""
    import json

    config = pipeline.PipelineConfig(
        inputs=tuple(inputs),
        format=fmt,
        lang=lang,
        boost=boost,
        keyword_count=keyword_count,
        cues_path=cues,
        user_weights_path=user_weights,
        stopwords_path=stopwords,
        rules_path=rules,
        trace_path=trace,
    )
    try:
        result = pipeline.analyze(config)
    except ReferatError as exc:
        _fail(exc)
    if not trace:
        click.echo(json.dumps(result.trace_dict(), ensure_ascii=False, indent=2))


@main.command()
@_input_options
@click.option("--subjects", type=click.Path(exists=True, dir_okay=False), required=True, help="Subject-constant dictionary, one per line.")
@click.option("--out", type=click.Path(dir_okay=False), help="Relation graph output file (default: stdout).")
def relations(inputs, fmt, lang, rules, cues, stopwords, user_weights, subjects, out):
    """Extract subject-constant relation links from the documents."""
    config = pipeline.PipelineConfig(
        inputs=tuple(inputs),
        format=fmt,
        lang=lang,
        subjects_path=subjects,
        stopwords_path=stopwords,
        rules_path=rules,
        relations_path=out,
        ratio=1.0,
    )
    try:
        result = pipeline.run(config)
    except ReferatError as exc:
        _fail(exc)
    if not out and result.relations is not None:
        click.echo(result.relations.to_json())


@main.command()
@click.argument("what", type=click.Choice(["rules", "cues", "stopwords"]))
@click.option("--lang", type=click.Choice(["uk", "en"]), default="uk", show_default=True, help="Language for the stopword list.")
def dump(what, lang):
    """Print an embedded default (rule table, cue list, stopwords)."""
    try:
        click.echo(pipeline.dump_defaults(what, lang), nl=False)
    except ReferatError as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
