"""End-to-end pipeline: decode, recognize, weigh, rank, consolidate, emit.

Documents are analyzed one after another in input order; selected sentences
flow into the consolidated repository which drops or fuses near-duplicates
across documents.  Identical inputs and configuration always produce
byte-identical outputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from . import docmodel, fusion, lexicons, recognizer, selector, store, weighting
from .errors import ConfigError, ReferatError
from .weighting import CueLexicon

DEFAULT_RATIO = 0.2
DEFAULT_KEYWORD_COUNT = 5


@dataclass
class PipelineConfig:
    inputs: tuple[str, ...]
    format: str = "docjson"
    lang: str = "uk"
    ratio: float | None = None
    max_sentences: int | None = None
    clip_factor: float = selector.DEFAULT_CLIP
    dup_threshold: float = fusion.DEFAULT_DUP_THRESHOLD
    fuse_threshold: float = fusion.DEFAULT_FUSE_THRESHOLD
    boost: bool = False
    keyword_count: int = DEFAULT_KEYWORD_COUNT
    cues_path: str | None = None
    user_weights_path: str | None = None
    subjects_path: str | None = None
    stopwords_path: str | None = None
    rules_path: str | None = None
    out_path: str | None = None
    trace_path: str | None = None
    relations_path: str | None = None

    def validate(self) -> None:
        if not self.inputs:
            raise ConfigError("at least one --input is required")
        if self.format not in ("docjson", "txt"):
            raise ConfigError(f"--format must be docjson or txt, got {self.format!r}")
        if self.lang not in docmodel.LANGS:
            raise ConfigError(f"--lang must be one of {docmodel.LANGS}, got {self.lang!r}")
        if self.ratio is not None and self.max_sentences is not None:
            raise ConfigError("--ratio and --max-sentences are mutually exclusive")
        if self.ratio is not None and not 0.0 < self.ratio <= 1.0:
            raise ConfigError(f"--ratio must lie in (0, 1], got {self.ratio}")
        if self.max_sentences is not None and self.max_sentences < 1:
            raise ConfigError(f"--max-sentences must be >= 1, got {self.max_sentences}")
        if self.clip_factor <= 0:
            raise ConfigError(f"--clip-factor must be > 0, got {self.clip_factor}")
        if not 0.0 < self.dup_threshold <= 1.0:
            raise ConfigError(f"--dup-threshold must lie in (0, 1], got {self.dup_threshold}")
        if not 0.0 <= self.fuse_threshold < self.dup_threshold:
            raise ConfigError(
                f"--fuse-threshold must lie in [0, --dup-threshold), got {self.fuse_threshold}"
            )
        if self.keyword_count < 1:
            raise ConfigError(f"--keywords must be >= 1, got {self.keyword_count}")


@dataclass
class RankingRow:
    sentence_id: int
    breakdown: weighting.WeightBreakdown
    q: float
    p: float
    rank: int
    selected: bool


@dataclass
class DocumentTrace:
    doc_id: int
    input: str
    title: str
    analysis: store.DocumentAnalysis
    ranking: list[RankingRow]


@dataclass
class SummarySentence:
    doc_id: int
    sentence_id: int
    text: str
    fused: bool = False
    sources: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class SummaryOutput:
    lines: list[SummarySentence]
    documents: list[DocumentTrace]
    relations: fusion.RelationGraph | None = None

    @property
    def abstract(self) -> str:
        return "".join(line.text + "\n" for line in self.lines)

    def trace_dict(self) -> dict:
        docs = []
        for trace in self.documents:
            entry = {
                "doc_id": trace.doc_id,
                "input": trace.input,
                "title": trace.title,
            }
            entry.update(store.analysis_to_dict(trace.analysis))
            entry["ranking"] = [
                {
                    "SentenceID": row.sentence_id,
                    "location": row.breakdown.location,
                    "cuephrase": row.breakdown.cuephrase,
                    "statterm": row.breakdown.statterm,
                    "addterm": row.breakdown.addterm,
                    "total": row.breakdown.total,
                    "q": row.q,
                    "p": row.p,
                    "rank": row.rank,
                    "selected": row.selected,
                }
                for row in trace.ranking
            ]
            docs.append(entry)
        return {
            "documents": docs,
            "summary": [
                {
                    "doc_id": line.doc_id,
                    "SentenceID": line.sentence_id,
                    "text": line.text,
                    "fused": line.fused,
                    "sources": [list(ref) for ref in line.sources],
                }
                for line in self.lines
            ],
        }


class StageError(ReferatError):
    """Wraps a module error with the failing input and pipeline stage."""

    def __init__(self, stage: str, source: str, cause: Exception):
        super().__init__(f"{stage} failed for {source}: {cause}")
        self.stage = stage
        self.source = source
        self.cause = cause


def _stage(stage: str, source: str, func, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    except StageError:
        raise
    except ReferatError as exc:
        raise StageError(stage, source, exc) from exc


def _load_aux(config: PipelineConfig):
    cues = (
        CueLexicon.from_file(config.cues_path) if config.cues_path else CueLexicon.default()
    )
    table = (
        recognizer.RuleTable.from_file(config.rules_path)
        if config.rules_path
        else recognizer.default_rule_table()
    )
    if config.stopwords_path:
        stopwords = frozenset(lexicons.load_wordlist(config.stopwords_path))
    else:
        stopwords = lexicons.stopwords_for(config.lang)
    user_weights = (
        weighting.load_user_weights(config.user_weights_path)
        if config.user_weights_path
        else {}
    )
    subjects = (
        lexicons.load_wordlist(config.subjects_path) if config.subjects_path else None
    )
    return cues, table, stopwords, user_weights, subjects


def _analyze_document(
    doc_id: int,
    path: str,
    config: PipelineConfig,
    cues: CueLexicon,
    table: recognizer.RuleTable,
    stopwords: frozenset[str],
    user_weights: dict[str, float],
):
    """Decode through ranking for a single input file."""
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise StageError("decode", path, ReferatError(str(exc))) from exc
    if config.format == "docjson":
        raw = _stage("decode", path, docmodel.parse_docjson, data)
        if raw.lang != config.lang:
            raise StageError(
                "decode", path, ReferatError(f"document lang {raw.lang!r} does not match --lang")
            )
    else:
        raw = _stage("decode", path, docmodel.parse_plaintext, data, config.lang)
    document = _stage("recognize", path, recognizer.recognize, raw, table)
    records = _stage(
        "keywords",
        path,
        weighting.derive_keywords,
        document,
        config.keyword_count,
        stopwords,
        user_weights,
    )
    ctx = weighting.WeightContext.for_document(document, records, cues)
    candidates = []
    breakdowns = {}
    for sentence in document.sentences():
        breakdown = _stage("weigh", path, weighting.weigh, sentence, ctx)
        breakdowns[sentence.id] = breakdown
        q = breakdown.total
        if config.boost:
            q = weighting.boosted_total(breakdown, sentence, records)
        candidates.append(selector.Candidate.build(doc_id, sentence, q, stopwords))
    ranked = _stage("rank", path, selector.rank, candidates, config.clip_factor)
    ratio = config.ratio if (config.ratio is not None or config.max_sentences is not None) else DEFAULT_RATIO
    selected = _stage(
        "rank", path, selector.select_summary, ranked, ratio, config.max_sentences
    )
    selected_ids = {id(cand) for cand in selected}
    ranking = [
        RankingRow(
            sentence_id=cand.sentence.id,
            breakdown=breakdowns[cand.sentence.id],
            q=cand.q,
            p=cand.p,
            rank=pos,
            selected=id(cand) in selected_ids,
        )
        for pos, cand in enumerate(ranked)
    ]
    analysis = store.build_analysis(document, records)
    trace = DocumentTrace(
        doc_id=doc_id, input=str(path), title=document.title, analysis=analysis, ranking=ranking
    )
    return document, trace, selected


def run(config: PipelineConfig) -> SummaryOutput:
    """Run the full pipeline and write any configured output files."""
    config.validate()
    cues, table, stopwords, user_weights, subjects = _load_aux(config)
    repo = fusion.ConsolidatedRepository(
        config.dup_threshold, config.fuse_threshold, config.lang, stopwords
    )
    traces: list[DocumentTrace] = []
    relation_edges: list[fusion.RelationEdge] = []

    for doc_id, path in enumerate(config.inputs):
        document, trace, selected = _analyze_document(
            doc_id, path, config, cues, table, stopwords, user_weights
        )
        traces.append(trace)
        for cand in selector.order_output(selected):
            _stage("consolidate", path, repo.consolidate, cand.sentence, cand.doc_id)
        if subjects:
            graph = _stage("relations", path, fusion.extract_relations, document, subjects, stopwords)
            relation_edges.extend(
                fusion.RelationEdge(e.subject, e.object, f"{doc_id}:{e.sentence}")
                for e in graph.edges
            )

    entries = sorted(repo.entries, key=lambda e: e.anchor)
    lines = [
        SummarySentence(
            doc_id=entry.doc_id,
            sentence_id=entry.sentence.id,
            text=entry.sentence.text,
            fused=entry.fused,
            sources=list(entry.sources),
        )
        for entry in entries
    ]
    relations = fusion.RelationGraph(edges=tuple(relation_edges)) if subjects else None
    output = SummaryOutput(lines=lines, documents=traces, relations=relations)
    _emit(config, output)
    return output


def analyze(config: PipelineConfig) -> SummaryOutput:
    """Stop after weighting/ranking: per-document trace, no consolidation."""
    config.validate()
    cues, table, stopwords, user_weights, _ = _load_aux(config)
    traces = []
    for doc_id, path in enumerate(config.inputs):
        _, trace, _ = _analyze_document(
            doc_id, path, config, cues, table, stopwords, user_weights
        )
        traces.append(trace)
    output = SummaryOutput(lines=[], documents=traces)
    if config.trace_path:
        _write_text(
            config.trace_path,
            json.dumps(output.trace_dict(), ensure_ascii=False, indent=2) + "\n",
        )
    return output


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise StageError("emit", str(path), ReferatError(str(exc))) from exc


def _emit(config: PipelineConfig, output: SummaryOutput) -> None:
    if config.out_path:
        _write_text(config.out_path, output.abstract)
    if config.trace_path:
        _write_text(
            config.trace_path,
            json.dumps(output.trace_dict(), ensure_ascii=False, indent=2) + "\n",
        )
    if config.relations_path and output.relations is not None:
        _write_text(config.relations_path, output.relations.to_json() + "\n")


def dump_defaults(what: str, lang: str = "uk") -> str:
    """Embedded defaults in their on-disk file formats."""
    if what == "rules":
        return recognizer.default_rule_table().to_json() + "\n"
    if what == "cues":
        return "".join(phrase + "\n" for phrase in lexicons.DEFAULT_CUE_PHRASES)
    if what == "stopwords":
        return "".join(word + "\n" for word in sorted(lexicons.stopwords_for(lang)))
    raise ConfigError(f"nothing to dump for {what!r}; pick rules, cues or stopwords")
