"""Persisted analysis trace: sentence rows, keyword rows, word-sentence links.

The trace is a single JSON file with three arrays whose field names match
the persisted entity schema exactly.  Sum fields are validated on save and
re-verified on load, so a stale or corrupted sum never round-trips.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .docmodel import Document
from .errors import InvariantViolation, IoFailure, SchemaMismatch
from .weighting import KeywordRecord, location


@dataclass
class SentenceRecord:
    SentenceID: int
    WordsWeight: float
    Format: float
    Place: float
    Sum: float


@dataclass
class KeywordRow:
    WordID: int
    Word: str
    Frequency: float
    Place: float
    Format: float
    UserWeight: float
    Sum: float
    SentenceID: int | None


@dataclass
class WordSentenceLink:
    ID: int
    WordID: int
    SentenceID: int


@dataclass
class DocumentAnalysis:
    sentences: list[SentenceRecord] = field(default_factory=list)
    keywords: list[KeywordRow] = field(default_factory=list)
    links: list[WordSentenceLink] = field(default_factory=list)


def build_analysis(doc: Document, records: list[KeywordRecord]) -> DocumentAnalysis:
    """Assemble trace rows for one document from its keyword records."""
    analysis = DocumentAnalysis()
    record_sums = [rec.sum for rec in records]
    first_occurrence: dict[int, int] = {}
    pairs: set[tuple[int, int]] = set()

    for para in doc.paragraphs:
        for sentence in para.sentences:
            norms = sentence.norm_set()
            occurrences = Counter(t.norm for t in sentence.tokens)
            words_weight = 0.0
            for i, rec in enumerate(records):
                parts = rec.word.split()
                if len(parts) == 1:
                    hits = occurrences.get(parts[0], 0)
                else:
                    hits = 1 if all(p in norms for p in parts) else 0
                if hits:
                    words_weight += hits * record_sums[i]
                    pairs.add((i, sentence.id))
                    first_occurrence.setdefault(i, sentence.id)
            fmt = 1.0 if para.styled else 0.0
            place = location(sentence.text_pos, sentence.para_pos)
            analysis.sentences.append(
                SentenceRecord(
                    SentenceID=sentence.id,
                    WordsWeight=words_weight,
                    Format=fmt,
                    Place=place,
                    Sum=words_weight + fmt + place,
                )
            )

    for i, rec in enumerate(records):
        analysis.keywords.append(
            KeywordRow(
                WordID=rec.word_id,
                Word=rec.word,
                Frequency=rec.frequency,
                Place=rec.place,
                Format=rec.format,
                UserWeight=rec.user_weight,
                Sum=rec.sum,
                SentenceID=first_occurrence.get(i),
            )
        )

    for link_id, (word_idx, sentence_id) in enumerate(sorted(pairs)):
        analysis.links.append(
            WordSentenceLink(
                ID=link_id,
                WordID=records[word_idx].word_id,
                SentenceID=sentence_id,
            )
        )
    return analysis


def _validate(analysis: DocumentAnalysis) -> None:
    sentence_ids = set()
    for row in analysis.sentences:
        if row.Sum != row.WordsWeight + row.Format + row.Place:
            raise InvariantViolation(
                f"sentence {row.SentenceID}: Sum does not match its components"
            )
        sentence_ids.add(row.SentenceID)
    word_ids = set()
    for row in analysis.keywords:
        if row.Sum != row.Frequency + row.Place + row.Format + row.UserWeight:
            raise InvariantViolation(f"keyword {row.WordID}: Sum does not match its components")
        if row.SentenceID is not None and row.SentenceID not in sentence_ids:
            raise InvariantViolation(
                f"keyword {row.WordID}: first-occurrence sentence {row.SentenceID} not found"
            )
        word_ids.add(row.WordID)
    seen_pairs = set()
    for link in analysis.links:
        if link.WordID not in word_ids or link.SentenceID not in sentence_ids:
            raise InvariantViolation(f"link {link.ID}: dangling WordID or SentenceID")
        pair = (link.WordID, link.SentenceID)
        if pair in seen_pairs:
            raise InvariantViolation(f"link {link.ID}: duplicate pair {pair}")
        seen_pairs.add(pair)


def analysis_to_dict(analysis: DocumentAnalysis) -> dict:
    return {
        "sentences": [asdict(row) for row in analysis.sentences],
        "keywords": [asdict(row) for row in analysis.keywords],
        "links": [asdict(row) for row in analysis.links],
    }


def save_analysis(analysis: DocumentAnalysis, path: str | Path) -> None:
    _validate(analysis)
    payload = json.dumps(analysis_to_dict(analysis), ensure_ascii=False, indent=2)
    try:
        Path(path).write_text(payload, encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot write analysis {path}: {exc}") from exc


_SENTENCE_FIELDS = {"SentenceID": int, "WordsWeight": float, "Format": float, "Place": float, "Sum": float}
_KEYWORD_FIELDS = {
    "WordID": int,
    "Word": str,
    "Frequency": float,
    "Place": float,
    "Format": float,
    "UserWeight": float,
    "Sum": float,
    "SentenceID": (int, type(None)),
}
_LINK_FIELDS = {"ID": int, "WordID": int, "SentenceID": int}


def _coerce_row(row: dict, fields: dict, kind: str, index: int) -> dict:
    if not isinstance(row, dict):
        raise SchemaMismatch(f"{kind} {index} must be an object")
    unknown = set(row) - set(fields)
    if unknown:
        raise SchemaMismatch(f"{kind} {index} has unknown fields: {sorted(unknown)}")
    values = {}
    for name, expected in fields.items():
        if name not in row:
            raise SchemaMismatch(f"{kind} {index} is missing field '{name}'")
        value = row[name]
        if expected is float:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SchemaMismatch(f"{kind} {index} field '{name}' must be a number")
            value = float(value)
        elif expected is int:
            if isinstance(value, bool) or not isinstance(value, int):
                raise SchemaMismatch(f"{kind} {index} field '{name}' must be an integer")
        elif expected is str:
            if not isinstance(value, str):
                raise SchemaMismatch(f"{kind} {index} field '{name}' must be a string")
        else:  # (int, None) optional reference
            if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
                raise SchemaMismatch(f"{kind} {index} field '{name}' must be an integer or null")
        values[name] = value
    return values


def analysis_from_dict(payload: dict) -> DocumentAnalysis:
    """Parse and fully validate a trace object (extra top-level keys are
    tolerated so richer pipeline traces stay loadable)."""
    if not isinstance(payload, dict):
        raise SchemaMismatch("analysis top level must be an object")
    for key in ("sentences", "keywords", "links"):
        if not isinstance(payload.get(key), list):
            raise SchemaMismatch(f"analysis must contain a '{key}' array")
    analysis = DocumentAnalysis(
        sentences=[
            SentenceRecord(**_coerce_row(row, _SENTENCE_FIELDS, "sentence", i))
            for i, row in enumerate(payload["sentences"])
        ],
        keywords=[
            KeywordRow(**_coerce_row(row, _KEYWORD_FIELDS, "keyword", i))
            for i, row in enumerate(payload["keywords"])
        ],
        links=[
            WordSentenceLink(**_coerce_row(row, _LINK_FIELDS, "link", i))
            for i, row in enumerate(payload["links"])
        ],
    )
    _validate(analysis)
    return analysis


def load_analysis(path: str | Path) -> DocumentAnalysis:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read analysis {path}: {exc}") from exc
    try:
        payload = json.loads(text)
    except ValueError as exc:
        raise SchemaMismatch(f"analysis file is not valid JSON: {exc}") from exc
    return analysis_from_dict(payload)
