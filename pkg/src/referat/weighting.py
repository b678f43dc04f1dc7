"""Sentence weighting: location, cue phrase, keyword coverage, title overlap.

The total sentence weight is the plain sum of the four components.  Word
records additionally carry a user-supplied weight; it feeds the persisted
trace and the optional boost mode, never the canonical sentence weight.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .docmodel import Document, SentenceUnit, tokenize
from .errors import ComponentOutOfRange, InvalidPosition, IoFailure, MalformedInput
from .lexicons import DEFAULT_CUE_PHRASES, load_wordlist, stopwords_for


@dataclass(frozen=True)
class CueLexicon:
    """Phrases whose presence marks a sentence as significant."""

    phrases: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_folded", tuple(p.casefold() for p in self.phrases))

    def matches(self, text: str) -> bool:
        folded = text.casefold()
        return any(phrase in folded for phrase in self._folded)

    @classmethod
    def default(cls) -> "CueLexicon":
        return cls(phrases=DEFAULT_CUE_PHRASES)

    @classmethod
    def from_file(cls, path: str | Path) -> "CueLexicon":
        return cls(phrases=tuple(load_wordlist(path)))


@dataclass
class KeywordRecord:
    """Per-word weight components; `sum` is always recomputed."""

    word_id: int
    word: str
    frequency: float = 0.0
    place: float = 0.0
    format: float = 0.0
    user_weight: float = 0.0

    @property
    def sum(self) -> float:
        return self.frequency + self.place + self.format + self.user_weight

    def matches(self, norms: frozenset[str]) -> bool:
        return all(part in norms for part in self.word.split())


@dataclass(frozen=True)
class WeightBreakdown:
    location: float
    cuephrase: float
    statterm: float
    addterm: float
    total: float


@dataclass(frozen=True)
class WeightContext:
    title_norms: frozenset[str]
    keywords: tuple[KeywordRecord, ...]
    cues: CueLexicon

    @classmethod
    def for_document(
        cls,
        doc: Document,
        keywords: list[KeywordRecord] | tuple[KeywordRecord, ...],
        cues: CueLexicon | None = None,
    ) -> "WeightContext":
        title_norms = frozenset(
            t.norm for t in tokenize(doc.title, doc.lang) if len(t.norm) >= 3
        )
        return cls(
            title_norms=title_norms,
            keywords=tuple(keywords),
            cues=cues or CueLexicon.default(),
        )


def location(text_pos: int, para_pos: int) -> float:
    """1 / (n * m) for positions n, m in {1, 3}."""
    if text_pos not in (1, 3) or para_pos not in (1, 3):
        raise InvalidPosition(f"positions must be 1 or 3, got ({text_pos}, {para_pos})")
    return 1.0 / (text_pos * para_pos)


def cuephrase(sentence: SentenceUnit, cues: CueLexicon) -> float:
    return 1.0 if cues.matches(sentence.text) else 0.0


def statterm(sentence: SentenceUnit, keywords: list[KeywordRecord] | tuple[KeywordRecord, ...]) -> float:
    """Fraction of the keyword set present in the sentence."""
    norms = sentence.norm_set()
    hits = sum(1 for rec in keywords if rec.matches(norms))
    return hits / max(1, len(keywords))


def addterm(sentence: SentenceUnit, title_norms: frozenset[str]) -> float:
    """Fraction of the sentence's words (>= 3 chars) that relate to the title."""
    eligible = [t for t in sentence.tokens if len(t.norm) >= 3]
    if not eligible:
        return 0.0
    hits = sum(1 for t in eligible if t.norm in title_norms)
    return hits / len(eligible)


def weigh(sentence: SentenceUnit, ctx: WeightContext) -> WeightBreakdown:
    loc = location(sentence.text_pos, sentence.para_pos)
    cue = cuephrase(sentence, ctx.cues)
    stat = statterm(sentence, ctx.keywords)
    add = addterm(sentence, ctx.title_norms)
    return WeightBreakdown(
        location=loc,
        cuephrase=cue,
        statterm=stat,
        addterm=add,
        total=loc + cue + stat + add,
    )


def word_weight(rec: KeywordRecord) -> float:
    for name in ("frequency", "place", "format", "user_weight"):
        value = getattr(rec, name)
        if not 0.0 <= value <= 1.0:
            raise ComponentOutOfRange(f"{name} must lie in [0, 1], got {value}")
    return rec.sum


def boosted_total(breakdown: WeightBreakdown, sentence: SentenceUnit, keywords) -> float:
    """Optional boost mode: total plus the mean user weight of matched words."""
    norms = sentence.norm_set()
    matched = [rec.user_weight for rec in keywords if rec.matches(norms)]
    if not matched:
        return breakdown.total
    return breakdown.total + sum(matched) / len(matched)


def derive_keywords(
    doc: Document,
    count: int = 5,
    stopwords: frozenset[str] | None = None,
    user_weights: dict[str, float] | None = None,
) -> list[KeywordRecord]:
    """Keyword records for a document.

    Author-supplied keywords pass through (all of them); otherwise the
    `count` most frequent normalized words of the main part are taken,
    skipping stopwords and words shorter than 3 characters, ties broken
    alphabetically.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    stopwords = stopwords if stopwords is not None else stopwords_for(doc.lang)
    user_weights = user_weights or {}

    if doc.keywords:
        words = []
        for raw in doc.keywords:
            norm = " ".join(t.norm for t in tokenize(raw, doc.lang) if t.norm)
            if norm:
                words.append(norm)
    else:
        counts: Counter[str] = Counter()
        for sentence in doc.sentences():
            for token in sentence.tokens:
                norm = token.norm
                if len(norm) >= 3 and norm not in stopwords:
                    counts[norm] += 1
        ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
        words = [word for word, _ in ranked[:count]]

    records = [KeywordRecord(word_id=i, word=word) for i, word in enumerate(words)]
    _score_records(doc, records)
    for rec in records:
        if rec.word in user_weights:
            rec.user_weight = float(user_weights[rec.word])
    return records


def _score_records(doc: Document, records: list[KeywordRecord]) -> None:
    """Fill frequency/place/format for records against the main part."""
    raw_counts = [0] * len(records)
    place_sums = [0.0] * len(records)
    place_hits = [0] * len(records)
    formats = [0.0] * len(records)

    for para in doc.paragraphs:
        for sentence in para.sentences:
            norms = sentence.norm_set()
            occurrences = Counter(t.norm for t in sentence.tokens)
            loc = location(sentence.text_pos, sentence.para_pos)
            for i, rec in enumerate(records):
                parts = rec.word.split()
                if len(parts) == 1:
                    hits = occurrences.get(parts[0], 0)
                else:
                    hits = 1 if all(p in norms for p in parts) else 0
                if hits:
                    raw_counts[i] += hits
                    place_sums[i] += loc
                    place_hits[i] += 1
                    if para.styled:
                        formats[i] = 1.0

    max_count = max(raw_counts, default=0)
    for i, rec in enumerate(records):
        rec.frequency = raw_counts[i] / max_count if max_count else 0.0
        rec.place = place_sums[i] / place_hits[i] if place_hits[i] else 0.0
        rec.format = formats[i]


def load_user_weights(path: str | Path) -> dict[str, float]:
    """JSON map from normalized word to a weight in [0, 1]."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read user weights {path}: {exc}") from exc
    try:
        payload = json.loads(text)
    except ValueError as exc:
        raise MalformedInput(f"user weights are not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise MalformedInput("user weights must be a JSON object")
    weights = {}
    for word, value in payload.items():
        if not isinstance(value, (int, float)) or not 0.0 <= float(value) <= 1.0:
            raise ComponentOutOfRange(f"user weight for {word!r} must lie in [0, 1]")
        weights[str(word)] = float(value)
    return weights
