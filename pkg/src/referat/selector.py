"""Greedy usefulness-clipping ranking and summary selection.

Each selection step divides the usefulness of every remaining candidate by
(1 + k * similarity to the picked sentence), so dissimilar candidates keep
their score and duplicates collapse.  Similarity is the Jaccard index over
content tokens (normalized, >= 3 chars, stopwords removed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .docmodel import SentenceUnit
from .errors import InvalidClipFactor, InvalidLimit
from .lexicons import EN_STOPWORDS, UK_STOPWORDS

DEFAULT_CLIP = 2.0

_ALL_STOPWORDS = UK_STOPWORDS | EN_STOPWORDS


def content_signature(sentence: SentenceUnit, stopwords: frozenset[str] = _ALL_STOPWORDS) -> frozenset[str]:
    return frozenset(
        t.norm for t in sentence.tokens if len(t.norm) >= 3 and t.norm not in stopwords
    )


def jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 0.0
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def similarity(
    a: SentenceUnit,
    b: SentenceUnit,
    stopwords: frozenset[str] = _ALL_STOPWORDS,
) -> float:
    return jaccard(content_signature(a, stopwords), content_signature(b, stopwords))


@dataclass
class Candidate:
    doc_id: int
    sentence: SentenceUnit
    q: float
    p: float
    signature: frozenset[str]

    @classmethod
    def build(
        cls,
        doc_id: int,
        sentence: SentenceUnit,
        q: float,
        stopwords: frozenset[str] = _ALL_STOPWORDS,
    ) -> "Candidate":
        return cls(
            doc_id=doc_id,
            sentence=sentence,
            q=q,
            p=q,
            signature=content_signature(sentence, stopwords),
        )


@dataclass
class SelectionState:
    remaining: list[Candidate]
    selected: list[Candidate]
    clip: float
    total: int


def rank(candidates: list[Candidate], clip: float = DEFAULT_CLIP) -> list[Candidate]:
    """Order candidates by clipped usefulness.

    Ties on usefulness go to the sentence earlier in its document, then to
    the lower document id, which also makes the result independent of the
    input order.  Picked candidates keep the usefulness they had at pick
    time in `p`.
    """
    if not (isinstance(clip, (int, float)) and math.isfinite(clip) and clip > 0):
        raise InvalidClipFactor(f"clip factor must be a positive number, got {clip!r}")
    for cand in candidates:
        if cand.q <= 0:
            raise ValueError(f"candidate usefulness must be positive, got {cand.q}")
        cand.p = cand.q

    state = SelectionState(
        remaining=list(candidates),
        selected=[],
        clip=clip,
        total=len(candidates),
    )
    while state.remaining:
        best = max(
            state.remaining,
            key=lambda c: (c.p, -c.sentence.id, -c.doc_id),
        )
        state.remaining.remove(best)
        state.selected.append(best)
        sig = best.signature
        for cand in state.remaining:
            sim = jaccard(cand.signature, sig)
            if sim:
                cand.p /= 1.0 + clip * sim
    return state.selected


def select_summary(
    ranked: list[Candidate],
    ratio: float | None = None,
    max_sentences: int | None = None,
) -> list[Candidate]:
    """First part of the ranking, sized by ratio (ceiling, min 1) or count."""
    if (ratio is None) == (max_sentences is None):
        raise InvalidLimit("exactly one of ratio and max_sentences must be given")
    if not ranked:
        return []
    if ratio is not None:
        if not (isinstance(ratio, (int, float)) and 0.0 < ratio <= 1.0):
            raise InvalidLimit(f"ratio must lie in (0, 1], got {ratio!r}")
        take = max(1, math.ceil(ratio * len(ranked)))
    else:
        if not (isinstance(max_sentences, int) and max_sentences >= 1):
            raise InvalidLimit(f"max sentence count must be >= 1, got {max_sentences!r}")
        take = max_sentences
    return list(ranked[:take])


def order_output(selected: list[Candidate]) -> list[Candidate]:
    """Source order: by document id, then sentence position."""
    return sorted(selected, key=lambda c: (c.doc_id, c.sentence.id))
