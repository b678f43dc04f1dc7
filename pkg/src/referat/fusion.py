"""Cross-document consolidation: dedup, sentence fusion, relation links.

Fusion aligns the content tokens (normalized, >= 3 chars, no stopwords) of
two sentences via their longest common subsequence.  Intersection keeps the
common tokens; union interleaves the gap tokens of both sources around the
common ones.  Gap tokens whose norm is already covered are skipped so every
shared content word appears exactly once in a union.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .docmodel import Document, SentenceUnit, Token, normalize, tokenize
from .errors import ConfigError
from .selector import _ALL_STOPWORDS, content_signature, jaccard
from .lexicons import stopwords_for

DEFAULT_DUP_THRESHOLD = 0.8
DEFAULT_FUSE_THRESHOLD = 0.5


def _content_tokens(sentence: SentenceUnit, stopwords: frozenset[str]) -> list[Token]:
    return [t for t in sentence.tokens if len(t.norm) >= 3 and t.norm not in stopwords]


def lcs_pairs(a: list[str], b: list[str]) -> list[tuple[int, int]]:
    """Index pairs of one longest common subsequence of a and b."""
    rows, cols = len(a), len(b)
    table = [[0] * (cols + 1) for _ in range(rows + 1)]
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    pairs: list[tuple[int, int]] = []
    i, j = rows, cols
    while i > 0 and j > 0:
        if a[i - 1] == b[j - 1]:
            pairs.append((i - 1, j - 1))
            i -= 1
            j -= 1
        elif table[i][j - 1] >= table[i - 1][j]:
            j -= 1
        else:
            i -= 1
    pairs.reverse()
    return pairs


@dataclass(frozen=True)
class FusionResult:
    text: str
    mode: str
    sources: tuple[int, int]


def fuse(
    a: SentenceUnit,
    b: SentenceUnit,
    mode: str = "union",
    stopwords: frozenset[str] = _ALL_STOPWORDS,
) -> FusionResult:
    """Merge two sentences over their aligned content tokens.

    Common tokens use the first argument's surface form.  In union mode the
    non-common stretches of `a` come before those of `b` at each gap, each
    source keeping its internal order.
    """
    if mode not in ("union", "intersection"):
        raise ValueError(f"mode must be 'union' or 'intersection', got {mode!r}")
    ca = _content_tokens(a, stopwords)
    cb = _content_tokens(b, stopwords)
    pairs = lcs_pairs([t.norm for t in ca], [t.norm for t in cb])

    if mode == "intersection":
        surfaces = [ca[i].surface for i, _ in pairs]
    else:
        lcs_norms = {ca[i].norm for i, _ in pairs}
        emitted: set[str] = set()
        surfaces = []

        def emit_gap(tokens: list[Token]) -> None:
            for token in tokens:
                if token.norm not in emitted and token.norm not in lcs_norms:
                    surfaces.append(token.surface)
                    emitted.add(token.norm)

        ia = ib = 0
        for i, j in pairs:
            emit_gap(ca[ia:i])
            emit_gap(cb[ib:j])
            surfaces.append(ca[i].surface)
            emitted.add(ca[i].norm)
            ia, ib = i + 1, j + 1
        emit_gap(ca[ia:])
        emit_gap(cb[ib:])

    return FusionResult(text=" ".join(surfaces), mode=mode, sources=(a.id, b.id))


@dataclass
class RepositoryEntry:
    sentence: SentenceUnit
    signature: frozenset[str]
    doc_id: int
    fused: bool = False
    sources: list[tuple[int, int]] = field(default_factory=list)
    live: bool = True

    @property
    def anchor(self) -> tuple[int, int]:
        return (self.doc_id, self.sentence.id)


@dataclass(frozen=True)
class ConsolidationOutcome:
    action: str  # "appended" | "fused" | "dropped"
    entry: RepositoryEntry | None = None


class ConsolidatedRepository:
    """Cross-document sentence store without near-duplicates.

    A candidate similar to a stored sentence at or above `dup_threshold` is
    dropped; at or above `fuse_threshold` the pair is union-fused in place
    (the fused sentence is re-checked against the rest, so the no-duplicate
    invariant survives chains of fusions); otherwise the candidate is
    appended.
    """

    def __init__(
        self,
        dup_threshold: float = DEFAULT_DUP_THRESHOLD,
        fuse_threshold: float = DEFAULT_FUSE_THRESHOLD,
        lang: str = "uk",
        stopwords: frozenset[str] | None = None,
    ) -> None:
        if not 0.0 < dup_threshold <= 1.0:
            raise ConfigError(f"--dup-threshold must lie in (0, 1], got {dup_threshold}")
        if not 0.0 <= fuse_threshold < dup_threshold:
            raise ConfigError(
                f"--fuse-threshold must lie in [0, --dup-threshold), got {fuse_threshold}"
            )
        self.dup_threshold = dup_threshold
        self.fuse_threshold = fuse_threshold
        self.lang = lang
        self.stopwords = stopwords if stopwords is not None else stopwords_for(lang)
        self._entries: list[RepositoryEntry] = []
        self._index: dict[str, list[int]] = {}

    @property
    def entries(self) -> list[RepositoryEntry]:
        return [entry for entry in self._entries if entry.live]

    def consolidate(self, sentence: SentenceUnit, doc_id: int) -> ConsolidationOutcome:
        return self._insert(sentence, doc_id, refs=[(doc_id, sentence.id)], fused=False)

    def _best_match(self, signature: frozenset[str]) -> tuple[int, float]:
        best_idx, best_sim = -1, -1.0
        seen: set[int] = set()
        for norm in signature:
            seen.update(self._index.get(norm, ()))
        for idx in sorted(seen):
            entry = self._entries[idx]
            if not entry.live:
                continue
            sim = jaccard(signature, entry.signature)
            if sim > best_sim:
                best_idx, best_sim = idx, sim
        if best_idx < 0 and self.fuse_threshold == 0.0:
            # zero overlap everywhere: the max similarity is 0, held first
            # by the earliest live entry; only relevant when fusing at 0
            for idx, entry in enumerate(self._entries):
                if entry.live:
                    return idx, 0.0
        return best_idx, best_sim

    def _insert(
        self,
        sentence: SentenceUnit,
        doc_id: int,
        refs: list[tuple[int, int]],
        fused: bool,
    ) -> ConsolidationOutcome:
        signature = content_signature(sentence, self.stopwords)
        best_idx, best_sim = self._best_match(signature)

        if best_idx >= 0 and best_sim >= self.dup_threshold:
            return ConsolidationOutcome("dropped", self._entries[best_idx])

        if best_idx >= 0 and best_sim >= self.fuse_threshold:
            target = self._entries[best_idx]
            target.live = False
            fused_text = fuse(sentence, target.sentence, "union", self.stopwords).text
            fused_unit = SentenceUnit(
                id=target.sentence.id,
                text=fused_text,
                tokens=tuple(tokenize(fused_text, self.lang)),
                paragraph_id=target.sentence.paragraph_id,
                text_pos=target.sentence.text_pos,
                para_pos=target.sentence.para_pos,
            )
            merged_refs: list[tuple[int, int]] = []
            for ref in (*target.sources, target.anchor, *refs):
                if ref not in merged_refs:
                    merged_refs.append(ref)
            self._insert(fused_unit, target.doc_id, merged_refs, fused=True)
            return ConsolidationOutcome("fused", target)

        entry = RepositoryEntry(
            sentence=sentence,
            signature=signature,
            doc_id=doc_id,
            fused=fused,
            sources=[ref for ref in refs if ref != (doc_id, sentence.id)],
        )
        self._entries.append(entry)
        idx = len(self._entries) - 1
        for norm in signature:
            self._index.setdefault(norm, []).append(idx)
        return ConsolidationOutcome("appended", entry)


_WORD_SPAN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class RelationEdge:
    subject: str
    object: str
    sentence: int


@dataclass(frozen=True)
class RelationGraph:
    edges: tuple[RelationEdge, ...]

    @property
    def nodes(self) -> tuple[str, ...]:
        names = {edge.subject for edge in self.edges} | {edge.object for edge in self.edges}
        return tuple(sorted(names))

    def to_json(self) -> str:
        return json.dumps(
            {
                "edges": [
                    {"subject": e.subject, "object": e.object, "sentence": e.sentence}
                    for e in self.edges
                ]
            },
            ensure_ascii=False,
            indent=2,
        )


_CAPTURE_WINDOW = 3


def extract_relations(
    doc: Document,
    subjects: list[str] | tuple[str, ...],
    stopwords: frozenset[str] | None = None,
) -> RelationGraph:
    """Edges from dictionary subjects to the short phrases that follow them.

    After a subject occurrence, up to 3 tokens are captured; capture stops
    at the sentence end, at punctuation, or at a stopword.  Empty captures
    produce no edge.
    """
    if not subjects:
        raise ValueError("subject dictionary must not be empty")
    stopwords = stopwords if stopwords is not None else stopwords_for(doc.lang)
    subject_norms = []
    for subject in subjects:
        norms = [normalize(w, doc.lang) for w in _WORD_SPAN_RE.findall(subject)]
        norms = [n for n in norms if n]
        if norms:
            subject_norms.append((subject, norms))

    edges: list[RelationEdge] = []
    for sentence in doc.sentences():
        spans = [(m.group(0), m.start(), m.end()) for m in _WORD_SPAN_RE.finditer(sentence.text)]
        norms = [normalize(surface, doc.lang) for surface, _, _ in spans]
        for subject, parts in subject_norms:
            for i in range(len(norms) - len(parts) + 1):
                if norms[i : i + len(parts)] != parts:
                    continue
                captured = []
                prev_end = spans[i + len(parts) - 1][2]
                for j in range(i + len(parts), len(spans)):
                    if len(captured) >= _CAPTURE_WINDOW:
                        break
                    surface, start, end = spans[j]
                    gap = sentence.text[prev_end:start]
                    if any(not ch.isspace() for ch in gap):
                        break  # punctuation between tokens
                    if norms[j] in stopwords:
                        break
                    captured.append(surface)
                    prev_end = end
                if captured:
                    edges.append(
                        RelationEdge(
                            subject=subject,
                            object=" ".join(captured),
                            sentence=sentence.id,
                        )
                    )
    return RelationGraph(edges=tuple(edges))
