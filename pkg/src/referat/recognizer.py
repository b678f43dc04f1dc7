"""Rule-table recognition of document structure.

A rule matches a block on zone, alignment, font style and literal trigger
strings; the first matching rule (in ascending rule id) claims the block.
Blocks claimed by no rule fall into the main part together with the
main-rule blocks.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable

from .docmodel import (
    Block,
    Document,
    Paragraph,
    RawDocument,
    SentenceUnit,
    Zone,
    position_value,
    segment,
    tokenize,
)
from .errors import EmptyDocument, IoFailure, MalformedInput


class Element(str, Enum):
    TITLE = "title"
    AUTHOR = "author"
    KEYWORD = "keyword"
    MAIN = "main"
    LITERATURE = "literature"


FONT_STYLES = ("bold", "italic", "underline", "normal")


@dataclass(frozen=True)
class RecognitionRule:
    id: int
    element: Element
    place: Zone | None = None
    align_set: frozenset[str] = frozenset()
    font_set: frozenset[str] = frozenset()
    triggers: tuple[str, ...] = ()


@dataclass(frozen=True)
class RuleTable:
    rules: tuple[RecognitionRule, ...]

    def __post_init__(self) -> None:
        ids = [rule.id for rule in self.rules]
        if len(ids) != len(set(ids)):
            raise ValueError("rule ids must be unique within a table")

    def ordered(self) -> tuple[RecognitionRule, ...]:
        return tuple(sorted(self.rules, key=lambda rule: rule.id))

    def to_json(self) -> str:
        rows = [
            {
                "id": rule.id,
                "element": rule.element.value,
                "place": rule.place.value if rule.place else None,
                "align": sorted(rule.align_set),
                "font": sorted(rule.font_set),
                "triggers": list(rule.triggers),
            }
            for rule in self.ordered()
        ]
        return json.dumps({"rules": rows}, ensure_ascii=False, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RuleTable":
        try:
            payload = json.loads(text)
        except ValueError as exc:
            raise MalformedInput(f"rule table is not valid JSON: {exc}") from exc
        rows = payload.get("rules") if isinstance(payload, dict) else None
        if not isinstance(rows, list) or not rows:
            raise MalformedInput("rule table must contain a non-empty 'rules' array")
        rules = []
        for i, row in enumerate(rows):
            if not isinstance(row, dict):
                raise MalformedInput(f"rule {i} must be an object")
            try:
                element = Element(row["element"])
                place = Zone(row["place"]) if row.get("place") else None
                align_set = frozenset(row.get("align") or ())
                font_set = frozenset(row.get("font") or ())
                rules.append(
                    RecognitionRule(
                        id=int(row["id"]),
                        element=element,
                        place=place,
                        align_set=align_set,
                        font_set=font_set,
                        triggers=tuple(row.get("triggers") or ()),
                    )
                )
            except (KeyError, ValueError) as exc:
                raise MalformedInput(f"rule {i} is malformed: {exc}") from exc
            if not font_set <= set(FONT_STYLES):
                raise MalformedInput(f"rule {i} font values must be among {FONT_STYLES}")
        try:
            return cls(rules=tuple(rules))
        except ValueError as exc:
            raise MalformedInput(str(exc)) from exc

    @classmethod
    def from_file(cls, path: str | Path) -> "RuleTable":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise IoFailure(f"cannot read rule table {path}: {exc}") from exc
        return cls.from_json(text)


@dataclass(frozen=True)
class Match:
    block_index: int
    rule_id: int
    element: Element


def default_rule_table() -> RuleTable:
    return RuleTable(
        rules=(
            RecognitionRule(
                id=1,
                element=Element.TITLE,
                place=Zone.BEGIN,
                align_set=frozenset({"center", "right"}),
                font_set=frozenset({"bold"}),
            ),
            RecognitionRule(
                id=2,
                element=Element.AUTHOR,
                place=Zone.BEGIN,
                align_set=frozenset({"center", "left"}),
                triggers=("By", "©", "(C)"),
            ),
            RecognitionRule(
                id=3,
                element=Element.KEYWORD,
                place=Zone.BEGIN,
                triggers=("Keyword", "Keywords", "Ключові слова", "Ключевые слова"),
            ),
            RecognitionRule(id=4, element=Element.MAIN, place=Zone.CENTER),
            RecognitionRule(
                id=5,
                element=Element.LITERATURE,
                place=Zone.END,
                font_set=frozenset({"normal", "italic"}),
            ),
        )
    )


def block_styles(block: Block) -> frozenset[str]:
    """Active style names of a block; 'normal' when nothing at all is set."""
    styles = {name for name in ("bold", "italic", "underline") if getattr(block, name)}
    if not styles and not block.caps:
        return frozenset({"normal"})
    return frozenset(styles)


def match_rule(block: Block, rule: RecognitionRule) -> bool:
    if rule.place is not None and block.zone is not rule.place:
        return False
    if rule.align_set and block.align not in rule.align_set:
        return False
    if rule.font_set and not (block_styles(block) & rule.font_set):
        return False
    if rule.triggers:
        text = block.text.casefold()
        if not any(trigger.casefold() in text for trigger in rule.triggers):
            return False
    return True


def assign_blocks(doc: RawDocument, table: RuleTable) -> list[Match | None]:
    """First matching rule per block, None when no rule fires."""
    rules = table.ordered()
    matches: list[Match | None] = []
    for block in doc.blocks:
        for rule in rules:
            if match_rule(block, rule):
                matches.append(Match(block.index, rule.id, rule.element))
                break
        else:
            matches.append(None)
    return matches


_AUTHOR_SPLIT_RE = re.compile(r"[,;]|\band\b|\bта\b", re.IGNORECASE)


def _strip_triggers(text: str, triggers: Iterable[str]) -> str:
    for trigger in triggers:
        pattern = re.escape(trigger)
        if trigger and trigger[0].isalnum():
            pattern = r"\b" + pattern + r"\b"
        text = re.sub(pattern, " ", text, flags=re.IGNORECASE)
    return text


def _split_authors(text: str, triggers: Iterable[str]) -> list[str]:
    cleaned = _strip_triggers(text, triggers)
    return [part.strip() for part in _AUTHOR_SPLIT_RE.split(cleaned) if part.strip()]


def _split_keywords(text: str, triggers: Iterable[str]) -> list[str]:
    low = text.casefold()
    hits = []
    for trigger in triggers:
        pos = low.find(trigger.casefold())
        if pos >= 0:
            hits.append((pos, -len(trigger)))
    if not hits:
        return []
    pos, neg_len = min(hits)
    rest = text[pos - neg_len :]
    rest = rest.lstrip(" \t:;—–-")
    parts = []
    for part in re.split(r"[,;]", rest):
        part = part.strip().rstrip(".").strip()
        if part:
            parts.append(part)
    return parts


def recognize(
    doc: RawDocument,
    table: RuleTable | None = None,
    abbreviations: Iterable[str] | None = None,
) -> Document:
    """Apply the rule table to a RawDocument and build a Document.

    Fallbacks keep the pipeline alive on weakly formatted input: without a
    title match the first block's text becomes the title (and, when that
    block matched no rule, it is consumed by the title); when the main part
    would come out empty, literature blocks are demoted back into it.
    """
    if not doc.blocks:
        raise EmptyDocument("document has no blocks")
    table = table or default_rule_table()
    matches = assign_blocks(doc, table)
    rules_by_id = {rule.id: rule for rule in table.rules}

    title: str | None = None
    authors: list[str] = []
    keywords: list[str] = []
    literature_indices: list[int] = []
    main_indices: list[int] = []

    for block, match in zip(doc.blocks, matches):
        element = match.element if match else None
        if element is Element.TITLE:
            if title is None:
                title = block.text
        elif element is Element.AUTHOR:
            authors.extend(_split_authors(block.text, rules_by_id[match.rule_id].triggers))
        elif element is Element.KEYWORD:
            keywords.extend(_split_keywords(block.text, rules_by_id[match.rule_id].triggers))
        elif element is Element.LITERATURE:
            literature_indices.append(block.index)
        else:
            main_indices.append(block.index)

    if title is None:
        title = doc.blocks[0].text
        if matches[0] is None and main_indices and main_indices[0] == 0:
            main_indices.pop(0)

    if not main_indices and literature_indices:
        main_indices = literature_indices
        literature_indices = []

    paragraphs = _build_paragraphs(doc, main_indices, abbreviations)
    if not paragraphs:
        raise EmptyDocument("no main-part content recognized")

    return Document(
        title=title,
        keywords=tuple(keywords),
        authors=tuple(authors),
        paragraphs=tuple(paragraphs),
        literature=tuple(doc.blocks[i].text for i in literature_indices),
        lang=doc.lang,
    )


def _build_paragraphs(
    doc: RawDocument,
    main_indices: list[int],
    abbreviations: Iterable[str] | None,
) -> list[Paragraph]:
    per_block: list[tuple[int, list[str]]] = []
    for index in main_indices:
        texts = segment(doc.blocks[index].text, doc.lang, abbreviations)
        if texts:
            per_block.append((index, texts))
    total = sum(len(texts) for _, texts in per_block)
    paragraphs = []
    flat = 0
    for para_id, (index, texts) in enumerate(per_block):
        sentences = []
        for j, text in enumerate(texts):
            sentences.append(
                SentenceUnit(
                    id=flat,
                    text=text,
                    tokens=tuple(tokenize(text, doc.lang)),
                    paragraph_id=para_id,
                    text_pos=position_value(flat, total),
                    para_pos=position_value(j, len(texts)),
                )
            )
            flat += 1
        paragraphs.append(
            Paragraph(
                sentences=tuple(sentences),
                styled=doc.blocks[index].styled,
                block_index=index,
            )
        )
    return paragraphs
