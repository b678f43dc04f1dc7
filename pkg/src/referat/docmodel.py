"""Document data model, input parsing, sentence segmentation, tokenization.

Positions follow a tercile split: the first third of a unit sequence is the
beginning, the last third the end, everything else the middle.  Beginnings
and ends carry position value 1, middles carry 3; with fewer than three
units the beginning is filled first (1 unit -> begin; 2 units -> begin, end).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import EmptyDocument, MalformedInput
from .lexicons import STEM_SUFFIXES, abbreviations_for


class Zone(str, Enum):
    BEGIN = "BEGIN"
    CENTER = "CENTER"
    END = "END"


ALIGNMENTS = ("left", "center", "right", "justify")
LANGS = ("uk", "en")


def tercile_sizes(total: int) -> tuple[int, int, int]:
    """Sizes of the begin/center/end segments for `total` units."""
    if total <= 0:
        return (0, 0, 0)
    if total == 1:
        return (1, 0, 0)
    if total == 2:
        return (1, 0, 1)
    base, rem = divmod(total, 3)
    return (base + (1 if rem >= 1 else 0), base + (1 if rem >= 2 else 0), base)


def tercile_zone(index: int, total: int) -> Zone:
    begin, center, _ = tercile_sizes(total)
    if index < begin:
        return Zone.BEGIN
    if index < begin + center:
        return Zone.CENTER
    return Zone.END


def position_value(index: int, total: int) -> int:
    """1 for units in the begin or end tercile, 3 for the middle."""
    return 3 if tercile_zone(index, total) is Zone.CENTER else 1


@dataclass(frozen=True, slots=True)
class Block:
    text: str
    align: str = "left"
    bold: bool = False
    italic: bool = False
    underline: bool = False
    caps: bool = False
    index: int = 0
    zone: Zone = Zone.BEGIN

    @property
    def styled(self) -> bool:
        return self.bold or self.italic or self.underline


@dataclass(frozen=True, slots=True)
class RawDocument:
    blocks: tuple[Block, ...]
    lang: str = "uk"


@dataclass(frozen=True, slots=True)
class Token:
    surface: str
    norm: str

    @property
    def length(self) -> int:
        return len(self.norm)


@dataclass(frozen=True, slots=True)
class SentenceUnit:
    """A sentence with its tokens and tercile positions.

    `text_pos` is the position value within the whole main part, `para_pos`
    within the sentence's paragraph; both are 1 (begin/end) or 3 (middle).
    """

    id: int
    text: str
    tokens: tuple[Token, ...]
    paragraph_id: int
    text_pos: int
    para_pos: int

    def norm_set(self) -> frozenset[str]:
        return frozenset(t.norm for t in self.tokens if t.norm)


@dataclass(frozen=True, slots=True)
class Paragraph:
    sentences: tuple[SentenceUnit, ...]
    styled: bool = False
    block_index: int = -1


@dataclass(frozen=True, slots=True)
class Document:
    title: str
    keywords: tuple[str, ...]
    authors: tuple[str, ...]
    paragraphs: tuple[Paragraph, ...]
    literature: tuple[str, ...]
    lang: str = "uk"

    def sentences(self) -> Iterator[SentenceUnit]:
        for para in self.paragraphs:
            yield from para.sentences


_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


def normalize(word: str, lang: str = "uk") -> str:
    """Lowercase, strip non-alphanumerics, then light suffix stemming.

    Suffix stripping repeats until no listed suffix matches while the form
    is at least 5 characters long, so the result is a fixed point:
    normalize(normalize(w)) == normalize(w).
    """
    norm = "".join(ch for ch in word if ch.isalnum()).casefold()
    suffixes = STEM_SUFFIXES.get(lang, ())
    while len(norm) >= 5:
        for suf in suffixes:
            if norm.endswith(suf):
                norm = norm[: -len(suf)]
                break
        else:
            break
    return norm


def tokenize(sentence: str, lang: str = "uk") -> list[Token]:
    """Split on whitespace and punctuation, keeping surface/norm pairs."""
    tokens = []
    for match in _WORD_RE.finditer(sentence):
        surface = match.group(0)
        tokens.append(Token(surface=surface, norm=normalize(surface, lang)))
    return tokens


_DELIM_RE = re.compile(r"([.!?]+)(\s+)")
_OPENERS = "«\"'“‘(["


def segment(text: str, lang: str = "uk", abbreviations: Iterable[str] | None = None) -> list[str]:
    """Split text into sentences.

    A split happens after '.', '!' or '?' followed by whitespace and an
    uppercase letter or digit (opening quotes/brackets are transparent).
    A single period does not split when the preceding token is a known
    abbreviation.  Joining the result with single spaces preserves every
    non-whitespace character of the input in order.
    """
    abbrevs = frozenset(abbreviations) if abbreviations is not None else abbreviations_for(lang)
    sentences: list[str] = []
    start = 0
    for match in _DELIM_RE.finditer(text):
        delims, end = match.group(1), match.end(1)
        follow = match.end()
        while follow < len(text) and text[follow] in _OPENERS:
            follow += 1
        if follow >= len(text):
            continue
        ch = text[follow]
        if not (ch.isupper() or ch.isdigit()):
            continue
        if delims == ".":
            prev = _WORD_RE.findall(text[max(0, match.start() - 40) : match.start()])
            if prev and prev[-1].casefold() in abbrevs:
                continue
        chunk = text[start:end].strip()
        if chunk:
            sentences.append(chunk)
        start = match.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


_TOP_KEYS = {"lang", "blocks"}
_BLOCK_KEYS = {"text", "align", "bold", "italic", "underline", "caps"}
_FLAG_KEYS = ("bold", "italic", "underline", "caps")


def _decode_utf8(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"input is not UTF-8: {exc}") from exc
    return data


def parse_docjson(data: bytes | str) -> RawDocument:
    """Parse the docjson wire format into a RawDocument.

    Top-level object: {"lang": "uk"|"en", "blocks": [...]}; each block has
    "text" plus optional "align" and style flags.  Unknown fields are
    rejected.
    """
    text = _decode_utf8(data)
    try:
        payload = json.loads(text)
    except ValueError as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise MalformedInput("docjson top level must be an object")
    unknown = set(payload) - _TOP_KEYS
    if unknown:
        raise MalformedInput(f"unknown top-level fields: {sorted(unknown)}")
    lang = payload.get("lang")
    if lang not in LANGS:
        raise MalformedInput(f"lang must be one of {LANGS}, got {lang!r}")
    raw_blocks = payload.get("blocks")
    if not isinstance(raw_blocks, list):
        raise MalformedInput("blocks must be an array")
    if not raw_blocks:
        raise EmptyDocument("docjson contains zero blocks")
    total = len(raw_blocks)
    blocks = []
    for i, entry in enumerate(raw_blocks):
        if not isinstance(entry, dict):
            raise MalformedInput(f"block {i} must be an object")
        unknown = set(entry) - _BLOCK_KEYS
        if unknown:
            raise MalformedInput(f"block {i} has unknown fields: {sorted(unknown)}")
        if not isinstance(entry.get("text"), str):
            raise MalformedInput(f"block {i} is missing string field 'text'")
        align = entry.get("align", "left")
        if align not in ALIGNMENTS:
            raise MalformedInput(f"block {i} align must be one of {ALIGNMENTS}, got {align!r}")
        flags = {}
        for key in _FLAG_KEYS:
            value = entry.get(key, False)
            if not isinstance(value, bool):
                raise MalformedInput(f"block {i} field '{key}' must be a boolean")
            flags[key] = value
        blocks.append(
            Block(
                text=entry["text"],
                align=align,
                index=i,
                zone=tercile_zone(i, total),
                **flags,
            )
        )
    return RawDocument(blocks=tuple(blocks), lang=lang)


def parse_plaintext(data: bytes | str, lang: str = "uk") -> RawDocument:
    """Parse plain UTF-8 text: one left-aligned, unstyled block per
    blank-line-separated paragraph."""
    text = _decode_utf8(data)
    groups = []
    for chunk in re.split(r"\n\s*\n", text):
        lines = [line.strip() for line in chunk.splitlines()]
        joined = " ".join(line for line in lines if line)
        if joined:
            groups.append(joined)
    if not groups:
        raise EmptyDocument("plain text input contains no paragraphs")
    total = len(groups)
    blocks = tuple(
        Block(text=chunk, index=i, zone=tercile_zone(i, total))
        for i, chunk in enumerate(groups)
    )
    return RawDocument(blocks=blocks, lang=lang)


def serialize_plaintext(doc: RawDocument) -> str:
    """Inverse of parse_plaintext on block texts."""
    return "\n\n".join(block.text for block in doc.blocks) + "\n"
