"""Shared builders for tests: sentences, docjson payloads, synthetic corpora."""

from __future__ import annotations

import json
import random

from referat.docmodel import SentenceUnit, tokenize

UK_NOUNS = [
    "система", "аналіз", "метод", "реферат", "текст", "документ", "модель",
    "структура", "алгоритм", "речення", "джерело", "оцінка", "якість",
    "процес", "підхід", "результат", "зміст", "форма", "рівень", "засіб",
]
UK_VERBS = [
    "виконує", "формує", "зберігає", "описує", "покращує", "визначає",
    "містить", "обчислює", "опрацьовує", "надає",
]
EN_NOUNS = [
    "system", "analysis", "method", "summary", "text", "document", "model",
    "structure", "algorithm", "sentence", "source", "quality", "process",
    "approach", "result", "content", "level", "signal", "channel", "filter",
]
EN_VERBS = [
    "computes", "builds", "stores", "describes", "improves", "defines",
    "contains", "handles", "processes", "provides",
]


def sentence(
    sid: int,
    text: str,
    lang: str = "en",
    paragraph_id: int = 0,
    text_pos: int = 1,
    para_pos: int = 1,
) -> SentenceUnit:
    return SentenceUnit(
        id=sid,
        text=text,
        tokens=tuple(tokenize(text, lang)),
        paragraph_id=paragraph_id,
        text_pos=text_pos,
        para_pos=para_pos,
    )


def block(text: str, **kwargs) -> dict:
    entry = {"text": text}
    entry.update(kwargs)
    return entry


def docjson_bytes(lang: str, blocks: list[dict]) -> bytes:
    return json.dumps({"lang": lang, "blocks": blocks}, ensure_ascii=False).encode("utf-8")


def random_sentence_text(rng: random.Random, lang: str = "uk", length: int | None = None) -> str:
    nouns, verbs = (UK_NOUNS, UK_VERBS) if lang == "uk" else (EN_NOUNS, EN_VERBS)
    length = length or rng.randint(4, 8)
    words = [rng.choice(nouns).capitalize(), rng.choice(verbs)]
    while len(words) < length:
        words.append(rng.choice(nouns))
    return " ".join(words) + "."


def structured_docjson(
    rng: random.Random,
    lang: str = "uk",
    with_conclusion: bool = False,
) -> tuple[bytes, dict]:
    """A docjson document exercising all five recognition rules.

    Block counts are chosen so the three header blocks sit in the first
    tercile, main paragraphs in the middle one and literature at the end.
    Returns the payload plus the expected recognition outcome.
    """
    total = rng.choice([7, 8, 9])
    # tercile sizes: N=7 -> (3,2,2), 8 -> (3,3,2), 9 -> (3,3,3)
    sizes = {7: (3, 2, 2), 8: (3, 3, 2), 9: (3, 3, 3)}[total]
    _, n_main, n_lit = sizes

    nouns = UK_NOUNS if lang == "uk" else EN_NOUNS
    title_words = rng.sample(nouns, 3)
    title = " ".join(w.capitalize() for w in title_words)
    names = ["Петренко О.", "Коваль І.", "Шевчук М.", "Bondar T."]
    authors = rng.sample(names, rng.randint(1, 2))
    keywords = rng.sample(nouns, 3)
    kw_trigger = "Ключові слова" if lang == "uk" else "Keywords"

    blocks = [
        block(title, align=rng.choice(["center", "right"]), bold=True),
        block("© " + ", ".join(authors), align=rng.choice(["center", "left"])),
        block(f"{kw_trigger}: " + ", ".join(keywords)),
    ]
    main_texts = []
    for i in range(n_main):
        n_sents = rng.randint(3, 5)
        sents = [random_sentence_text(rng, lang) for _ in range(n_sents)]
        if with_conclusion and i == n_main - 1:
            if lang == "uk":
                sents[0] = f"Висновки. Отже, {rng.choice(nouns)} {rng.choice(UK_VERBS)} {keywords[0]}."
            else:
                sents[0] = f"Conclusion. The {rng.choice(nouns)} {rng.choice(EN_VERBS)} {keywords[0]}."
        main_texts.append(" ".join(sents))
        blocks.append(block(main_texts[-1]))
    lit_texts = [f"{i + 1}. {random_sentence_text(rng, lang)}" for i in range(n_lit)]
    for text in lit_texts:
        blocks.append(block(text, italic=rng.choice([True, False])))

    expected = {
        "title": title,
        "authors": authors,
        "keywords": keywords,
        "main_texts": main_texts,
        "literature": lit_texts,
    }
    return docjson_bytes(lang, blocks), expected
