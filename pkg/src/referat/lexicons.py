"""Embedded word lists: stopwords, abbreviations, cue phrases, stem suffixes.

All lists are plain data so they can be dumped, edited, and loaded back from
files (one entry per line, ``#`` starts a comment).
"""

from __future__ import annotations

from pathlib import Path

from .errors import IoFailure

UK_STOPWORDS = frozenset(
    """
    і й та у в на з із зі до не що як це за від про але або так ні ж же б би
    чи коли де хто кого кому чому тут там уже вже ще тільки лише навіть дуже
    може можна треба щоб ніж при під над між через після перед без для по
    цей ця ці той ті цього цьому тому якщо бо аби хоч хоча однак проте все
    весь вся всі свого своя своє свої його її їх ми ви вони я ти він вона
    воно нас вас них мене тебе себе мій твій наш ваш один одна одне два три
    є був була було були бути буде будуть того тим тих також
    """.split()
)

EN_STOPWORDS = frozenset(
    """
    a an the and or but if while is are was were be been being have has had
    do does did will would shall should may might must can could of in on at
    by for with about against between into through during before after above
    below to from up down out off over under again further then once here
    there when where why how all any both each few more most other some such
    no nor not only own same so than too very just don now this that these
    those i me my we our you your he him his she her it its they them their
    what which who whom as
    """.split()
)

STOPWORDS = {"uk": UK_STOPWORDS, "en": EN_STOPWORDS}

# Tokens before a period that do not end a sentence.
UK_ABBREVIATIONS = frozenset(
    "див рис табл ст с ім напр р т тис млн млрд грн обл проф акад ін дод пп п см".split()
)
EN_ABBREVIATIONS = frozenset(
    "mr mrs ms dr prof st vs etc fig eq no vol pp cf al approx".split()
)

ABBREVIATIONS = {"uk": UK_ABBREVIATIONS, "en": EN_ABBREVIATIONS}

# Suffixes stripped during light stemming, longest first; applied only while
# the form stays >= 5 characters, repeated to a fixed point so normalization
# is idempotent.
STEM_SUFFIXES = {
    "uk": ("ами", "ою", "ах", "ів", "и", "і"),
    "en": ("ing", "es", "ed", "s"),
}

DEFAULT_CUE_PHRASES = (
    "Conclusion",
    "In conclusion",
    "In the end",
    "By the way",
    "To summarize",
    "Висновки",
    "Висновок",
    "Отже",
    "Таким чином",
    "Підсумовуючи",
    "Узагальнюючи",
)


def parse_wordlist(text: str) -> list[str]:
    """Parse a one-entry-per-line list; '#' comments and blanks ignored."""
    entries = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            entries.append(line)
    return entries


def load_wordlist(path: str | Path) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoFailure(f"cannot read word list {path}: {exc}") from exc
    return parse_wordlist(text)


def stopwords_for(lang: str) -> frozenset[str]:
    return STOPWORDS.get(lang, frozenset())


def abbreviations_for(lang: str) -> frozenset[str]:
    return ABBREVIATIONS.get(lang, frozenset())
