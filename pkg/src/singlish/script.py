"""Sinhala script primitives: character classes, grapheme segmentation, tokenizing.

The Sinhala block occupies U+0D80..U+0DFF.  A rendered "letter" is usually a
consonant plus one dependent mark (a vowel sign, or the al-lakuna U+0DCA that
suppresses the inherent vowel), so segmentation fuses exactly one trailing
mark onto a consonant.  Anything outside the block passes through untouched.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

BLOCK_START = 0x0D80
BLOCK_END = 0x0DFF

VIRAMA = "්"          # al-lakuna
ANUSVARA = "ං"        # binduva
VISARGA = "ඃ"
CANDRABINDU = "ඁ"
ZWJ = "‍"
ZWNJ = "‌"

# 0DB2, 0DBC, 0DBE, 0DBF are unassigned inside the consonant range.
_CONSONANT_GAPS = {0x0DB2, 0x0DBC, 0x0DBE, 0x0DBF}

CONSONANTS = frozenset(
    chr(cp) for cp in range(0x0D9A, 0x0DC7) if cp not in _CONSONANT_GAPS
)

INDEPENDENT_VOWELS = frozenset(chr(cp) for cp in range(0x0D85, 0x0D97))

# Dependent vowel signs.  0DD5 and 0DD7 are unassigned; the two-part signs
# (0DDA, 0DDC..0DDE) are single codepoints after NFC.
VOWEL_SIGNS = frozenset(
    chr(cp)
    for cp in range(0x0DCF, 0x0DE0)
    if cp not in (0x0DD5, 0x0DD7)
) | {"ෲ", "ෳ"}

MODIFIERS = frozenset({ANUSVARA, VISARGA, CANDRABINDU})

DEPENDENTS = VOWEL_SIGNS | {VIRAMA}

# Each dependent sign paired with the independent vowel it voices.  Used to
# turn a standalone-vowel rule into its post-consonant attachment and back.
INDEPENDENT_TO_SIGN = {
    "අ": "",         # අ is the inherent vowel: no mark
    "ආ": "ා",   # ආ -> ා
    "ඇ": "ැ",   # ඇ -> ැ
    "ඈ": "ෑ",   # ඈ -> ෑ
    "ඉ": "ි",   # ඉ -> ි
    "ඊ": "ී",   # ඊ -> ී
    "උ": "ු",   # උ -> ු
    "ඌ": "ූ",   # ඌ -> ූ
    "ඍ": "ෘ",   # ඍ -> ෘ
    "ඎ": "ෲ",   # ඎ -> ෲ
    "ඏ": "ෟ",   # ඏ -> ෟ
    "ඐ": "ෳ",   # ඐ -> ෳ
    "එ": "ෙ",   # එ -> ෙ
    "ඒ": "ේ",   # ඒ -> ේ
    "ඓ": "ෛ",   # ඓ -> ෛ
    "ඔ": "ො",   # ඔ -> ො
    "ඕ": "ෝ",   # ඕ -> ෝ
    "ඖ": "ෞ",   # ඖ -> ෞ
}

SIGN_TO_INDEPENDENT = {s: v for v, s in INDEPENDENT_TO_SIGN.items() if s}


class GraphemeKind(Enum):
    INDEPENDENT_VOWEL = "IndependentVowel"
    CONSONANT_CLUSTER = "ConsonantCluster"
    SIGN = "Sign"
    OTHER = "Other"


@dataclass(frozen=True)
class Grapheme:
    """One orthographic unit.  Serialization is exact: base + vowel_sign +
    virama reproduce the scalars the unit was parsed from."""

    kind: GraphemeKind
    base: str
    vowel_sign: Optional[str] = None
    hal: bool = False

    def __post_init__(self):
        if self.hal and self.vowel_sign:
            raise ValueError("a unit cannot carry both a vowel sign and hal")

    @classmethod
    def of(cls, text: str) -> "Grapheme":
        """Parse a single unit from raw scalars."""
        units = segment(text)
        if len(units) != 1:
            raise ValueError(f"{text!r} is not a single grapheme")
        return units[0]

    def serialize(self) -> str:
        s = self.base
        if self.vowel_sign:
            s += self.vowel_sign
        if self.hal:
            s += VIRAMA
        return s

    def __str__(self) -> str:
        return self.serialize()


def classify_grapheme(g: Grapheme) -> GraphemeKind:
    """Recompute the unit's class from its base scalar."""
    head = g.base[0]
    if not is_sinhala(head):
        return GraphemeKind.OTHER
    if head in CONSONANTS:
        return GraphemeKind.CONSONANT_CLUSTER
    if head in INDEPENDENT_VOWELS:
        return GraphemeKind.INDEPENDENT_VOWEL
    return GraphemeKind.SIGN


class SinhalaWord(str):
    """A whitespace-free Sinhala string with grapheme access.

    Subclassing str keeps comparisons and hashing interoperable with plain
    surface strings throughout the pipeline.
    """

    __slots__ = ()

    def __new__(cls, surface: str = ""):
        if any(ch.isspace() for ch in surface):
            raise ValueError(f"word may not contain whitespace: {surface!r}")
        return super().__new__(cls, surface)

    @property
    def surface(self) -> str:
        return str(self)

    @property
    def graphemes(self) -> list[Grapheme]:
        return segment(self)


def is_sinhala(ch: str) -> bool:
    return BLOCK_START <= ord(ch) <= BLOCK_END


def segment(text: str) -> list[Grapheme]:
    """Split ``text`` into graphemes.

    A consonant absorbs at most one immediately following dependent mark;
    ZWJ conjunct joiners are not fused, which keeps the round-trip
    ``"".join(g.serialize() for g in segment(s)) == s`` unconditional.
    No normalization happens here; callers normalize at input boundaries.
    """
    out: list[Grapheme] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in CONSONANTS:
            if i + 1 < n and text[i + 1] in DEPENDENTS:
                mark = text[i + 1]
                if mark == VIRAMA:
                    out.append(Grapheme(GraphemeKind.CONSONANT_CLUSTER, ch, None, True))
                else:
                    out.append(Grapheme(GraphemeKind.CONSONANT_CLUSTER, ch, mark))
                i += 2
            else:
                out.append(Grapheme(GraphemeKind.CONSONANT_CLUSTER, ch))
                i += 1
        elif ch in INDEPENDENT_VOWELS:
            out.append(Grapheme(GraphemeKind.INDEPENDENT_VOWEL, ch))
            i += 1
        elif is_sinhala(ch):
            # standalone sign, modifier, digit or in-block punctuation
            out.append(Grapheme(GraphemeKind.SIGN, ch))
            i += 1
        else:
            out.append(Grapheme(GraphemeKind.OTHER, ch))
            i += 1
    return out


def join(graphemes: list[Grapheme]) -> str:
    return "".join(g.serialize() for g in graphemes)


@dataclass(frozen=True)
class Token:
    """A whitespace-free unit of running text plus whatever surrounded it.

    ``lead`` and ``trail`` keep peeled punctuation so the original line can
    be reassembled; ``body`` is what transliteration operates on.
    """

    lead: str
    body: str
    trail: str

    @property
    def text(self) -> str:
        return self.lead + self.body + self.trail


def _is_peelable(ch: str) -> bool:
    # Apostrophes are load-bearing in romanizations (t', ru') so they stay.
    if ch == "'":
        return False
    return unicodedata.category(ch)[0] in ("P", "S")


def split_token(chunk: str) -> Token:
    """Peel leading/trailing punctuation and symbols off a whitespace chunk."""
    start = 0
    end = len(chunk)
    while start < end and _is_peelable(chunk[start]):
        start += 1
    while end > start and _is_peelable(chunk[end - 1]):
        end -= 1
    return Token(chunk[:start], chunk[start:end], chunk[end:])


def tokenize(line: str) -> list[Token]:
    """Whitespace-split ``line`` into tokens with punctuation peeled.

    Sinhala combining marks are not word characters to ``re``'s ``\\w``, so
    tokenization goes by Unicode category instead of regex word boundaries.
    """
    return [split_token(chunk) for chunk in line.split()]


def corpus_tokens(line: str) -> list[str]:
    """Flat token list with punctuation split off as its own tokens.

    Used identically on both sides of aligned corpora so that parallel
    punctuation keeps token positions aligned.
    """
    out: list[str] = []
    for tok in tokenize(line):
        if tok.lead:
            out.append(tok.lead)
        if tok.body:
            out.append(tok.body)
        if tok.trail:
            out.append(tok.trail)
    return out


def normalize(text: str) -> str:
    """Canonical composition; collapses split kombuva sequences (e.g. the
    pair U+0DD9 U+0DCF into U+0DDC) so segmentation sees one sign."""
    return unicodedata.normalize("NFC", text)


def sinhala_words(line: str) -> Iterator[SinhalaWord]:
    """Yield the Sinhala-script token bodies of ``line``, normalized."""
    for tok in tokenize(normalize(line)):
        if tok.body and all(is_sinhala(c) or c in (ZWJ, ZWNJ) for c in tok.body):
            yield SinhalaWord(tok.body)
