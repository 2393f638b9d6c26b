"""Roman -> Sinhala engine.

Two paths live here.  The rule path consumes romanized input left to right
with longest-match rules: a consonant base binds the following vowel
spelling as a dependent sign (no vowel spelling at all yields the
al-lakuna).  The shorthand path handles consonant-only skeletons ("khmd"):
classify by letter values, insert template vowels at the gaps, then match
the candidates against the lexicon, exactly first and fuzzily after.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence
from weakref import WeakKeyDictionary

from . import script
from .errors import (
    CoverageGap,
    NonAlphabetic,
    NotConsonantOnly,
    SkeletonTooLong,
    UnmappedSequence,
)
from .rules import Direction, RuleClass, RuleSet
from .script import INDEPENDENT_TO_SIGN, VIRAMA, SinhalaWord

# --- rule-based transliteration ----------------------------------------------

_MAIN_CLASSES = (RuleClass.VOWEL_CONSONANT, RuleClass.SPECIAL)


class ReverseTransliterator:
    """Precomputed indexes over one validated Reverse rule set."""

    def __init__(self, rules: RuleSet):
        if rules.direction != Direction.REVERSE:
            raise ValueError("reverse transliteration requires a Reverse rule set")
        self.rules = rules
        # Vowel spellings attachable to a pending consonant: Hal rules map
        # straight to their sign; Special rules whose output is a standalone
        # vowel compose through the sign table.  Same pattern: Hal wins.
        attach: dict[str, str] = {}
        for rule in rules.by_class(RuleClass.SPECIAL):
            if len(rule.output) == 1 and rule.output in INDEPENDENT_TO_SIGN:
                attach[rule.pattern] = INDEPENDENT_TO_SIGN[rule.output]
        for rule in rules.by_class(RuleClass.HAL):
            attach[rule.pattern] = rule.output
        self._attach = attach
        self._attach_maxlen = max(map(len, attach), default=0)

    def _match_attachment(self, text: str, pos: int) -> Optional[tuple[str, str]]:
        top = min(self._attach_maxlen, len(text) - pos)
        for ln in range(top, 0, -1):
            sign = self._attach.get(text[pos : pos + ln])
            if sign is not None:
                return text[pos : pos + ln], sign
        return None

    def transliterate(self, word: str) -> SinhalaWord:
        out: list[str] = []
        i = 0
        n = len(word)
        while i < n:
            rule = self.rules.match(word, i, _MAIN_CLASSES)
            if rule is None:
                raise UnmappedSequence(word, i)
            i += len(rule.pattern)
            rep = rule.output
            if rep in script.CONSONANTS:
                hit = self._match_attachment(word, i)
                if hit is None:
                    out.append(rep + VIRAMA)
                else:
                    spelling, sign = hit
                    out.append(rep + sign)
                    i += len(spelling)
            else:
                out.append(rep)
        return SinhalaWord("".join(out))


def check_coverage(rules: RuleSet, words) -> None:
    """Verify every scalar in ``words`` is producible by some reverse rule.

    Guards lexicon builds: a seed word containing a character no rule output
    can ever emit would make its romanizations untransliterable, so fail at
    load time with the word and codepoint instead of mid-request.
    """
    if rules.direction != Direction.REVERSE:
        raise ValueError("coverage check requires a Reverse rule set")
    producible = {VIRAMA}
    for rule in rules.rules:
        producible.update(rule.output)
        if rule.output in INDEPENDENT_TO_SIGN:
            producible.update(INDEPENDENT_TO_SIGN[rule.output])
    for word in words:
        for ch in str(word):
            if ch not in producible:
                raise CoverageGap(
                    f"{word!r} contains U+{ord(ch):04X} {ch!r}, "
                    "which no reverse rule can produce"
                )


_transliterators: "WeakKeyDictionary[RuleSet, ReverseTransliterator]" = WeakKeyDictionary()


def transliterate_rule_based(word: str, rules: RuleSet) -> SinhalaWord:
    """Longest-match left-to-right transliteration of one romanized word.

    A trailing consonant with no vowel spelling receives the al-lakuna.
    Raises UnmappedSequence with the failing position when no rule applies.
    """
    engine = _transliterators.get(rules)
    if engine is None:
        engine = ReverseTransliterator(rules)
        _transliterators[rules] = engine
    return engine.transliterate(word)


# --- letter values and word classes -------------------------------------------

VOWEL_LETTERS = "aeiou"
_CONSONANT_LETTERS = "".join(
    c for c in "abcdefghijklmnopqrstuvwxyz" if c not in VOWEL_LETTERS
)


@dataclass(frozen=True)
class LetterValueTable:
    """Numeric letter codes; values at or below the threshold are vowels."""

    values: dict
    vowel_threshold: int

    def __post_init__(self):
        for ch in "abcdefghijklmnopqrstuvwxyz":
            if ch not in self.values:
                raise ValueError(f"letter {ch!r} has no value")
            low = self.values[ch] <= self.vowel_threshold
            if low != (ch in VOWEL_LETTERS):
                raise ValueError(f"letter {ch!r} on the wrong side of the threshold")

    @classmethod
    def default(cls) -> "LetterValueTable":
        values = {ch: i + 1 for i, ch in enumerate(VOWEL_LETTERS)}
        values.update({ch: 10 + i for i, ch in enumerate(_CONSONANT_LETTERS)})
        return cls(values=values, vowel_threshold=5)

    def is_vowel(self, ch: str) -> bool:
        return self.values[ch] <= self.vowel_threshold


class WordClass(Enum):
    CONSONANT_ONLY = "ConsonantOnly"
    MIXED = "Mixed"
    VOWEL_RICH = "VowelRich"


def classify_word(
    word: str, table: LetterValueTable, vowel_rich_ratio: float = 0.35
) -> WordClass:
    """Three-way split by vowel content; only ConsonantOnly changes routing
    downstream, the other two are kept apart for reporting."""
    if not word or any(ch not in table.values for ch in word):
        raise NonAlphabetic(word)
    vowels = sum(1 for ch in word if table.is_vowel(ch))
    if vowels == 0:
        return WordClass.CONSONANT_ONLY
    if vowels / len(word) >= vowel_rich_ratio:
        return WordClass.VOWEL_RICH
    return WordClass.MIXED


# --- skeleton expansion --------------------------------------------------------

VOWEL_TEMPLATE = ("a", "o", "e", "i", "u", "aa")
MAX_SKELETON = 9


def expand_skeleton(
    word: str, table: LetterValueTable, max_candidates: int = 4096
) -> list[str]:
    """Candidate spellings for a consonant skeleton.

    Vowels from the template go into inter-consonant gaps and the word-final
    gap, never before the first letter.  Candidates come out breadth-first by
    number of insertions (the bare skeleton first), gaps chosen left to
    right, template vowels tried in priority order; truncated at
    ``max_candidates``.  Deleting the vowels of any candidate restores the
    input.
    """
    if len(word) > MAX_SKELETON:
        raise SkeletonTooLong(word, MAX_SKELETON)
    if classify_word(word, table) != WordClass.CONSONANT_ONLY:
        raise NotConsonantOnly(word)
    gaps = list(range(1, len(word) + 1))
    out: list[str] = []
    for size in range(0, len(gaps) + 1):
        for subset in itertools.combinations(gaps, size):
            for fill in itertools.product(VOWEL_TEMPLATE, repeat=size):
                parts: list[str] = []
                prev = 0
                for gap, vowel in zip(subset, fill):
                    parts.append(word[prev:gap])
                    parts.append(vowel)
                    prev = gap
                parts.append(word[prev:])
                out.append("".join(parts))
                if len(out) >= max_candidates:
                    return out
    return out


def skeletonize(word: str, table: LetterValueTable) -> str:
    """Drop vowel letters; anything outside a-z (apostrophes) is kept."""
    return "".join(
        ch for ch in word if ch not in table.values or not table.is_vowel(ch)
    )


# --- edit distance and fuzzy matching ------------------------------------------

def levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def similarity(a: str, b: str) -> float:
    """1 - normalized edit distance; 1.0 iff equal, symmetric."""
    if a == b:
        return 1.0
    return 1.0 - levenshtein(a, b) / max(len(a), len(b))


def fuzzy_match(
    candidate: str,
    lexicon,
    min_similarity: float = 0.8,
    k: int = 5,
) -> list[tuple[str, float]]:
    """Lexicon keys within the similarity floor, best first; ties break by
    entry frequency (descending) then key order."""
    if not 0 <= min_similarity <= 1:
        raise ValueError("min_similarity must lie in [0, 1]")
    results: list[tuple[str, float]] = []
    # keys shorter/longer than the allowed edit budget cannot clear the floor
    for key in lexicon.keys():
        longer = max(len(key), len(candidate))
        if longer and abs(len(key) - len(candidate)) / longer > 1 - min_similarity:
            continue
        score = similarity(candidate, key)
        if score >= min_similarity:
            results.append((key, score))
    results.sort(key=lambda kv: (-kv[1], -lexicon.entry_frequency(kv[0]), kv[0]))
    return results[:k]


# --- the shorthand pipeline ----------------------------------------------------

def _best_template_fill(skeleton: str, key: str, table: LetterValueTable) -> str:
    """The expansion of ``skeleton`` closest to ``key`` when both share a
    consonant skeleton: copy each of the key's vowel runs where the template
    has it, otherwise substitute the nearest template vowel."""
    parts: list[str] = []
    run = ""
    out_started = False
    for ch in key:
        if ch in table.values and table.is_vowel(ch):
            run += ch
        else:
            if run and out_started:
                parts.append(_nearest_template(run))
            run = ""
            parts.append(ch)
            out_started = True
    if run and out_started:
        parts.append(_nearest_template(run))
    return "".join(parts)


def _nearest_template(run: str) -> str:
    options = sorted(
        VOWEL_TEMPLATE + ("",), key=lambda t: (levenshtein(run, t), t)
    )
    return options[0]


def resolve_shorthand(
    word: str,
    lexicon,
    table: Optional[LetterValueTable] = None,
    max_candidates: int = 4096,
    min_similarity: float = 0.8,
    k: int = 5,
) -> list[tuple[str, float]]:
    """Rank lexicon keys for a consonant-only shorthand.

    Expansion candidates that are themselves lexicon keys win outright
    (similarity 1.0).  Failing that, keys sharing the input's consonant
    skeleton are scored fuzzily against the closest template expansion.
    Returns [] when nothing clears the floor; callers fail open.
    """
    table = table or LetterValueTable.default()
    if classify_word(word, table) != WordClass.CONSONANT_ONLY:
        raise NotConsonantOnly(word)
    if len(word) > MAX_SKELETON:
        return fuzzy_match(word, lexicon, min_similarity, k)

    candidates = expand_skeleton(word, table, max_candidates)
    exact = [c for c in candidates if lexicon.lookup(c) is not None]
    if exact:
        exact.sort(key=lambda key: (-lexicon.entry_frequency(key), key))
        return [(key, 1.0) for key in exact[:k]]

    scored: dict[str, float] = {}
    for key in lexicon.keys_with_skeleton(skeletonize(word, table)):
        best = similarity(key, _best_template_fill(word, key, table))
        if best >= min_similarity:
            scored[key] = best
    ranked = sorted(
        scored.items(),
        key=lambda kv: (-kv[1], -lexicon.entry_frequency(kv[0]), kv[0]),
    )
    return ranked[:k]
