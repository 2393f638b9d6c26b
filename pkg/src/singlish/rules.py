"""Transliteration rule tables: loading, validation, and the two rule-driven
generators (standard romanization and ad-hoc variant spelling).

Rules live in TSV files (pattern, output, class, optional priority) so the
tables stay editable data rather than code.  Matching is greedy longest-match
with priority override; priority defaults to pattern length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    DuplicateRule,
    EmptyRuleSet,
    MalformedRuleFile,
    UnmappedGrapheme,
)
from . import script
from .script import Grapheme, GraphemeKind, SinhalaWord

VOWEL_LETTERS = frozenset("aeiou")


class RuleClass(Enum):
    VOWEL_CONSONANT = "VowelConsonant"
    HAL = "Hal"
    SPECIAL = "Special"
    ADHOC_CHAR_PATTERN = "AdhocCharPattern"
    ADHOC_VOWEL_COMBINATION = "AdhocVowelCombination"
    ADHOC_SPECIAL = "AdhocSpecial"


ADHOC_CLASSES = frozenset(
    {
        RuleClass.ADHOC_CHAR_PATTERN,
        RuleClass.ADHOC_VOWEL_COMBINATION,
        RuleClass.ADHOC_SPECIAL,
    }
)


class Direction(Enum):
    FORWARD = "Forward"
    REVERSE = "Reverse"
    ADHOC_GEN = "AdhocGen"


@dataclass(frozen=True)
class TransliterationRule:
    pattern: str
    output: str
    rule_class: RuleClass
    priority: int

    def sort_key(self):
        # higher priority first, then longer pattern, then stable name order
        return (-self.priority, -len(self.pattern), self.rule_class.value, self.pattern)


@dataclass(frozen=True)
class RuleSet:
    direction: Direction
    rules: tuple[TransliterationRule, ...]
    name: str = ""
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        index: dict[RuleClass, dict[str, TransliterationRule]] = {}
        maxlen: dict[RuleClass, int] = {}
        for rule in self.rules:
            bucket = index.setdefault(rule.rule_class, {})
            bucket[rule.pattern] = rule
            maxlen[rule.rule_class] = max(
                maxlen.get(rule.rule_class, 0), len(rule.pattern)
            )
        self._index["by_class"] = index
        self._index["maxlen"] = maxlen

    def by_class(self, rule_class: RuleClass) -> list[TransliterationRule]:
        return [r for r in self.rules if r.rule_class == rule_class]

    def counts(self) -> dict[RuleClass, int]:
        out: dict[RuleClass, int] = {}
        for r in self.rules:
            out[r.rule_class] = out.get(r.rule_class, 0) + 1
        return out

    def get(self, rule_class: RuleClass, pattern: str) -> Optional[TransliterationRule]:
        return self._index["by_class"].get(rule_class, {}).get(pattern)

    def match(
        self, text: str, pos: int, classes: Iterable[RuleClass]
    ) -> Optional[TransliterationRule]:
        """Longest match at ``pos`` among ``classes``; priority overrides
        length, remaining ties break by class then pattern name."""
        by_class = self._index["by_class"]
        maxlen = self._index["maxlen"]
        best: Optional[TransliterationRule] = None
        for cls in classes:
            bucket = by_class.get(cls)
            if not bucket:
                continue
            top = min(maxlen[cls], len(text) - pos)
            for ln in range(top, 0, -1):
                rule = bucket.get(text[pos : pos + ln])
                if rule is not None and (best is None or rule.sort_key() < best.sort_key()):
                    best = rule
        return best


def _infer_direction(rules: Sequence[TransliterationRule]) -> Direction:
    if any(r.rule_class in ADHOC_CLASSES for r in rules):
        return Direction.ADHOC_GEN
    if all(script.is_sinhala(r.pattern[0]) or r.pattern[0] in (script.ZWJ, script.ZWNJ)
           for r in rules):
        return Direction.FORWARD
    return Direction.REVERSE


def load_rules(
    path, direction: Optional[Direction] = None, name: Optional[str] = None
) -> RuleSet:
    """Parse and validate a TSV rule file.

    Format, one rule per line: ``pattern<TAB>output<TAB>class[<TAB>priority]``.
    Lines starting with ``#`` and blank lines are skipped.  Output may be
    empty (deletion / suppression rules).
    """
    path = Path(path)
    rules: list[TransliterationRule] = []
    seen: set[tuple[str, RuleClass]] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) not in (3, 4):
                raise MalformedRuleFile(
                    str(path), line_no, f"expected 3 or 4 tab-separated fields, got {len(cols)}"
                )
            pattern, output, class_name = cols[0], cols[1], cols[2]
            if not pattern:
                raise MalformedRuleFile(str(path), line_no, "empty pattern")
            try:
                rule_class = RuleClass(class_name)
            except ValueError:
                raise MalformedRuleFile(
                    str(path), line_no, f"unknown rule class {class_name!r}"
                ) from None
            if len(cols) == 4:
                try:
                    priority = int(cols[3])
                except ValueError:
                    raise MalformedRuleFile(
                        str(path), line_no, f"priority is not an integer: {cols[3]!r}"
                    ) from None
            else:
                priority = len(pattern)
            key = (pattern, rule_class)
            if key in seen:
                raise DuplicateRule(pattern, rule_class.value)
            seen.add(key)
            rules.append(TransliterationRule(pattern, output, rule_class, priority))
    if not rules:
        raise EmptyRuleSet(str(path))
    rules.sort(key=TransliterationRule.sort_key)
    return RuleSet(
        direction=direction or _infer_direction(rules),
        rules=tuple(rules),
        name=name or path.stem,
    )


# --- standard romanization (Sinhala -> Latin) --------------------------------

def romanize_standard(word, rules: RuleSet) -> str:
    """Romanize one Sinhala word grapheme by grapheme.

    Bare consonants voice the inherent vowel ("a"); a vowel sign appends the
    matching Hal-class suffix; hal units append nothing.  Any grapheme the
    table does not cover raises rather than passing silently.
    """
    if rules.direction != Direction.FORWARD:
        raise ValueError("romanize_standard requires a Forward rule set")
    out: list[str] = []
    for g in script.segment(str(word)):
        if g.base in (script.ZWJ, script.ZWNJ):
            continue  # joiners shape conjunct rendering, not pronunciation
        base_rule = rules.get(RuleClass.VOWEL_CONSONANT, g.base)
        if g.kind == GraphemeKind.CONSONANT_CLUSTER and base_rule is not None:
            out.append(base_rule.output)
            if g.hal:
                pass
            elif g.vowel_sign is not None:
                sign_rule = rules.get(RuleClass.HAL, g.vowel_sign)
                if sign_rule is None:
                    raise UnmappedGrapheme(g.serialize())
                out.append(sign_rule.output)
            else:
                out.append("a")
        elif g.kind == GraphemeKind.INDEPENDENT_VOWEL and base_rule is not None:
            out.append(base_rule.output)
        else:
            special = rules.get(RuleClass.SPECIAL, g.base)
            if special is None:
                raise UnmappedGrapheme(g.serialize())
            out.append(special.output)
    return "".join(out)


# --- ad-hoc variant generation ----------------------------------------------

@dataclass(frozen=True)
class Site:
    """One applicable rewrite: ``rule`` matched at [start, end)."""

    rule: TransliterationRule
    start: int
    end: int

    def overlaps(self, other: "Site") -> bool:
        return self.start < other.end and other.start < self.end

    def sort_key(self):
        return (self.start, self.end, self.rule.rule_class.value, self.rule.pattern)


def _is_vowel_deletion(rule: TransliterationRule) -> bool:
    return rule.output == "" and all(c in VOWEL_LETTERS for c in rule.pattern)


def find_sites(romanized: str, profile: RuleSet) -> list[Site]:
    """Every position where an ad-hoc rule could rewrite the input.

    Vowel deletions never apply at position 0: shorthand typing drops
    interior and final vowels but keeps the word's opening sound.
    """
    sites: list[Site] = []
    for rule in profile.rules:
        start = romanized.find(rule.pattern)
        while start != -1:
            if not (_is_vowel_deletion(rule) and start == 0):
                sites.append(Site(rule, start, start + len(rule.pattern)))
            start = romanized.find(rule.pattern, start + 1)
    sites.sort(key=Site.sort_key)
    return sites


def apply_sites(romanized: str, sites: Sequence[Site]) -> str:
    """Apply pairwise non-overlapping sites; also the trace replayer."""
    ordered = sorted(sites, key=lambda s: s.start)
    for a, b in zip(ordered, ordered[1:]):
        if a.overlaps(b):
            raise ValueError(f"overlapping sites at {a.start} and {b.start}")
    out = romanized
    for site in reversed(ordered):
        out = out[: site.start] + site.rule.output + out[site.end :]
    return out


def _greedy_disjoint(sites: list[Site]) -> list[Site]:
    chosen: list[Site] = []
    cursor = 0
    for site in sites:  # already sorted by position
        if site.start >= cursor:
            chosen.append(site)
            cursor = site.end
    return chosen


# Specials that simplify spelling without dropping letters wholesale; these
# combine with digraph/doubled-letter reductions into one writing style.
_SIMPLIFY_SPECIALS = frozenset({"'", "aae", "yi", "x", "w"})


def _is_simplify(site: Site) -> bool:
    rule = site.rule
    if rule.rule_class == RuleClass.ADHOC_VOWEL_COMBINATION:
        return True
    if rule.rule_class == RuleClass.ADHOC_CHAR_PATTERN and rule.output != "":
        return True
    if rule.rule_class == RuleClass.ADHOC_SPECIAL and rule.pattern in _SIMPLIFY_SPECIALS:
        return True
    return False


def generate_adhoc_variants_traced(
    romanized: str, profile: RuleSet, limit: int = 64
) -> list[tuple[str, tuple[Site, ...]]]:
    """Variants with the site subsets that produced them.

    Order: the unmodified input; the two bundled writing styles (simplified
    spelling, vowel-dropped skeleton); then site subsets breadth-first by
    subset size.  The bundles ride ahead of the subset sweep so that deeply
    rewritten but realistic forms survive a small ``limit``.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if profile.direction != Direction.ADHOC_GEN:
        raise ValueError("variant generation requires an AdhocGen rule set")
    sites = find_sites(romanized, profile)

    out: list[tuple[str, tuple[Site, ...]]] = []
    seen: set[str] = set()

    def emit(subset: Sequence[Site]) -> bool:
        variant = apply_sites(romanized, subset)
        if variant not in seen:
            seen.add(variant)
            out.append((variant, tuple(sorted(subset, key=Site.sort_key))))
        return len(out) >= limit

    if emit(()):
        return out

    simplify = _greedy_disjoint([s for s in sites if _is_simplify(s)])
    if simplify and emit(simplify):
        return out
    skeleton = [
        s for s in sites if _is_vowel_deletion(s.rule) and len(s.rule.pattern) == 1
    ]
    if skeleton and emit(skeleton):
        return out

    for size in range(1, len(sites) + 1):
        emitted_this_size = False
        for combo in itertools.combinations(sites, size):
            ok = all(
                not a.overlaps(b) for a, b in itertools.combinations(combo, 2)
            )
            if not ok:
                continue
            emitted_this_size = True
            if emit(combo):
                return out
        if not emitted_this_size:
            break
    return out


def generate_adhoc_variants(
    romanized: str, profile: RuleSet, limit: int = 64
) -> list[str]:
    """Up to ``limit`` distinct ad-hoc spellings, unmodified input included,
    in a deterministic order."""
    return [v for v, _ in generate_adhoc_variants_traced(romanized, profile, limit)]


def build_adhoc_lexicon(
    sinhala_words: Iterable,
    forward: RuleSet,
    profile: RuleSet,
    limit: int = 64,
    frequencies: Optional[Mapping[str, int]] = None,
):
    """Map every generated spelling (standard form included) to its source
    word(s).  A spelling shared by several sources keeps all of them; that
    collision set is exactly what disambiguation later resolves."""
    from .lexicon import Lexicon

    lex = Lexicon()
    freqs = frequencies or {}
    for word in sinhala_words:
        surface = str(word)
        rom = romanize_standard(surface, forward)
        if not rom:
            continue
        freq = freqs.get(surface, 1)
        for variant in generate_adhoc_variants(rom, profile, limit):
            if variant:
                lex.add(variant, surface, freq)
    return lex
