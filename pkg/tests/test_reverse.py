import random

import pytest
from hypothesis import given, settings, strategies as st

from singlish.engine import load_seed_words
from singlish.errors import (
    CoverageGap,
    NonAlphabetic,
    NotConsonantOnly,
    SkeletonTooLong,
    UnmappedSequence,
)
from singlish.reverse import (
    LetterValueTable,
    WordClass,
    check_coverage,
    classify_word,
    expand_skeleton,
    fuzzy_match,
    levenshtein,
    resolve_shorthand,
    similarity,
    skeletonize,
    transliterate_rule_based,
)
from singlish.rules import load_rules, romanize_standard

TABLE = LetterValueTable.default()

consonant_text = st.text(alphabet="kghcjtdnpbmyrlwsf", min_size=1, max_size=6)


class TestRuleBased:
    @pytest.mark.parametrize(
        "romanized,expected",
        [
            ("kiyanna", "කියන්න"),
            ("kohomada", "කොහොමද"),
            ("mama", "මම"),
            ("oyaata", "ඔයාට"),
            ("aadaraya", "ආදරය"),
        ],
    )
    def test_exemplars(self, reverse_rules, romanized, expected):
        assert str(transliterate_rule_based(romanized, reverse_rules)) == expected

    def test_unmapped_character_position(self, reverse_rules):
        with pytest.raises(UnmappedSequence) as err:
            transliterate_rule_based("k1d", reverse_rules)
        assert err.value.position == 1

    def test_trailing_consonant_gets_virama(self, reverse_rules):
        assert str(transliterate_rule_based("k", reverse_rules)) == "ක්"

    def test_round_trip_on_seed_sample(self, forward_rules, reverse_rules, seed_path):
        words = load_seed_words(seed_path)
        sample = random.Random(7).sample(words, 150)
        for word in sample:
            romanized = romanize_standard(word, forward_rules)
            assert str(transliterate_rule_based(romanized, reverse_rules)) == str(word)


class TestCoverage:
    def test_shipped_seeds_covered(self, reverse_rules, seed_path):
        check_coverage(reverse_rules, load_seed_words(seed_path))

    def test_gap_raises_with_char_identity(self, tmp_path):
        p = tmp_path / "tiny.tsv"
        p.write_text("ka\tක\tVowelConsonant\nk\tක්\tHal\n", encoding="utf-8")
        tiny = load_rules(p)
        with pytest.raises(CoverageGap) as err:
            check_coverage(tiny, ["කම"])
        assert "ම" in str(err.value)


class TestSkeleton:
    def test_khmd_expansion(self):
        candidates = expand_skeleton("khmd", TABLE, 4096)
        assert len(candidates) == 2401
        assert "kohomada" in candidates

    def test_expansion_is_deterministic(self):
        assert expand_skeleton("khmd", TABLE, 4096) == expand_skeleton(
            "khmd", TABLE, 4096
        )

    def test_truncates_at_limit(self):
        assert len(expand_skeleton("khmdk", TABLE, 100)) == 100

    def test_too_long_raises(self):
        with pytest.raises(SkeletonTooLong):
            expand_skeleton("k" * 10, TABLE, 4096)

    @given(consonant_text)
    @settings(max_examples=40)
    def test_every_expansion_shares_the_skeleton(self, word):
        for candidate in expand_skeleton(word, TABLE, 256):
            assert skeletonize(candidate, TABLE) == word

    def test_skeletonize(self):
        assert skeletonize("kohomada", TABLE) == "khmd"
        assert skeletonize("bdu", TABLE) == "bd"


class TestClassify:
    def test_consonant_only(self):
        assert classify_word("khmd", TABLE) is WordClass.CONSONANT_ONLY

    def test_vowel_rich(self):
        assert classify_word("kiyanna", TABLE) is WordClass.VOWEL_RICH

    def test_non_alphabetic(self):
        with pytest.raises(NonAlphabetic):
            classify_word("k2d", TABLE)

    @given(consonant_text)
    def test_skeletons_always_consonant_only(self, word):
        assert classify_word(word, TABLE) is WordClass.CONSONANT_ONLY


class TestSimilarity:
    def test_identity(self):
        assert similarity("kohomada", "kohomada") == 1.0

    def test_known_value(self):
        # one deletion against length 8
        assert similarity("kohomada", "kohomda") == 0.875

    def test_empty_pair(self):
        assert similarity("", "") == 1.0

    def test_levenshtein_classic(self):
        assert levenshtein("kitten", "sitting") == 3

    @given(st.text(max_size=10), st.text(max_size=10))
    def test_bounds(self, a, b):
        s = similarity(a, b)
        assert 0.0 <= s <= 1.0
        assert (s == 1.0) == (a == b)

    @given(st.text(max_size=8), st.text(max_size=8))
    def test_symmetry(self, a, b):
        assert levenshtein(a, b) == levenshtein(b, a)


class TestResolveShorthand:
    def test_khmd_exact_hit(self, engine):
        hits = resolve_shorthand("khmd", engine.lexicon, TABLE)
        assert hits and hits[0][1] == 1.0
        assert engine.lexicon.lookup(hits[0][0]).top == "කොහොමද"

    def test_vowel_rich_rejected(self, engine):
        with pytest.raises(NotConsonantOnly):
            resolve_shorthand("kiyanna", engine.lexicon, TABLE)

    def test_fail_open_on_garbage(self, engine):
        assert resolve_shorthand("qqqq", engine.lexicon, TABLE) == []

    def test_long_skeleton_goes_fuzzy(self, engine):
        # above the expansion cap the resolver must still answer, via the
        # skeleton-index fuzzy path, without raising
        hits = resolve_shorthand("k" * 12, engine.lexicon, TABLE)
        assert isinstance(hits, list)

    def test_ranked_by_frequency_then_key(self, engine):
        hits = resolve_shorthand("khmd", engine.lexicon, TABLE)
        freqs = [engine.lexicon.entry_frequency(key) for key, _ in hits]
        assert freqs == sorted(freqs, reverse=True)


def test_fuzzy_match_respects_floor(engine):
    hits = fuzzy_match("kohomad", engine.lexicon, 0.8, 5)
    assert all(score >= 0.8 for _, score in hits)
    assert any(key == "kohomada" for key, _ in hits)
