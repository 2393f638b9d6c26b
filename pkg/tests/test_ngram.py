import math

import pytest
from hypothesis import given, settings, strategies as st

from singlish.errors import (
    EmptyCorpus,
    InvalidDiscount,
    MisalignedPair,
    ModelFormatError,
    ModelVersionError,
)
from singlish.ngram import (
    END,
    AlignedCorpus,
    NgramLM,
    load_models,
    save_models,
    score_word,
    tag,
    train_lm,
    train_tagger,
)

D = 0.75


def lm_ab():
    return train_lm([["a", "b"], ["a", "c"]], discount=D)


class TestAlignedCorpus:
    def test_parses_and_lowercases(self):
        corpus = AlignedCorpus.from_lines(["Mama Gedara\tමම ගෙදර"])
        assert corpus.pairs == ((("mama", "gedara"), ("මම", "ගෙදර")),)

    def test_skips_comments_and_blanks(self):
        corpus = AlignedCorpus.from_lines(["# c", "", "a\tඅ"])
        assert len(corpus.pairs) == 1

    def test_misaligned_reports_line(self):
        with pytest.raises(MisalignedPair) as err:
            AlignedCorpus.from_lines(["a\tඅ", "a b c\tඅ ආ"])
        assert "2" in str(err.value)

    def test_wrong_field_count(self):
        with pytest.raises(MisalignedPair):
            AlignedCorpus.from_lines(["no tabs here"])

    def test_shipped_corpus_loads(self, engine):
        assert len(engine.corpus.pairs) > 50


class TestTagger:
    def test_reproduces_training_alignment(self):
        corpus = AlignedCorpus.from_lines(["mama gedara\tමම ගෙදර", "mama kanawa\tමම කනවා"])
        tagger = train_tagger(corpus)
        assert [str(t) for t in tag(tagger, ["mama", "gedara"])] == ["මම", "ගෙදර"]

    def test_trigram_overrides_unigram(self):
        # unigram majority for "x" is B; in the (p, q) context it was A
        corpus = AlignedCorpus.from_lines(
            ["p q x\tP Q A", "x\tB", "x\tB", "x\tB"]
        )
        tagger = train_tagger(corpus)
        assert str(tag(tagger, ["p", "q", "x"])[-1]) == "A"
        assert str(tag(tagger, ["x"])[0]) == "B"

    def test_bigram_backoff(self):
        corpus = AlignedCorpus.from_lines(["p x\tP A", "x\tB", "x\tB"])
        tagger = train_tagger(corpus)
        # unseen trigram context (z, p, x): bigram (p, x) answers
        assert str(tag(tagger, ["z", "p", "x"])[-1]) == "A"

    def test_unseen_token_is_none(self):
        corpus = AlignedCorpus.from_lines(["a\tඅ"])
        assert tag(train_tagger(corpus), ["zz"]) == [None]

    def test_tie_breaks_lexicographically(self):
        corpus = AlignedCorpus.from_lines(["x\tබ", "x\tඅ"])
        assert str(tag(train_tagger(corpus), ["x"])[0]) == "අ"

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            train_tagger(AlignedCorpus(()))

    @given(st.lists(st.sampled_from("abc"), min_size=1, max_size=6))
    def test_output_length_matches_input(self, tokens):
        corpus = AlignedCorpus.from_lines(["a b\tA B"])
        tagger = train_tagger(corpus)
        assert len(tag(tagger, tokens)) == len(tokens)


class TestLMProbabilities:
    def test_vocabulary_includes_end_marker(self):
        assert END in lm_ab().vocabulary

    def test_unigram_hand_computed(self):
        lm = lm_ab()
        # counts: a=2 b=1 c=1 </s>=2, total 6, 4 types, V=4
        total, types, v = 6, 4, 4
        reserved = D * types / total
        base = 1 / (v + 1)
        expected = (2 - D) / total + reserved * base
        assert math.isclose(lm.p_unigram("a"), expected, rel_tol=0, abs_tol=1e-12)
        assert math.isclose(lm.p_unigram("zz"), reserved * base, abs_tol=1e-12)

    def test_bigram_hand_computed(self):
        lm = lm_ab()
        # row for "a": {b:1, c:1}, marginal 2
        reserved = D * 2 / 2
        expected = (1 - D) / 2 + reserved * lm.p_unigram("b")
        assert math.isclose(lm.p_bigram("b", "a"), expected, abs_tol=1e-12)

    def test_unseen_context_backs_off(self):
        lm = lm_ab()
        assert lm.p_bigram("a", "never") == lm.p_unigram("a")
        assert lm.p_trigram("a", ("never", "ever")) == lm.p_unigram("a")

    def test_conditional_truncates_context(self):
        lm = lm_ab()
        long_left = ["x", "y", "a"]
        assert lm.conditional("b", long_left) == lm.p_trigram("b", ("y", "a"))

    def test_unknown_mass_positive(self):
        lm = lm_ab()
        assert lm.unknown_mass() > 0
        assert lm.unknown_mass(["a"]) > 0

    def test_invalid_discount(self):
        with pytest.raises(InvalidDiscount):
            train_lm([["a"]], discount=1.0)
        with pytest.raises(InvalidDiscount):
            train_lm([["a"]], discount=0.0)

    def test_empty_corpus(self):
        with pytest.raises(EmptyCorpus):
            train_lm([])

    @given(
        st.lists(
            st.lists(st.sampled_from("abcd"), min_size=1, max_size=5),
            min_size=1,
            max_size=8,
        )
    )
    @settings(max_examples=60)
    def test_distributions_sum_to_one(self, sentences):
        lm = train_lm(sentences)
        events = list(lm.vocabulary) + ["\x00unk\x00"]
        assert math.isclose(sum(lm.p_unigram(w) for w in events), 1.0, abs_tol=1e-9)
        for context in list(lm.bigrams)[:3]:
            total = sum(lm.p_bigram(w, context) for w in events)
            assert math.isclose(total, 1.0, abs_tol=1e-9)
        for context in list(lm.trigrams)[:3]:
            total = sum(lm.p_trigram(w, context) for w in events)
            assert math.isclose(total, 1.0, abs_tol=1e-9)


class TestScoreWord:
    def test_no_context_is_unigram(self):
        lm = lm_ab()
        assert score_word(lm, [], "a", []) == lm.p_unigram("a")

    def test_geometric_mean_of_both_sides(self):
        lm = lm_ab()
        forward = lm.conditional("a", [])
        backward = lm.conditional("b", ["a"])
        assert math.isclose(
            score_word(lm, [], "a", ["b"]), math.sqrt(forward * backward), abs_tol=1e-12
        )

    def test_left_context_feeds_follow_score(self):
        lm = lm_ab()
        forward = lm.conditional("a", ["x"])
        backward = lm.conditional("b", ["x", "a"])
        assert math.isclose(
            score_word(lm, ["x"], "a", ["b"]),
            math.sqrt(forward * backward),
            abs_tol=1e-12,
        )

    def test_always_positive(self):
        lm = lm_ab()
        assert score_word(lm, ["zz"], "qq", ["vv"]) > 0


class TestSerialization:
    def _models(self):
        corpus = AlignedCorpus.from_lines(["mama gedara\tමම ගෙදර", "mama yanawaa\tමම යනවා"])
        return train_tagger(corpus), train_lm(corpus.sinhala_sentences())

    def test_round_trip(self, tmp_path):
        tagger, lm = self._models()
        p = tmp_path / "m.bin"
        save_models(p, tagger, lm)
        tagger2, lm2 = load_models(p)
        assert tagger2.tables == tagger.tables
        assert lm2.unigrams == lm.unigrams
        assert lm2.discount == lm.discount
        assert lm2.p_bigram("ගෙදර", "මම") == lm.p_bigram("ගෙදර", "මම")

    def test_save_is_byte_deterministic(self, tmp_path):
        tagger, lm = self._models()
        p1, p2 = tmp_path / "a.bin", tmp_path / "b.bin"
        save_models(p1, tagger, lm)
        save_models(p2, tagger, lm)
        assert p1.read_bytes() == p2.read_bytes()

    def test_bad_magic(self, tmp_path):
        p = tmp_path / "m.bin"
        p.write_bytes(b"NOPE!" + b"\x01" + b"\x00" * 8)
        with pytest.raises(ModelFormatError):
            load_models(p)

    def test_bad_version(self, tmp_path):
        tagger, lm = self._models()
        p = tmp_path / "m.bin"
        save_models(p, tagger, lm)
        data = bytearray(p.read_bytes())
        data[5] = 99
        p.write_bytes(bytes(data))
        with pytest.raises(ModelVersionError):
            load_models(p)

    def test_truncated_payload(self, tmp_path):
        tagger, lm = self._models()
        p = tmp_path / "m.bin"
        save_models(p, tagger, lm)
        p.write_bytes(p.read_bytes()[:-10])
        with pytest.raises(ModelFormatError):
            load_models(p)
