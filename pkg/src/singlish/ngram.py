"""N-gram sequence models over aligned romanized/Sinhala text.

Two models share the counting machinery: a backoff tagger (trigram, bigram,
unigram, then a None marker the rule engine handles) mapping romanized
tokens to Sinhala tokens, and a language model over Sinhala tokens with
interpolated absolute discounting that serves as the contextual scorer.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from . import script
from .errors import (
    EmptyCorpus,
    InvalidDiscount,
    MisalignedPair,
    ModelFormatError,
    ModelVersionError,
)
from .script import SinhalaWord

START = "<s>"
END = "</s>"


@dataclass(frozen=True)
class AlignedCorpus:
    """Sentence pairs tokenized identically on both sides."""

    pairs: tuple  # ((romanized tokens, sinhala tokens), ...)

    def __post_init__(self):
        for i, (rom, sin) in enumerate(self.pairs):
            if len(rom) != len(sin):
                raise MisalignedPair(i, f"{len(rom)} tokens vs {len(sin)}")

    @classmethod
    def from_lines(cls, lines: Iterable[str], source: str = "<corpus>") -> "AlignedCorpus":
        pairs = []
        for line_no, raw in enumerate(lines, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise MisalignedPair(line_no, f"{source}: expected 2 fields, got {len(cols)}")
            rom = tuple(script.corpus_tokens(cols[0].lower()))
            sin = tuple(script.corpus_tokens(script.normalize(cols[1])))
            if len(rom) != len(sin):
                raise MisalignedPair(
                    line_no, f"{source}: {len(rom)} romanized tokens vs {len(sin)} Sinhala"
                )
            pairs.append((rom, sin))
        return cls(tuple(pairs))

    @classmethod
    def load_tsv(cls, path) -> "AlignedCorpus":
        path = Path(path)
        with open(path, encoding="utf-8") as fh:
            return cls.from_lines(fh, source=str(path))

    def sinhala_sentences(self) -> list[list[str]]:
        return [list(sin) for _, sin in self.pairs]


# --- backoff tagger -----------------------------------------------------------

@dataclass(frozen=True)
class NgramTagger:
    """Per order 1..3: (n-1 romanized context tokens + current token) -> the
    most frequent Sinhala token, ties broken lexicographically."""

    tables: dict  # {order: {key tuple: sinhala surface}}
    order: int = 3

    def contexts(self, order: int) -> dict:
        return self.tables.get(order, {})


def train_tagger(corpus: AlignedCorpus) -> NgramTagger:
    if not corpus.pairs:
        raise EmptyCorpus("cannot train a tagger on an empty corpus")
    counts: dict[int, dict[tuple, dict[str, int]]] = {1: {}, 2: {}, 3: {}}
    for rom, sin in corpus.pairs:
        padded = (START, START) + tuple(rom)
        for i, token in enumerate(rom):
            target = sin[i]
            for order in (1, 2, 3):
                key = padded[2 + i - (order - 1) : 2 + i + 1]
                bucket = counts[order].setdefault(key, {})
                bucket[target] = bucket.get(target, 0) + 1
    tables: dict[int, dict[tuple, str]] = {}
    for order, table in counts.items():
        tables[order] = {
            key: min(opts.items(), key=lambda it: (-it[1], it[0]))[0]
            for key, opts in table.items()
        }
    return NgramTagger(tables=tables)


def tag(tagger: NgramTagger, tokens: Sequence[str]) -> list[Optional[SinhalaWord]]:
    """Trigram hit first, then bigram, then unigram, else None (the failure
    marker a rule fallback picks up).  Output length equals input length."""
    padded = (START, START) + tuple(tokens)
    out: list[Optional[SinhalaWord]] = []
    for i in range(len(tokens)):
        hit: Optional[str] = None
        for order in (3, 2, 1):
            key = padded[2 + i - (order - 1) : 2 + i + 1]
            hit = tagger.contexts(order).get(key)
            if hit is not None:
                break
        out.append(SinhalaWord(hit) if hit is not None else None)
    return out


# --- language model ------------------------------------------------------------

@dataclass(frozen=True)
class NgramLM:
    """Interpolated absolute discounting over Sinhala tokens, orders 1..3.

    The vocabulary includes the sentence-end marker so every conditional
    distribution (vocabulary plus one unknown-word event) sums to one.
    """

    unigrams: dict
    bigrams: dict   # {context token: {token: count}}
    trigrams: dict  # {(u, v): {token: count}}
    discount: float
    _derived: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        total = sum(self.unigrams.values())
        vocab = frozenset(self.unigrams)
        self._derived["total"] = total
        self._derived["types"] = len(self.unigrams)
        self._derived["vocab"] = vocab
        self._derived["bi_marginal"] = {
            u: sum(row.values()) for u, row in self.bigrams.items()
        }
        self._derived["tri_marginal"] = {
            uv: sum(row.values()) for uv, row in self.trigrams.items()
        }

    @property
    def vocabulary(self) -> frozenset:
        return self._derived["vocab"]

    def p_unigram(self, word: str) -> float:
        total = self._derived["total"]
        types = self._derived["types"]
        vocab_size = len(self.vocabulary)
        reserved = self.discount * types / total
        base = 1.0 / (vocab_size + 1)
        return max(self.unigrams.get(word, 0) - self.discount, 0.0) / total + reserved * base

    def p_bigram(self, word: str, context: str) -> float:
        row = self.bigrams.get(context)
        if not row:
            return self.p_unigram(word)
        marginal = self._derived["bi_marginal"][context]
        reserved = self.discount * len(row) / marginal
        return (
            max(row.get(word, 0) - self.discount, 0.0) / marginal
            + reserved * self.p_unigram(word)
        )

    def p_trigram(self, word: str, context: tuple) -> float:
        row = self.trigrams.get(context)
        if not row:
            return self.p_bigram(word, context[1])
        marginal = self._derived["tri_marginal"][context]
        reserved = self.discount * len(row) / marginal
        return (
            max(row.get(word, 0) - self.discount, 0.0) / marginal
            + reserved * self.p_bigram(word, context[1])
        )

    def conditional(self, word: str, context: Sequence[str]) -> float:
        context = tuple(context)[-2:]
        if len(context) == 2:
            return self.p_trigram(word, context)
        if len(context) == 1:
            return self.p_bigram(word, context[0])
        return self.p_unigram(word)

    def unknown_mass(self, context: Sequence[str] = ()) -> float:
        """Probability assigned to an out-of-vocabulary token in ``context``."""
        return self.conditional("\x00oov\x00", context)

    def score_word(self, left: Sequence[str], word: str, right: Sequence[str]) -> float:
        """The contextual-scorer contract; see the module-level function."""
        return score_word(self, left, word, right)


def train_lm(sentences: Sequence[Sequence[str]], discount: float = 0.75) -> NgramLM:
    if not 0 < discount < 1:
        raise InvalidDiscount(f"discount must lie in (0, 1), got {discount}")
    if not sentences:
        raise EmptyCorpus("cannot train a language model on no sentences")
    unigrams: dict[str, int] = {}
    bigrams: dict[str, dict[str, int]] = {}
    trigrams: dict[tuple, dict[str, int]] = {}
    for sentence in sentences:
        tokens = [str(t) for t in sentence]
        for token in tokens + [END]:
            unigrams[token] = unigrams.get(token, 0) + 1
        seq2 = [START] + tokens + [END]
        for u, w in zip(seq2, seq2[1:]):
            row = bigrams.setdefault(u, {})
            row[w] = row.get(w, 0) + 1
        seq3 = [START, START] + tokens + [END]
        for u, v, w in zip(seq3, seq3[1:], seq3[2:]):
            row = trigrams.setdefault((u, v), {})
            row[w] = row.get(w, 0) + 1
    return NgramLM(unigrams=unigrams, bigrams=bigrams, trigrams=trigrams, discount=discount)


def score_word(
    lm: NgramLM,
    left: Sequence[str],
    word: str,
    right: Sequence[str],
) -> float:
    """Both-sides contextual fit of ``word``.

    Combines P(word | left) with P(next | ..., word) by geometric mean when a
    right neighbor exists; with no context at all this is the unigram
    probability.  Always strictly positive.
    """
    word = str(word)
    left = [str(t) for t in left]
    forward = lm.conditional(word, left)
    if not right:
        return forward
    follow_ctx = ([left[-1]] if left else []) + [word]
    backward = lm.conditional(str(right[0]), follow_ctx)
    return math.sqrt(forward * backward)


# --- serialization --------------------------------------------------------------

MAGIC = b"SWBH1"
FORMAT_VERSION = 1


def _tagger_payload(tagger: NgramTagger) -> dict:
    return {
        str(order): sorted([list(key), value] for key, value in table.items())
        for order, table in tagger.tables.items()
    }


def _lm_payload(lm: NgramLM) -> dict:
    return {
        "discount": lm.discount,
        "unigrams": dict(sorted(lm.unigrams.items())),
        "bigrams": {u: dict(sorted(row.items())) for u, row in sorted(lm.bigrams.items())},
        "trigrams": {
            "\t".join(uv): dict(sorted(row.items()))
            for uv, row in sorted(lm.trigrams.items())
        },
    }


def save_models(path, tagger: NgramTagger, lm: NgramLM) -> None:
    payload = {"tagger": _tagger_payload(tagger), "lm": _lm_payload(lm)}
    blob = json.dumps(payload, ensure_ascii=False, sort_keys=True,
                      separators=(",", ":")).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack(">B", FORMAT_VERSION))
        fh.write(struct.pack(">Q", len(blob)))
        fh.write(blob)


def load_models(path) -> tuple[NgramTagger, NgramLM]:
    with open(path, "rb") as fh:
        magic = fh.read(len(MAGIC))
        if magic != MAGIC:
            raise ModelFormatError(f"{path}: bad magic {magic!r}")
        version = struct.unpack(">B", fh.read(1))[0]
        if version != FORMAT_VERSION:
            raise ModelVersionError(
                f"{path}: format version {version}, expected {FORMAT_VERSION}"
            )
        (length,) = struct.unpack(">Q", fh.read(8))
        blob = fh.read(length)
        if len(blob) != length:
            raise ModelFormatError(f"{path}: truncated payload")
    payload = json.loads(blob.decode("utf-8"))
    tables = {
        int(order): {tuple(key): value for key, value in pairs}
        for order, pairs in payload["tagger"].items()
    }
    lm_data = payload["lm"]
    lm = NgramLM(
        unigrams=lm_data["unigrams"],
        bigrams=lm_data["bigrams"],
        trigrams={tuple(k.split("\t")): row for k, row in lm_data["trigrams"].items()},
        discount=lm_data["discount"],
    )
    return NgramTagger(tables=tables), lm
