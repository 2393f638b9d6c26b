"""Evaluation: word/character error rates, corpus BLEU, slot F1, and the
harness that runs a transliterator over a paired testset.

Error rates aggregate at corpus level (summed edit counts over summed
reference lengths), not per-sentence averages.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import script
from .errors import (
    DuplicateSlot,
    EmptyReference,
    LengthMismatch,
    MalformedTestset,
)
from .reverse import levenshtein

BLEU_EPSILON = 1e-9
BLEU_MAX_ORDER = 4


def wer(reference: Sequence[str], hypothesis: Sequence[str]) -> float:
    """Word-level edit distance over the reference length."""
    if not reference:
        raise EmptyReference("reference token list is empty")
    return levenshtein(list(reference), list(hypothesis)) / len(reference)


def cer(reference: str, hypothesis: str) -> float:
    """Scalar-level edit distance over the reference length; combining
    marks count as scalars of their own."""
    if not reference:
        raise EmptyReference("reference string is empty")
    return levenshtein(reference, hypothesis) / len(reference)


def _ngram_counts(tokens: Sequence[str], order: int) -> dict:
    counts: dict = {}
    for i in range(len(tokens) - order + 1):
        gram = tuple(tokens[i : i + order])
        counts[gram] = counts.get(gram, 0) + 1
    return counts


def bleu(
    references: Sequence[Sequence[str]],
    hypotheses: Sequence[Sequence[str]],
    max_order: int = BLEU_MAX_ORDER,
) -> float:
    """Corpus BLEU: clipped n-gram precision for orders 1..max_order,
    geometric mean, brevity penalty exp(1 - r/h) when the hypothesis side is
    shorter.  Orders with hypothesis n-grams but no matches floor at epsilon
    1e-9; orders with no hypothesis n-grams at all are skipped so identity
    scores exactly 1 regardless of sentence lengths."""
    if len(references) != len(hypotheses):
        raise LengthMismatch(
            f"{len(references)} references vs {len(hypotheses)} hypotheses"
        )
    if not references:
        raise EmptyReference("no sentence pairs")
    matched = [0] * max_order
    total = [0] * max_order
    ref_len = 0
    hyp_len = 0
    for ref, hyp in zip(references, hypotheses):
        ref, hyp = list(ref), list(hyp)
        ref_len += len(ref)
        hyp_len += len(hyp)
        for n in range(1, max_order + 1):
            ref_counts = _ngram_counts(ref, n)
            hyp_counts = _ngram_counts(hyp, n)
            matched[n - 1] += sum(
                min(count, ref_counts.get(gram, 0)) for gram, count in hyp_counts.items()
            )
            total[n - 1] += max(len(hyp) - n + 1, 0)
    if hyp_len == 0:
        return 0.0
    # orders the hypothesis side cannot populate at all carry no signal and
    # drop out of the mean; identity must score exactly 1 at any length
    log_sum = 0.0
    orders = 0
    for n in range(max_order):
        if total[n] == 0:
            continue
        orders += 1
        precision = matched[n] / total[n] if matched[n] > 0 else BLEU_EPSILON
        log_sum += math.log(precision)
    geo_mean = math.exp(log_sum / orders)
    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return brevity * geo_mean


def f1_disambiguation(
    gold: Sequence[tuple], predicted: Sequence[tuple]
) -> float:
    """Slots are (sentence id, token index) pairs; a prediction is correct
    when its slot carries the gold word.  Harmonic mean of precision and
    recall, zero when both are zero."""
    gold_map: dict = {}
    for slot, word in gold:
        if slot in gold_map:
            raise DuplicateSlot(slot)
        gold_map[slot] = str(word)
    pred_map: dict = {}
    for slot, word in predicted:
        if slot in pred_map:
            raise DuplicateSlot(slot)
        pred_map[slot] = str(word)
    correct = sum(1 for slot, word in pred_map.items() if gold_map.get(slot) == word)
    precision = correct / len(pred_map) if pred_map else 0.0
    recall = correct / len(gold_map) if gold_map else 0.0
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


# --- testset harness -----------------------------------------------------------

class EvalMode(Enum):
    GENERAL = "General"
    ADHOC = "Adhoc"
    DISAMBIGUATION = "Disambiguation"


@dataclass(frozen=True)
class TestPair:
    romanized: str
    sinhala: str
    gold_slots: tuple = ()  # ((token index, word), ...)


@dataclass(frozen=True)
class EvalReport:
    wer: float
    cer: float
    bleu: float
    f1: Optional[float]
    sentence_count: int
    token_count: int
    per_sentence: Optional[tuple] = None

    def as_kv(self) -> str:
        rows = [
            ("sentences", self.sentence_count),
            ("tokens", self.token_count),
            ("wer", f"{self.wer:.6f}"),
            ("cer", f"{self.cer:.6f}"),
            ("bleu", f"{self.bleu:.6f}"),
        ]
        if self.f1 is not None:
            rows.append(("f1", f"{self.f1:.6f}"))
        return "\n".join(f"{key}\t{value}" for key, value in rows)

    def as_table(self) -> str:
        head = f"{'metric':<12}{'value':>12}"
        sep = "-" * len(head)
        body = [head, sep]
        for line in self.as_kv().splitlines():
            key, value = line.split("\t")
            body.append(f"{key:<12}{value:>12}")
        return "\n".join(body)


def parse_testset(path) -> list[TestPair]:
    """TSV: ``romanized<TAB>sinhala[<TAB>index:word;index:word]``."""
    path = Path(path)
    pairs: list[TestPair] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) not in (2, 3):
                raise MalformedTestset(
                    str(path), line_no, f"expected 2 or 3 fields, got {len(cols)}"
                )
            if not cols[0].strip() or not cols[1].strip():
                raise MalformedTestset(str(path), line_no, "empty romanized or reference side")
            slots: list[tuple] = []
            if len(cols) == 3 and cols[2].strip():
                for piece in cols[2].split(";"):
                    if ":" not in piece:
                        raise MalformedTestset(
                            str(path), line_no, f"bad slot annotation {piece!r}"
                        )
                    index_text, word = piece.split(":", 1)
                    try:
                        index = int(index_text)
                    except ValueError:
                        raise MalformedTestset(
                            str(path), line_no, f"bad slot index {index_text!r}"
                        ) from None
                    slots.append((index, word))
            pairs.append(TestPair(cols[0], script.normalize(cols[1]), tuple(slots)))
    return pairs


def evaluate(
    system: Callable[[str], str],
    testset,
    mode: EvalMode = EvalMode.GENERAL,
    keep_per_sentence: bool = False,
) -> EvalReport:
    """Run ``system`` over every romanized line and compare against the
    reference side.  Disambiguation mode also collects slot F1 from the
    gold annotations."""
    pairs = testset if isinstance(testset, list) else parse_testset(testset)
    if not pairs:
        raise EmptyReference("testset has no pairs")
    word_edits = word_total = 0
    char_edits = char_total = 0
    refs: list[list[str]] = []
    hyps: list[list[str]] = []
    gold: list[tuple] = []
    predicted: list[tuple] = []
    per_sentence: list[dict] = []
    for sid, pair in enumerate(pairs):
        hypothesis = script.normalize(system(pair.romanized))
        ref_tokens = script.corpus_tokens(pair.sinhala)
        hyp_tokens = script.corpus_tokens(hypothesis)
        word_edits += levenshtein(ref_tokens, hyp_tokens)
        word_total += len(ref_tokens)
        char_edits += levenshtein(pair.sinhala, hypothesis)
        char_total += len(pair.sinhala)
        refs.append(ref_tokens)
        hyps.append(hyp_tokens)
        if mode == EvalMode.DISAMBIGUATION:
            for index, word in pair.gold_slots:
                gold.append(((sid, index), word))
                if index < len(hyp_tokens):
                    predicted.append(((sid, index), hyp_tokens[index]))
        if keep_per_sentence:
            per_sentence.append(
                {
                    "romanized": pair.romanized,
                    "reference": pair.sinhala,
                    "hypothesis": hypothesis,
                }
            )
    if word_total == 0 or char_total == 0:
        raise EmptyReference("testset references are empty")
    f1 = None
    if mode == EvalMode.DISAMBIGUATION:
        f1 = f1_disambiguation(gold, predicted)
    return EvalReport(
        wer=word_edits / word_total,
        cer=char_edits / char_total,
        bleu=bleu(refs, hyps),
        f1=f1,
        sentence_count=len(pairs),
        token_count=word_total,
        per_sentence=tuple(per_sentence) if keep_per_sentence else None,
    )
