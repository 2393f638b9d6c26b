"""Disambiguation benchmark: ambiguous ad-hoc forms in authored contexts.

Each benchmark line names an ambiguous romanized key (one the variant
lexicon maps to two senses), the gold Sinhala word the sentence uses, a kind
tag, and the full Sinhala sentence.  The sentence romanizes through the
forward table and the gold word's token is replaced with the shared key, so
the input genuinely underdetermines the sense and only context can recover
it.  Scoring compares contextual disambiguation against the lexicon
frequency baseline on slot F1.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from . import script
from .config import packaged_data
from .engine import Engine, Mode
from .errors import MalformedTestset
from .metrics import EvalMode, EvalReport, TestPair, evaluate
from .rules import romanize_standard

KINDS = ("single", "dual")


@dataclass(frozen=True)
class BenchmarkCase:
    key: str          # shared ambiguous romanized form
    gold: str         # the sense this sentence uses
    kind: str         # single: dominant-sense context; dual: contrastive pair
    slot: int         # token index of the ambiguous word
    romanized: tuple  # input tokens, key already substituted
    sinhala: tuple    # reference tokens

    def pair(self) -> TestPair:
        return TestPair(
            " ".join(self.romanized), " ".join(self.sinhala), ((self.slot, self.gold),)
        )


def load_cases(path, forward) -> list[BenchmarkCase]:
    """TSV: ``key<TAB>gold<TAB>kind<TAB>sinhala sentence``.

    The gold word must occur exactly once so the slot index is unambiguous.
    """
    path = Path(str(path))
    cases: list[BenchmarkCase] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 4:
                raise MalformedTestset(
                    str(path), line_no, f"expected 4 fields, got {len(cols)}"
                )
            key, gold, kind, sentence = cols
            if kind not in KINDS:
                raise MalformedTestset(str(path), line_no, f"unknown kind {kind!r}")
            tokens = script.normalize(sentence).split()
            slots = [i for i, tok in enumerate(tokens) if tok == gold]
            if len(slots) != 1:
                raise MalformedTestset(
                    str(path), line_no,
                    f"gold word {gold!r} occurs {len(slots)} times, need exactly 1",
                )
            romanized = [romanize_standard(tok, forward) for tok in tokens]
            romanized[slots[0]] = key
            cases.append(BenchmarkCase(
                key, script.normalize(gold), kind, slots[0],
                tuple(romanized), tuple(tokens),
            ))
    if not cases:
        raise MalformedTestset(str(path), 0, "no benchmark sentences")
    return cases


def frequency_baseline(engine: Engine) -> Callable[[str], str]:
    """Context-free system: every token takes its top lexicon candidate,
    falling back to rule transliteration off-lexicon."""

    def system(line: str) -> str:
        tokens = script.tokenize(script.normalize(line).lower())
        out = []
        for token in tokens:
            entry = engine.lexicon.lookup(token.body)
            word = entry.top if entry is not None else engine.rule_word(token.body)
            out.append(token.lead + word + token.trail)
        return " ".join(out)

    return system


@dataclass(frozen=True)
class BenchmarkReport:
    contextual: EvalReport
    baseline: EvalReport
    keys: tuple
    case_count: int

    def margin(self) -> float:
        return (self.contextual.f1 or 0.0) - (self.baseline.f1 or 0.0)

    def as_table(self) -> str:
        rows = [
            f"{'system':<14}{'slot F1':>10}{'WER':>10}",
            "-" * 34,
            f"{'contextual':<14}{self.contextual.f1:>10.4f}{self.contextual.wer:>10.4f}",
            f"{'baseline':<14}{self.baseline.f1:>10.4f}{self.baseline.wer:>10.4f}",
            "",
            f"keys: {', '.join(self.keys)}",
            f"cases: {self.case_count}",
            f"margin: {self.margin():+.4f}",
        ]
        return "\n".join(rows)


def run_benchmark(engine: Engine, path=None) -> BenchmarkReport:
    cases = load_cases(path or packaged_data("td_sentences.tsv"), engine.forward)
    pairs = [case.pair() for case in cases]
    contextual = evaluate(
        lambda line: engine.transliterate_line(line, Mode.CONTEXTUAL),
        pairs, mode=EvalMode.DISAMBIGUATION,
    )
    baseline = evaluate(frequency_baseline(engine), pairs, mode=EvalMode.DISAMBIGUATION)
    keys = tuple(sorted({case.key for case in cases}))
    return BenchmarkReport(contextual, baseline, keys, len(cases))
