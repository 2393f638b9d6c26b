"""High-level pipeline: rules + lexicon + models behind one object.

The engine loads the rule tables, builds (or loads) the variant lexicon,
trains (or loads) the n-gram models, and exposes the three transliteration
modes.  Line output joins tokens with single spaces; punctuation peeled off
a token is reattached around its transliterated body.
"""

from __future__ import annotations

import logging
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

from . import script
from .config import EngineConfig, load_config
from .disambig import (
    CandidateLattice,
    DisambigResult,
    MaskedSlot,
    ResolvedSlot,
    build_lattice,
    disambiguate_chunked,
    disambiguate_exhaustive,
    plan_chunks,
    prune_candidates,
)
from .errors import ModelMissing, UnmappedSequence
from .lexicon import Lexicon
from .ngram import AlignedCorpus, NgramLM, NgramTagger, load_models, tag, train_lm, train_tagger
from .reverse import (
    LetterValueTable,
    check_coverage,
    resolve_shorthand,
    transliterate_rule_based,
)
from .rules import Direction, RuleSet, build_adhoc_lexicon, load_rules
from .script import SinhalaWord

logger = logging.getLogger(__name__)


class Mode(Enum):
    RULE = "rule"
    HYBRID = "hybrid"
    CONTEXTUAL = "contextual"


def _path(target) -> Path:
    return target if isinstance(target, Path) else Path(str(target))


def load_seed_words(path) -> list[SinhalaWord]:
    """One Sinhala word per line; blank lines and # comments skipped."""
    words: list[SinhalaWord] = []
    for raw in _path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words.append(SinhalaWord(script.normalize(line)))
    return words


def corpus_frequencies(corpus: AlignedCorpus) -> dict:
    freqs: dict[str, int] = {}
    for sentence in corpus.sinhala_sentences():
        for token in sentence:
            freqs[token] = freqs.get(token, 0) + 1
    return freqs


def build_lexicon(
    seeds: Sequence[SinhalaWord],
    forward: RuleSet,
    adhoc: RuleSet,
    limit: int,
    corpus: Optional[AlignedCorpus] = None,
) -> Lexicon:
    """Variant lexicon over the seed list; corpus counts weight candidates
    (seed baseline 1 + occurrences), so ranked order reflects usage."""
    frequencies = {str(w): 1 for w in seeds}
    if corpus is not None:
        for word, count in corpus_frequencies(corpus).items():
            if word in frequencies:
                frequencies[word] += count
    return build_adhoc_lexicon(seeds, forward, adhoc, limit=limit, frequencies=frequencies)


class Engine:
    """Everything the CLI and the HTTP service need, built from one config."""

    def __init__(self, config: Optional[EngineConfig] = None):
        cfg = (config or load_config()).validated()
        self.config = cfg
        self.forward = load_rules(_path(cfg.forward_rules))
        self.reverse = load_rules(_path(cfg.reverse_rules))
        self.adhoc = load_rules(_path(cfg.adhoc_rules))
        for rules, want in ((self.forward, Direction.FORWARD),
                            (self.reverse, Direction.REVERSE),
                            (self.adhoc, Direction.ADHOC_GEN)):
            if rules.direction != want:
                raise ValueError(f"{rules.name}: expected {want.value} rules")
        self.letter_values = LetterValueTable.default()

        self.corpus = AlignedCorpus.load_tsv(_path(cfg.corpus)) if cfg.corpus else None
        if cfg.lexicon is not None:
            self.lexicon = Lexicon.load_tsv(_path(cfg.lexicon))
            surfaces = {c[0] for e in self.lexicon.trie.entries() for c in e.candidates}
            check_coverage(self.reverse, sorted(surfaces))
        else:
            seeds = load_seed_words(cfg.seed_words)
            check_coverage(self.reverse, seeds)
            self.lexicon = build_lexicon(
                seeds, self.forward, self.adhoc, cfg.variant_limit, self.corpus
            )

        self.tagger: Optional[NgramTagger] = None
        self.lm: Optional[NgramLM] = None
        if cfg.models is not None:
            self.tagger, self.lm = load_models(_path(cfg.models))
        elif self.corpus is not None and self.corpus.pairs:
            self.tagger = train_tagger(self.corpus)
            self.lm = train_lm(self.corpus.sinhala_sentences())

    # --- single-word paths -------------------------------------------------

    def rule_word(self, body: str) -> str:
        """Rule transliteration with verbatim passthrough on failure."""
        if not body:
            return body
        try:
            return str(transliterate_rule_based(body, self.reverse))
        except UnmappedSequence as exc:
            logger.warning("no rule coverage for %r at position %d", body, exc.position)
            return body

    def resolve(self, word: str) -> list[tuple[str, str, float, int]]:
        """Shorthand resolution of one word against the lexicon.

        Returns (sinhala surface, matched key, similarity, frequency) ranked
        as the resolver ranked the keys; empty when nothing matches.
        """
        hits = resolve_shorthand(
            word,
            self.lexicon,
            table=self.letter_values,
            min_similarity=self.config.min_similarity,
            k=self.config.suggest_k,
        )
        out = []
        for key, sim in hits:
            entry = self.lexicon.lookup(key)
            if entry is not None:
                out.append((entry.top, key, sim, entry.frequency))
        return out

    def suggest(self, prefix: str, k: Optional[int] = None) -> list[tuple[str, str, int]]:
        return self.lexicon.suggest(prefix, k or self.config.suggest_k)

    # --- sentence paths ----------------------------------------------------

    def _require_models(self, mode: Mode) -> None:
        if mode is Mode.HYBRID and self.tagger is None:
            raise ModelMissing("hybrid mode needs a trained tagger")
        if mode is Mode.CONTEXTUAL and self.lm is None:
            raise ModelMissing("contextual mode needs a trained language model")

    def _contextual_result(
        self, bodies: Sequence[str], context: Sequence[str]
    ) -> tuple[DisambigResult, CandidateLattice]:
        """Lattice, prune, plan, solve; committed context enters as resolved
        slots on the left and is stripped back off the sentence."""
        lattice = build_lattice(bodies, self.lexicon.trie, self.reverse)
        lattice = prune_candidates(lattice, self.lm, self.config.max_per_mask)
        if context:
            committed = tuple(
                ResolvedSlot(script.normalize(w)) for w in context if w
            )
            lattice = CandidateLattice(committed + lattice.slots)
        if lattice.mask_indices():
            plan = plan_chunks(
                lattice, self.config.max_masks_per_chunk, self.config.context_overlap
            )
            result = disambiguate_chunked(lattice, self.lm, plan)
        else:
            result = disambiguate_exhaustive(lattice, self.lm)
        if context:
            skip = len([w for w in context if w])
            result = DisambigResult(
                result.sentence[skip:], result.score, result.scorer_calls
            )
        return result, lattice

    def transliterate_tokens(
        self, bodies: Sequence[str], mode: Mode = Mode.CONTEXTUAL,
        context: Sequence[str] = (),
    ) -> list[str]:
        self._require_models(mode)
        if mode is Mode.RULE:
            return [self.rule_word(b) for b in bodies]
        if mode is Mode.HYBRID:
            tags = tag(self.tagger, bodies)
            return [str(t) if t is not None else self.rule_word(b)
                    for t, b in zip(tags, bodies)]
        result, _ = self._contextual_result(bodies, context)
        return [str(w) for w in result.sentence]

    def transliterate_line(
        self, line: str, mode: Mode = Mode.CONTEXTUAL, context: Sequence[str] = ()
    ) -> str:
        tokens = script.tokenize(script.normalize(line).lower())
        bodies = [t.body for t in tokens]
        words = self.transliterate_tokens(bodies, mode, context)
        return " ".join(
            t.lead + w + t.trail for t, w in zip(tokens, words)
        )

    def transliterate(
        self, text: str, mode: Mode = Mode.CONTEXTUAL, context: Sequence[str] = ()
    ) -> str:
        return "\n".join(
            self.transliterate_line(line, mode, context) if line.strip() else line
            for line in text.splitlines()
        )

    def disambiguate_detail(self, line: str, context: Sequence[str] = ()) -> dict:
        """Full lattice view for one line: winner, per-slot candidates, score.

        Slot candidate scores are the winning assignment's single-slot scores
        with every other position held fixed, so a client can show why the
        winner won and offer the alternatives.
        """
        self._require_models(Mode.CONTEXTUAL)
        tokens = script.tokenize(script.normalize(line).lower())
        bodies = [t.body for t in tokens]
        result, lattice = self._contextual_result(bodies, context)
        offset = len(lattice.slots) - len(bodies)  # committed-context slots
        filled = [str(getattr(s, "word", "")) for s in lattice.slots]
        for i, word in enumerate(result.sentence):
            filled[offset + i] = str(word)
        slots = []
        for i, (token, body) in enumerate(zip(tokens, bodies)):
            slot = lattice.slots[offset + i]
            winner = str(result.sentence[i])
            info = {
                "token": body,
                "lead": token.lead,
                "trail": token.trail,
                "winner": winner,
                "provenance": slot.provenance.value,
                "masked": isinstance(slot, MaskedSlot),
            }
            if isinstance(slot, MaskedSlot):
                li = offset + i
                candidates = []
                for surface, frequency in slot.candidates:
                    candidates.append({
                        "word": surface,
                        "frequency": frequency,
                        "score": self.lm.score_word(
                            filled[:li], surface, filled[li + 1 : li + 2]
                        ),
                    })
                info["candidates"] = candidates
            slots.append(info)
        sentence = " ".join(
            t.lead + str(w) + t.trail for t, w in zip(tokens, result.sentence)
        )
        return {
            "sinhala": sentence,
            "score": result.score,
            "scorer_calls": result.scorer_calls,
            "slots": slots,
        }
